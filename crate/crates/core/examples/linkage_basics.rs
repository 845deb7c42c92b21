//! Linkages, configurations, the canonical frame and the angle map.
use trifold::linkage::oriented_angle_at;
use trifold::{alpha_map, config_distance, Configuration, Linkage, Point};

fn main() -> trifold::Result<()> {
    let fold = Linkage::new(vec![2.0, 1.0, 2.0, 1.6, 1.6])?;
    println!(
        "lengths {:?}, realizable: {}",
        fold.lengths(),
        fold.is_realizable()
    );
    for start in 0..fold.n() {
        println!(
            "  triple fold starting at bar {}: {}",
            start + 1,
            fold.triple_fold_admissible(start)
        );
    }
    println!(
        "(10,1,1,1) realizable: {}",
        Linkage::new(vec![10.0, 1.0, 1.0, 1.0])?.is_realizable()
    );

    let square = Configuration::new(
        Linkage::new(vec![1.0; 4])?,
        vec![
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(1.0, 1.0),
            Point::new(0.0, 1.0),
        ],
    )?;
    let moved = square.transformed(37f64.to_radians(), Point::new(4.0, -2.0));
    println!(
        "distance to a rotated, shifted copy: {:.1e}",
        config_distance(&square, &moved)?
    );
    let canon: Vec<String> = moved
        .canonicalize()?
        .vertices()
        .iter()
        .map(|p| format!("({:.3}, {:.3})", p.x, p.y))
        .collect();
    println!("canonical form: {}", canon.join(" "));

    let a = oriented_angle_at(
        Point::new(0.0, 0.0),
        Point::new(1.0, 0.0),
        Point::new(1.0, 1.0),
    )
    .unwrap();
    println!("angle at (1,0) between (0,0) and (1,1): {a:.6}");
    println!(
        "alpha of the square at vertices 1,2,3: {:?}",
        alpha_map(&square, &[[0, 1, 2]])?.angles
    );
    Ok(())
}
