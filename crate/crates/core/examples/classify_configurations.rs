//! Embedded, self-touching and crossing polygons.
use trifold::geometry::{segment_relation, Segment, DEFAULT_EPS};
use trifold::{classify, Configuration, Linkage, Point};

fn polygon(points: &[(f64, f64)]) -> trifold::Result<Configuration> {
    let pts: Vec<Point> = points.iter().map(|&(x, y)| Point::new(x, y)).collect();
    let lengths = (0..pts.len())
        .map(|i| pts[i].dist(pts[(i + 1) % pts.len()]))
        .collect::<Vec<_>>();
    Configuration::new(Linkage::new(lengths)?, pts)
}

fn main() -> trifold::Result<()> {
    let cases = [
        (
            "square",
            polygon(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)])?,
        ),
        (
            "bowtie",
            polygon(&[(0.0, 0.0), (1.0, 1.0), (1.0, 0.0), (0.0, 1.0)])?,
        ),
        (
            "flat triple fold",
            polygon(&[(0.0, 0.0), (2.0, 0.0), (1.0, 0.0), (3.0, 0.0), (1.5, 2.0)])?,
        ),
    ];
    for (name, c) in &cases {
        println!("{name:>16}: {}", classify(c, DEFAULT_EPS).as_str());
    }
    let s = Segment::new(Point::new(0.0, 0.0), Point::new(2.0, 0.0));
    let t = Segment::new(Point::new(1.0, 0.0), Point::new(3.0, 0.0));
    println!(
        "collinear overlap: {:?}",
        segment_relation(&s, &t, DEFAULT_EPS)
    );
    Ok(())
}
