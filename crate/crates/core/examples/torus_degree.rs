//! m gadgets give an m-torus; its angle map has a diagonal degree matrix.
use trifold::geometry::DEFAULT_EPS;
use trifold::witness::{degree_matrix, embeddedness_profile};
use trifold::{build_counterexample, FoldLengths};

fn main() -> trifold::Result<()> {
    for m in 1..=3 {
        let layout = build_counterexample(m, FoldLengths::default())?;
        let margins = layout.margins();
        let degree = degree_matrix(&layout, 720)?;
        println!(
            "m = {m}: n = {}, radius {:.3}, region gap {:.3}, degree {:?}",
            layout.linkage().n(),
            margins.radius,
            margins.region_gap,
            degree.entries
        );
    }
    let layout = build_counterexample(2, FoldLengths::default())?;
    let grid = layout.sample_torus(&[16, 16])?;
    let p = embeddedness_profile(&grid, DEFAULT_EPS);
    println!(
        "16x16 grid: {} embedded, {} self-touching, {} crossing",
        p.embedded, p.self_touching, p.crossing
    );
    Ok(())
}
