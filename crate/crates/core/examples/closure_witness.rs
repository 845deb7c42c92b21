//! The flat fold is a limit of embedded configurations; a crossing is not.
use trifold::geometry::DEFAULT_EPS;
use trifold::witness::closure_evidence;
use trifold::{build_counterexample, classify, Configuration, FoldLengths, Linkage, Point};

fn main() -> trifold::Result<()> {
    let layout = build_counterexample(1, FoldLengths::default())?;
    let aligned = layout.aligned_configuration()?;
    let found = closure_evidence(&aligned, 1000, 1e-3, 7);
    println!(
        "aligned fold: {:?} after {} trials at distance {:?}, witness is {}",
        found.verdict,
        found.trials_used,
        found.distance,
        found
            .witness
            .as_ref()
            .map_or("-", |w| classify(w, DEFAULT_EPS).as_str())
    );

    let r2 = 2f64.sqrt();
    let bowtie = Configuration::new(
        Linkage::new(vec![r2, 1.0, r2, 1.0])?,
        vec![
            Point::new(0.0, 0.0),
            Point::new(1.0, 1.0),
            Point::new(1.0, 0.0),
            Point::new(0.0, 1.0),
        ],
    )?;
    let none = closure_evidence(&bowtie, 1000, 1e-3, 7);
    println!(
        "bowtie: {:?} after {} trials",
        none.verdict, none.trials_used
    );
    Ok(())
}
