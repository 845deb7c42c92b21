//! Betti numbers of sampled loops by Vietoris–Rips persistence.
//! Pass `torus` to also run the 16x16 torus of two gadgets (slow).
use std::f64::consts::TAU;

use trifold::homology::{
    betti_in_window, persistent_homology, significance, vr_filtration, DistanceMatrix,
    DEFAULT_BUDGET,
};
use trifold::{build_counterexample, Configuration, FoldLengths, TorusPoint};

fn report(name: &str, dist: &DistanceMatrix) -> trifold::Result<()> {
    let end = dist.enclosing_radius();
    let f = vr_filtration(dist, end, 2, DEFAULT_BUDGET)?;
    let dg = persistent_homology(&f).truncated(1);
    let sig = significance(&dg, 1, end);
    let betti = sig.mid_scale().map(|r| betti_in_window(&dg, r));
    println!(
        "{name}: {} points, {} simplices, H1 claims {} class(es) at ratio {:.2}, betti {betti:?}",
        dist.len(),
        f.len(),
        sig.claimed,
        sig.ratio
    );
    Ok(())
}

fn main() -> trifold::Result<()> {
    let circle: Vec<Vec<f64>> = (0..60)
        .map(|i| {
            let a = TAU * i as f64 / 60.0;
            vec![a.cos(), a.sin()]
        })
        .collect();
    report("circle", &DistanceMatrix::from_vectors(&circle))?;

    let l1 = build_counterexample(1, FoldLengths::default())?;
    let loop_configs: Vec<Configuration> = l1
        .sample_loop(0, 120, &TorusPoint::from_params(&[0.25]))?
        .into_iter()
        .map(|(_, c)| c)
        .collect();
    report(
        "triple-fold loop",
        &DistanceMatrix::from_configurations(&loop_configs)?,
    )?;

    if std::env::args().any(|a| a == "torus") {
        let l2 = build_counterexample(2, FoldLengths::default())?;
        let torus: Vec<Configuration> = l2
            .sample_torus(&[16, 16])?
            .into_iter()
            .map(|(_, c)| c)
            .collect();
        report(
            "two-gadget torus",
            &DistanceMatrix::from_configurations(&torus)?,
        )?;
    }
    Ok(())
}
