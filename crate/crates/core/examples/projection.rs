//! Pulling perturbed joints back onto the bar-length constraints.
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use trifold::witness::project_to_lengths;
use trifold::{build_counterexample, FoldLengths, Point};

fn main() -> trifold::Result<()> {
    let layout = build_counterexample(2, FoldLengths::default())?;
    let config = layout.gamma_at(&[0.3, 0.7])?;
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for trial in 0..5 {
        let noisy: Vec<Point> = config
            .vertices()
            .iter()
            .map(|p| *p + Point::new(rng.random_range(-0.01..0.01), rng.random_range(-0.01..0.01)))
            .collect();
        let before = trifold::linkage::max_relative_residual(config.linkage(), &noisy);
        let p = project_to_lengths(&noisy, config.linkage(), 1e-12, 20)?;
        println!(
            "trial {trial}: residual {before:.2e} -> {:.2e} in {} iterations",
            p.config.max_relative_residual(),
            p.iterations
        );
    }
    Ok(())
}
