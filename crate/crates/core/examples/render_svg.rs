//! SVG frames of the loop; writes into the directory given as argument
//! (default: the system temp directory).
use std::path::PathBuf;

use trifold::render::render_layout;
use trifold::{build_counterexample, FoldLengths};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(std::env::temp_dir);
    let layout = build_counterexample(2, FoldLengths::default())?;
    for (i, t) in [0.0, 0.125, 0.25, 0.5, 0.75].into_iter().enumerate() {
        let path = dir.join(format!("trifold_frame_{i}.svg"));
        std::fs::write(&path, render_layout(&layout, &[t, 0.5 - t])?)?;
        println!("{}", path.display());
    }
    Ok(())
}
