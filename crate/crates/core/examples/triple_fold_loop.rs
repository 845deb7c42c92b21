//! The loop of one triple fold: embedded everywhere except at the flat fold,
//! and the angle at the first joint winds once around the circle.
use trifold::geometry::DEFAULT_EPS;
use trifold::witness::{embeddedness_profile, winding_with_residue};
use trifold::{alpha_map, build_counterexample, FoldLengths, TorusPoint};

fn main() -> trifold::Result<()> {
    let layout = build_counterexample(1, FoldLengths::default())?;
    let gadget = &layout.gadgets()[0];
    println!(
        "n = {}, branch interval phi_max = {:.6}",
        layout.linkage().n(),
        gadget.fold_branch_interval()
    );
    for t in [0.0, 0.25, 0.5, 0.75] {
        let (a2, a3) = gadget.fold_chain_at(t);
        println!(
            "  t = {t:<4} joints ({:.4}, {:.4}) ({:.4}, {:.4})",
            a2.x, a2.y, a3.x, a3.y
        );
    }

    let samples = layout.sample_loop(0, 720, &TorusPoint::from_params(&[0.0]))?;
    let profile = embeddedness_profile(&samples, DEFAULT_EPS);
    println!(
        "720 samples: {} embedded, {} self-touching at t = {:?}, {} crossing",
        profile.embedded,
        profile.self_touching,
        profile
            .non_embedded
            .iter()
            .map(|(t, _)| *t)
            .collect::<Vec<_>>(),
        profile.crossing
    );
    let angles = samples
        .iter()
        .map(|(_, c)| alpha_map(c, layout.angle_triples()).map(|a| a.angles[0]))
        .collect::<trifold::Result<Vec<_>>>()?;
    let (w, residue) = winding_with_residue(&angles)?;
    println!("winding of the joint angle: {w} (residue {residue:.1e})");
    Ok(())
}
