//! Numerical certificates: windings of the angle map along loops, the
//! degree matrix of the torus map, embeddedness tallies, and evidence that a
//! singular configuration is a limit of embedded ones.

use std::f64::consts::{PI, TAU};

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::foldgen::CounterexampleLayout;
use crate::geometry::{classify, Classification, DEFAULT_EPS};
use crate::linkage::{
    alpha_map, config_distance, max_relative_residual, Configuration, Linkage, TorusPoint, ABS_TOL,
    LENGTH_TOL,
};
use crate::point::Point;

/// Largest admissible jump between consecutive loop samples.
pub const MAX_STEP: f64 = PI - 0.1;
/// Largest admissible distance of a winding from an integer.
pub const MAX_RESIDUE: f64 = 0.01;
/// Loop coordinate at which the other gadgets are parked for degree loops.
pub const PARKED_PARAM: f64 = 0.25;

/// Representative of `x` mod 2pi in `[-pi, pi]`.
fn principal(x: f64) -> f64 {
    x - TAU * (x / TAU).round()
}

/// Continuous lift of a sampled angle sequence.
pub fn unwrap_angles(seq: &[f64]) -> Result<Vec<f64>> {
    let mut lift = Vec::with_capacity(seq.len());
    let Some(&first) = seq.first() else {
        return Ok(lift);
    };
    lift.push(first);
    for (index, w) in seq.windows(2).enumerate() {
        let step = principal(w[1] - w[0]);
        if step.abs() >= MAX_STEP {
            return Err(Error::UndersampledLoop { index, jump: step });
        }
        lift.push(lift[index] + step);
    }
    Ok(lift)
}

/// Winding of a closed sampled loop of angles, together with the distance
/// of the raw turn count from the returned integer.
pub fn winding_with_residue(seq: &[f64]) -> Result<(i64, f64)> {
    let lift = unwrap_angles(seq)?;
    let (Some(&start), Some(&end)) = (lift.first(), lift.last()) else {
        return Ok((0, 0.0));
    };
    let closing = principal(seq[0] - seq[seq.len() - 1]);
    if closing.abs() >= MAX_STEP {
        return Err(Error::UndersampledLoop {
            index: seq.len() - 1,
            jump: closing,
        });
    }
    let turns = (end + closing - start) / TAU;
    let rounded = turns.round();
    let residue = (turns - rounded).abs();
    if residue >= MAX_RESIDUE {
        return Err(Error::NonIntegralWinding { residue });
    }
    Ok((rounded as i64, residue))
}

pub fn winding_number(seq: &[f64]) -> Result<i64> {
    winding_with_residue(seq).map(|(w, _)| w)
}

/// Entry `(i, j)`: winding of angle `i` along the loop in torus coordinate `j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DegreeMatrix {
    pub entries: Vec<Vec<i64>>,
}

impl DegreeMatrix {
    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    /// Diagonal with every diagonal entry `±1`.
    pub fn is_signed_identity(&self) -> bool {
        self.entries.iter().enumerate().all(|(i, row)| {
            row.len() == self.dim()
                && row
                    .iter()
                    .enumerate()
                    .all(|(j, &e)| if i == j { e.abs() == 1 } else { e == 0 })
        })
    }
}

/// Windings of the angle map along each coordinate loop of the torus map,
/// the other coordinates parked at [`PARKED_PARAM`].
pub fn degree_matrix(layout: &CounterexampleLayout, samples: usize) -> Result<DegreeMatrix> {
    if samples < 256 {
        return Err(Error::InvalidArgument(format!(
            "degree loops need at least 256 samples, got {samples}"
        )));
    }
    let m = layout.m();
    let parked = TorusPoint::from_params(&vec![PARKED_PARAM; m]);
    let mut entries = vec![vec![0i64; m]; m];
    for j in 0..m {
        let loop_samples = layout.sample_loop(j, samples, &parked)?;
        let angles = loop_samples
            .iter()
            .map(|(_, c)| alpha_map(c, layout.angle_triples()))
            .collect::<Result<Vec<_>>>()?;
        for (i, row) in entries.iter_mut().enumerate() {
            let series: Vec<f64> = angles.iter().map(|a| a.angles[i]).collect();
            row[j] = winding_number(&series)?;
        }
    }
    Ok(DegreeMatrix { entries })
}

/// Verdict counts over a sample set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmbeddednessProfile<P> {
    pub embedded: usize,
    pub self_touching: usize,
    pub crossing: usize,
    /// Parameters of every sample that is not embedded, in sample order.
    #[serde(skip)]
    pub non_embedded: Vec<(P, Classification)>,
}

impl<P> EmbeddednessProfile<P> {
    pub fn total(&self) -> usize {
        self.embedded + self.self_touching + self.crossing
    }
}

pub fn embeddedness_profile<P: Clone + Sync>(
    samples: &[(P, Configuration)],
    eps: f64,
) -> EmbeddednessProfile<P> {
    let verdicts: Vec<Classification> = samples.par_iter().map(|(_, c)| classify(c, eps)).collect();
    let mut profile = EmbeddednessProfile {
        embedded: 0,
        self_touching: 0,
        crossing: 0,
        non_embedded: Vec::new(),
    };
    for ((p, _), v) in samples.iter().zip(verdicts) {
        match v {
            Classification::Embedded => profile.embedded += 1,
            Classification::SelfTouching => profile.self_touching += 1,
            Classification::Crossing => profile.crossing += 1,
        }
        if v != Classification::Embedded {
            profile.non_embedded.push((p.clone(), v));
        }
    }
    profile
}

/// Result of [`project_to_lengths`].
#[derive(Debug, Clone, PartialEq)]
pub struct Projection {
    pub config: Configuration,
    pub iterations: usize,
}

/// Pulls `points` onto the length constraints of `linkage` by Gauss–Newton
/// with minimum-norm steps, until the largest relative residual is at most
/// `tol` (which may not exceed [`LENGTH_TOL`]).
pub fn project_to_lengths(
    points: &[Point],
    linkage: &Linkage,
    tol: f64,
    max_iter: usize,
) -> Result<Projection> {
    let n = linkage.n();
    if points.len() != n {
        return Err(Error::VertexCount {
            expected: n,
            got: points.len(),
        });
    }
    if !(tol > 0.0 && tol <= LENGTH_TOL) {
        return Err(Error::InvalidArgument(format!(
            "projection tolerance must lie in (0, {LENGTH_TOL}], got {tol}"
        )));
    }
    let initial = max_relative_residual(linkage, points);
    if !(initial < 0.2) {
        return Err(Error::PreconditionViolation(format!(
            "initial relative residual {initial} is not below 0.2"
        )));
    }

    let mut x: Vec<Point> = points.to_vec();
    let mut residual = initial;
    let mut iterations = 0;
    while residual > tol {
        if iterations == max_iter {
            return Err(Error::NoConvergence {
                iterations,
                residual,
            });
        }
        x = gauss_newton_step(&x, linkage)?;
        residual = max_relative_residual(linkage, &x);
        iterations += 1;
    }
    Ok(Projection {
        config: Configuration::new(linkage.clone(), x)?,
        iterations,
    })
}

fn residuals(x: &[Point], linkage: &Linkage) -> DVector<f64> {
    let n = x.len();
    DVector::from_iterator(
        n,
        (0..n).map(|i| x[i].dist(x[(i + 1) % n]) - linkage.length(i)),
    )
}

fn gauss_newton_step(x: &[Point], linkage: &Linkage) -> Result<Vec<Point>> {
    let n = x.len();
    let mut units = Vec::with_capacity(n);
    for i in 0..n {
        let e = x[(i + 1) % n] - x[i];
        let len = e.norm();
        if len < ABS_TOL {
            return Err(Error::SingularGeometry);
        }
        units.push(e * (1.0 / len));
    }
    // J is n x 2n; row i has -e_i at vertex i and +e_i at vertex i+1
    let mut jac = DMatrix::<f64>::zeros(n, 2 * n);
    for (i, e) in units.iter().enumerate() {
        let j = (i + 1) % n;
        jac[(i, 2 * i)] -= e.x;
        jac[(i, 2 * i + 1)] -= e.y;
        jac[(i, 2 * j)] += e.x;
        jac[(i, 2 * j + 1)] += e.y;
    }
    let r = residuals(x, linkage);
    let norm0 = r.norm();
    let gram = &jac * jac.transpose();
    let scale = gram.trace() / n as f64;

    let apply = |y: DVector<f64>| -> Vec<Point> {
        let dx = jac.transpose() * y;
        x.iter()
            .enumerate()
            .map(|(v, &p)| p - Point::new(dx[2 * v], dx[2 * v + 1]))
            .collect()
    };

    if let Some(chol) = gram.clone().cholesky() {
        let candidate = apply(chol.solve(&r));
        if residuals(&candidate, linkage).norm() < norm0 {
            return Ok(candidate);
        }
    }
    let mut fallback = None;
    for damping in [1e-10, 1e-6, 1e-3, 1e-1, 1.0] {
        let mut g = gram.clone();
        for i in 0..n {
            g[(i, i)] += damping * scale;
        }
        let Some(chol) = g.cholesky() else { continue };
        let candidate = apply(chol.solve(&r));
        if residuals(&candidate, linkage).norm() < norm0 {
            return Ok(candidate);
        }
        fallback.get_or_insert(candidate);
    }
    fallback.ok_or(Error::SingularGeometry)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClosureVerdict {
    #[serde(rename = "found")]
    FoundWitness,
    #[serde(rename = "none")]
    NoWitness,
}

/// Outcome of the randomized search for a nearby embedded configuration.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClosureEvidence {
    pub verdict: ClosureVerdict,
    #[serde(skip)]
    pub witness: Option<Configuration>,
    pub distance: Option<f64>,
    #[serde(rename = "trials")]
    pub trials_used: usize,
    pub seed: u64,
}

/// Projection tolerance and iteration cap used for closure trials.
const TRIAL_TOL: f64 = 1e-12;
const TRIAL_MAX_ITER: usize = 50;

/// Searches for an embedded configuration within `3 * delta` of `config`.
///
/// Trial `k` perturbs every coordinate by independent uniform noise in
/// `[-delta, delta]` drawn from stream `k` of a ChaCha generator seeded with
/// `seed`, then projects back onto the length constraints. The first
/// successful trial by index is returned, whatever the thread schedule.
/// A witness proves membership in the closure at scale `delta`; its absence
/// proves nothing.
pub fn closure_evidence(
    config: &Configuration,
    trials: usize,
    delta: f64,
    seed: u64,
) -> ClosureEvidence {
    if classify(config, DEFAULT_EPS) == Classification::Embedded {
        return ClosureEvidence {
            verdict: ClosureVerdict::FoundWitness,
            witness: Some(config.clone()),
            distance: Some(0.0),
            trials_used: 0,
            seed,
        };
    }
    let radius = 3.0 * delta;
    let hit = (0..trials).into_par_iter().find_map_first(|k| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(k as u64);
        let noisy: Vec<Point> = config
            .vertices()
            .iter()
            .map(|p| {
                *p + Point::new(
                    rng.random_range(-delta..=delta),
                    rng.random_range(-delta..=delta),
                )
            })
            .collect();
        let projected =
            project_to_lengths(&noisy, config.linkage(), TRIAL_TOL, TRIAL_MAX_ITER).ok()?;
        if classify(&projected.config, DEFAULT_EPS) != Classification::Embedded {
            return None;
        }
        let distance = config_distance(config, &projected.config).ok()?;
        (distance <= radius).then_some((k, projected.config, distance))
    });
    match hit {
        Some((k, witness, distance)) => ClosureEvidence {
            verdict: ClosureVerdict::FoundWitness,
            witness: Some(witness),
            distance: Some(distance),
            trials_used: k + 1,
            seed,
        },
        None => ClosureEvidence {
            verdict: ClosureVerdict::NoWitness,
            witness: None,
            distance: None,
            trials_used: trials,
            seed,
        },
    }
}
