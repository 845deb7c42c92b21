//! Triple-fold linkages whose closure of embedded configurations carries
//! non-trivial homology, with the numerical certificates for it.
//!
//! * [`linkage`]: bar lengths, configurations, canonical forms, the angle map.
//! * [`geometry`]: segment predicates, circle intersection, and the
//!   embedded / self-touching / crossing verdict.
//! * [`foldgen`]: the counterexample layouts and the loop and torus maps.
//! * [`witness`]: winding numbers, degree matrices, embeddedness profiles,
//!   projection onto the length constraints and closure evidence.
//! * [`homology`]: Vietoris–Rips persistence over Z/2.
//! * [`render`]: SVG frames.
//! * [`cli`]: the commands behind the `trifold` binary.
//!
//! Runnable walkthroughs of each capability live in `examples/`.

// `!(x < tol)` is used on purpose so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod foldgen;
pub mod geometry;
pub mod homology;
pub mod linkage;
pub mod point;
pub mod render;
pub mod witness;

pub use error::{Error, Result};
pub use foldgen::{build_counterexample, CounterexampleLayout, FoldLengths, GadgetSpec, Side};
pub use geometry::{classify, Classification};
pub use linkage::{alpha_map, config_distance, Configuration, Linkage, TorusPoint};
pub use point::Point;
