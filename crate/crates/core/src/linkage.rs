//! Linkages, their planar configurations, and the oriented-angle map.
//!
//! Indices are 0-based throughout the library. The JSON formats and the
//! command line use 1-based indices, converted at the boundary.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::point::Point;

/// Relative tolerance on bar-length residuals.
pub const LENGTH_TOL: f64 = 1e-9;
/// Absolute tolerance for coincidence and degeneracy tests.
pub const ABS_TOL: f64 = 1e-12;

/// A closed chain of `n >= 3` rigid bars with strictly positive lengths.
///
/// Bar `i` joins vertex `i` to vertex `i + 1 (mod n)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "LinkageDoc", into = "LinkageDoc")]
pub struct Linkage {
    lengths: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct LinkageDoc {
    lengths: Vec<f64>,
}

impl TryFrom<LinkageDoc> for Linkage {
    type Error = Error;
    fn try_from(doc: LinkageDoc) -> Result<Self> {
        Linkage::new(doc.lengths)
    }
}

impl From<Linkage> for LinkageDoc {
    fn from(l: Linkage) -> Self {
        LinkageDoc { lengths: l.lengths }
    }
}

impl Linkage {
    pub fn new(lengths: impl Into<Vec<f64>>) -> Result<Self> {
        let lengths = lengths.into();
        if let Some((index, &length)) = lengths
            .iter()
            .enumerate()
            .find(|(_, l)| !(**l > 0.0) || !l.is_finite())
        {
            return Err(Error::NonPositiveLength { index, length });
        }
        if lengths.len() < 3 {
            return Err(Error::TooFewBars(lengths.len()));
        }
        Ok(Linkage { lengths })
    }

    pub fn n(&self) -> usize {
        self.lengths.len()
    }

    pub fn lengths(&self) -> &[f64] {
        &self.lengths
    }

    pub fn length(&self, bar: usize) -> f64 {
        self.lengths[bar % self.n()]
    }

    /// Whether the linkage closes up in the plane at all: no bar is longer
    /// than the sum of the others.
    pub fn is_realizable(&self) -> bool {
        let total: f64 = self.lengths.iter().sum();
        self.lengths.iter().all(|&l| l <= total - l)
    }

    /// Admissibility of the triple of consecutive bars starting at `start`
    /// (cyclic) for a triple fold: `l_a > l_b < l_c` and
    /// `l_a - l_b + l_c` strictly below the total length of the other bars.
    pub fn triple_fold_admissible(&self, start: usize) -> bool {
        let n = self.n();
        let idx = [start % n, (start + 1) % n, (start + 2) % n];
        let [a, b, c] = idx.map(|i| self.lengths[i]);
        let rest: f64 = (0..n)
            .filter(|i| !idx.contains(i))
            .map(|i| self.lengths[i])
            .sum();
        a > b && b < c && a - b + c < rest
    }

    /// Same linkage relabeled so that bar `shift` becomes bar 0.
    pub fn rotated(&self, shift: usize) -> Linkage {
        let mut lengths = self.lengths.clone();
        lengths.rotate_left(shift % self.n());
        Linkage { lengths }
    }
}

/// Largest relative bar-length residual of `vertices` against `linkage`.
pub fn max_relative_residual(linkage: &Linkage, vertices: &[Point]) -> f64 {
    let n = vertices.len();
    (0..n)
        .map(|i| {
            let l = linkage.length(i);
            (vertices[i].dist(vertices[(i + 1) % n]) - l).abs() / l
        })
        .fold(0.0, f64::max)
}

/// Vertex positions realizing a [`Linkage`] up to [`LENGTH_TOL`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ConfigurationDoc", into = "ConfigurationDoc")]
pub struct Configuration {
    linkage: Linkage,
    vertices: Vec<Point>,
}

#[derive(Serialize, Deserialize)]
struct ConfigurationDoc {
    lengths: Vec<f64>,
    vertices: Vec<Point>,
}

impl TryFrom<ConfigurationDoc> for Configuration {
    type Error = Error;
    fn try_from(doc: ConfigurationDoc) -> Result<Self> {
        Configuration::new(Linkage::new(doc.lengths)?, doc.vertices)
    }
}

impl From<Configuration> for ConfigurationDoc {
    fn from(c: Configuration) -> Self {
        ConfigurationDoc {
            lengths: c.linkage.lengths,
            vertices: c.vertices,
        }
    }
}

impl Configuration {
    pub fn new(linkage: Linkage, vertices: Vec<Point>) -> Result<Self> {
        if vertices.len() != linkage.n() {
            return Err(Error::VertexCount {
                expected: linkage.n(),
                got: vertices.len(),
            });
        }
        let n = vertices.len();
        for i in 0..n {
            let expected = linkage.length(i);
            let actual = vertices[i].dist(vertices[(i + 1) % n]);
            if !((actual - expected).abs() <= LENGTH_TOL * expected) {
                return Err(Error::LengthMismatch {
                    index: i,
                    expected,
                    actual,
                });
            }
        }
        Ok(Configuration { linkage, vertices })
    }

    pub fn linkage(&self) -> &Linkage {
        &self.linkage
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> Point {
        self.vertices[i]
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    /// Endpoints of bar `i`.
    pub fn edge(&self, i: usize) -> (Point, Point) {
        (self.vertices[i], self.vertices[(i + 1) % self.n()])
    }

    pub fn max_relative_residual(&self) -> f64 {
        max_relative_residual(&self.linkage, &self.vertices)
    }

    /// Applies an orientation-preserving rigid motion `p -> R(angle) p + shift`.
    pub fn transformed(&self, angle: f64, shift: Point) -> Configuration {
        Configuration {
            linkage: self.linkage.clone(),
            vertices: self
                .vertices
                .iter()
                .map(|&p| p.rotate(angle) + shift)
                .collect(),
        }
    }

    /// Representative modulo translations and rotations: vertex 0 at the
    /// origin, vertex 1 on the positive x-axis.
    pub fn canonicalize(&self) -> Result<Configuration> {
        let origin = self.vertices[0];
        let dir = self.vertices[1] - origin;
        let r = dir.norm();
        if !(r > ABS_TOL) {
            return Err(Error::DegenerateFrame);
        }
        let (c, s) = (dir.x / r, dir.y / r);
        let mut vertices: Vec<Point> = self
            .vertices
            .iter()
            .map(|&p| {
                let q = p - origin;
                Point::new(c * q.x + s * q.y, c * q.y - s * q.x)
            })
            .collect();
        vertices[0] = Point::ORIGIN;
        vertices[1] = Point::new(r, 0.0);
        Ok(Configuration {
            linkage: self.linkage.clone(),
            vertices,
        })
    }

    /// Canonical coordinates flattened to `[x0, y0, x1, y1, ...]`.
    pub fn canonical_coordinates(&self) -> Result<Vec<f64>> {
        Ok(self
            .canonicalize()?
            .vertices
            .iter()
            .flat_map(|p| [p.x, p.y])
            .collect())
    }

    pub fn oriented_angle(&self, i: usize, j: usize, k: usize) -> Result<f64> {
        oriented_angle_at(self.vertices[i], self.vertices[j], self.vertices[k])
            .ok_or(Error::DegenerateAngle { vertex: j })
    }
}

/// Oriented angle `∠(pi pj pk)` in `(-pi, pi]`: the counterclockwise turn
/// taking the ray `pj -> pk` onto the ray `pj -> pi`. For a counterclockwise
/// polygon this is the interior angle at `pj`. `None` if either ray is
/// degenerate.
pub fn oriented_angle_at(pi: Point, pj: Point, pk: Point) -> Option<f64> {
    let u = pi - pj;
    let v = pk - pj;
    if !(u.norm() > ABS_TOL && v.norm() > ABS_TOL) {
        return None;
    }
    let a = v.cross(u).atan2(v.dot(u));
    Some(if a <= -PI { PI } else { a })
}

pub fn oriented_angle(config: &Configuration, i: usize, j: usize, k: usize) -> Result<f64> {
    config.oriented_angle(i, j, k)
}

/// A point of the m-torus, one angle (radians, mod 2pi) per gadget.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TorusPoint {
    pub angles: Vec<f64>,
}

impl TorusPoint {
    pub fn new(angles: Vec<f64>) -> Self {
        TorusPoint { angles }
    }

    /// Builds the point whose angles are `2 pi t_i`.
    pub fn from_params(params: &[f64]) -> Self {
        TorusPoint {
            angles: params.iter().map(|t| TAU * t).collect(),
        }
    }

    /// Loop parameters `angle / 2pi`, reduced to `[0, 1)`.
    pub fn params(&self) -> Vec<f64> {
        self.angles
            .iter()
            .map(|a| {
                let t = (a / TAU).rem_euclid(1.0);
                if t >= 1.0 {
                    0.0
                } else {
                    t
                }
            })
            .collect()
    }

    pub fn dim(&self) -> usize {
        self.angles.len()
    }
}

/// The angle map: one oriented angle per vertex triple.
pub fn alpha_map(config: &Configuration, triples: &[[usize; 3]]) -> Result<TorusPoint> {
    triples
        .iter()
        .map(|&[i, j, k]| config.oriented_angle(i, j, k))
        .collect::<Result<Vec<_>>>()
        .map(TorusPoint::new)
}

/// Euclidean distance between canonical forms.
pub fn config_distance(c1: &Configuration, c2: &Configuration) -> Result<f64> {
    if c1.linkage != c2.linkage {
        return Err(Error::LinkageMismatch);
    }
    let a = c1.canonical_coordinates()?;
    let b = c2.canonical_coordinates()?;
    Ok(euclidean(&a, &b))
}

pub(crate) fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use std::f64::consts::FRAC_PI_2;

    fn square() -> Configuration {
        Configuration::new(
            Linkage::new(vec![1.0; 4]).unwrap(),
            vec![
                Point::new(0.0, 0.0),
                Point::new(1.0, 0.0),
                Point::new(1.0, 1.0),
                Point::new(0.0, 1.0),
            ],
        )
        .unwrap()
    }

    fn irregular() -> Configuration {
        let pts = vec![
            Point::new(0.3, -1.2),
            Point::new(2.1, 0.4),
            Point::new(1.7, 2.2),
            Point::new(-0.8, 1.9),
            Point::new(-1.4, 0.1),
        ];
        let n = pts.len();
        let lengths: Vec<f64> = (0..n).map(|i| pts[i].dist(pts[(i + 1) % n])).collect();
        Configuration::new(Linkage::new(lengths).unwrap(), pts).unwrap()
    }

    #[test]
    fn make_linkage_validates() {
        assert_eq!(Linkage::new(vec![2.0, 1.0, 2.0, 3.0]).unwrap().n(), 4);
        assert!(matches!(
            Linkage::new(vec![1.0, 0.0, 1.0]),
            Err(Error::NonPositiveLength { index: 1, .. })
        ));
        assert_eq!(Linkage::new(vec![1.0, 1.0]), Err(Error::TooFewBars(2)));
        assert!(Linkage::new(vec![1.0, f64::NAN, 1.0]).is_err());
    }

    #[test]
    fn realizability() {
        assert!(Linkage::new(vec![1.0, 1.0, 1.0]).unwrap().is_realizable());
        assert!(!Linkage::new(vec![10.0, 1.0, 1.0, 1.0])
            .unwrap()
            .is_realizable());
        assert!(Linkage::new(vec![2.0, 1.0, 2.0, 3.0])
            .unwrap()
            .is_realizable());
    }

    #[test]
    fn admissibility_examples() {
        let l = Linkage::new(vec![2.0, 1.0, 2.0, 1.6, 1.6]).unwrap();
        assert!(l.triple_fold_admissible(0));
        let l = Linkage::new(vec![2.0, 1.0, 2.0, 3.0]).unwrap();
        assert!(!l.triple_fold_admissible(0));
        let l = Linkage::new(vec![1.0, 2.0, 1.0, 9.0]).unwrap();
        assert!(!l.triple_fold_admissible(0));
    }

    #[test]
    fn configuration_rejects_wrong_lengths() {
        let l = Linkage::new(vec![1.0; 4]).unwrap();
        let pts = vec![
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(1.0, 1.1),
            Point::new(0.0, 1.0),
        ];
        assert!(matches!(
            Configuration::new(l.clone(), pts),
            Err(Error::LengthMismatch { index: 1, .. })
        ));
        assert!(matches!(
            Configuration::new(l, vec![Point::ORIGIN; 3]),
            Err(Error::VertexCount {
                expected: 4,
                got: 3
            })
        ));
    }

    #[test]
    fn canonical_form_pins_first_bar() {
        let c = irregular();
        let k = c.canonicalize().unwrap();
        assert_eq!(k.vertex(0), Point::ORIGIN);
        assert_abs_diff_eq!(k.vertex(1).x, c.linkage().length(0), epsilon = 1e-12);
        assert_eq!(k.vertex(1).y, 0.0);
        assert_eq!(k.canonicalize().unwrap(), k);
        assert!(k.max_relative_residual() < 1e-14);
    }

    #[test]
    fn canonical_form_forgets_rotation() {
        let c = irregular();
        let rotated = c.transformed(37f64.to_radians(), Point::new(0.0, 0.0));
        let a = c.canonicalize().unwrap();
        let b = rotated.canonicalize().unwrap();
        for (p, q) in a.vertices().iter().zip(b.vertices()) {
            assert_abs_diff_eq!(p.x, q.x, epsilon = 1e-12);
            assert_abs_diff_eq!(p.y, q.y, epsilon = 1e-12);
        }
    }

    #[test]
    fn oriented_angle_examples() {
        let a = |i: [f64; 2], j: [f64; 2], k: [f64; 2]| {
            oriented_angle_at(i.into(), j.into(), k.into()).unwrap()
        };
        assert_eq!(a([0.0, 0.0], [2.0, 0.0], [1.0, 0.0]), 0.0);
        assert_abs_diff_eq!(
            a([0.0, 0.0], [1.0, 0.0], [1.0, 1.0]),
            FRAC_PI_2,
            epsilon = 1e-15
        );
        assert_eq!(a([0.0, 0.0], [1.0, 0.0], [2.0, 0.0]), PI);
        // -pi branch folds onto +pi
        assert_eq!(a([0.0, 0.0], [1.0, -0.0], [2.0, 0.0]), PI);
        assert_eq!(
            oriented_angle_at(Point::ORIGIN, Point::ORIGIN, Point::new(1.0, 0.0)),
            None
        );
        let sq = square();
        assert!(matches!(
            Configuration::new(
                sq.linkage().clone(),
                vec![
                    Point::ORIGIN,
                    Point::new(1.0, 0.0),
                    Point::new(1.0, 1.0),
                    Point::new(0.0, 1.0)
                ]
            )
            .unwrap()
            .oriented_angle(0, 0, 1),
            Err(Error::DegenerateAngle { vertex: 0 })
        ));
    }

    #[test]
    fn alpha_map_is_componentwise() {
        let c = irregular();
        let triples = [[0, 1, 2], [2, 3, 4]];
        let alpha = alpha_map(&c, &triples).unwrap();
        assert_eq!(alpha.angles[0], c.oriented_angle(0, 1, 2).unwrap());
        assert_eq!(alpha.angles[1], c.oriented_angle(2, 3, 4).unwrap());
    }

    #[test]
    fn distance_examples() {
        let c = irregular();
        assert_eq!(config_distance(&c, &c).unwrap(), 0.0);
        let moved = c.transformed(1.1, Point::new(-4.0, 7.5));
        assert!(config_distance(&c, &moved).unwrap() < 1e-12);
        assert_eq!(config_distance(&c, &square()), Err(Error::LinkageMismatch));

        // a3 reflected across the line a2a4 moves by exactly (0.3, 0.4)
        let a3 = Point::new(1.0, 1.0);
        let b3 = Point::new(1.3, 1.4);
        let mid = a3.lerp(b3, 0.5);
        let bis = Point::new(-0.4, 0.3);
        let a2 = mid + bis * 2.875;
        let a4 = mid - bis * 2.0;
        let a1 = Point::new(0.0, 0.0);
        let lengths = vec![a1.dist(a2), a2.dist(a3), a3.dist(a4), a4.dist(a1)];
        let l = Linkage::new(lengths).unwrap();
        let c1 = Configuration::new(l.clone(), vec![a1, a2, a3, a4]).unwrap();
        let c2 = Configuration::new(l, vec![a1, a2, b3, a4]).unwrap();
        assert_abs_diff_eq!(config_distance(&c1, &c2).unwrap(), 0.5, epsilon = 1e-12);
    }

    #[test]
    fn torus_params_round_trip() {
        let p = TorusPoint::from_params(&[0.0, 0.25, 0.5]);
        assert_eq!(p.params(), vec![0.0, 0.25, 0.5]);
        assert_eq!(TorusPoint::new(vec![-FRAC_PI_2]).params(), vec![0.75]);
    }

    fn arb_point() -> impl Strategy<Value = Point> {
        (-1e3..1e3f64, -1e3..1e3f64).prop_map(|(x, y)| Point::new(x, y))
    }

    fn arb_config() -> impl Strategy<Value = Configuration> {
        proptest::collection::vec((-10.0..10.0f64, -10.0..10.0f64), 3..8).prop_filter_map(
            "degenerate",
            |raw| {
                let pts: Vec<Point> = raw.into_iter().map(|(x, y)| Point::new(x, y)).collect();
                let n = pts.len();
                let lengths: Vec<f64> = (0..n).map(|i| pts[i].dist(pts[(i + 1) % n])).collect();
                if lengths.iter().any(|&l| l < 1e-3) {
                    return None;
                }
                Configuration::new(Linkage::new(lengths).ok()?, pts).ok()
            },
        )
    }

    proptest! {
        #[test]
        fn canonicalize_quotients_rigid_motions(c in arb_config(), angle in -PI..PI, shift in arb_point()) {
            let a = c.canonicalize().unwrap();
            let b = c.transformed(angle, shift).canonicalize().unwrap();
            prop_assert_eq!(a.canonicalize().unwrap(), a.clone());
            for (p, q) in a.vertices().iter().zip(b.vertices()) {
                prop_assert!((p.x - q.x).abs() <= 1e-9 && (p.y - q.y).abs() <= 1e-9);
            }
        }

        #[test]
        fn oriented_angle_antisymmetric(p in arb_point(), q in arb_point(), r in arb_point()) {
            prop_assume!(p.dist(q) > 1e-6 && r.dist(q) > 1e-6);
            let a = oriented_angle_at(p, q, r).unwrap();
            let b = oriented_angle_at(r, q, p).unwrap();
            let s = (a + b).rem_euclid(TAU);
            prop_assert!(s < 1e-12 || TAU - s < 1e-12);
            let mirror = |p: Point| Point::new(p.x, -p.y);
            let m = oriented_angle_at(mirror(p), mirror(q), mirror(r)).unwrap();
            let s = (a + m).rem_euclid(TAU);
            prop_assert!(s < 1e-12 || TAU - s < 1e-12);
        }

        #[test]
        fn distance_is_pseudometric(
            a in 0.5..3.0f64,
            b in 0.5..3.0f64,
            thetas in proptest::array::uniform3(0.1..3.0f64),
            motions in proptest::array::uniform3((-PI..PI, arb_point())),
        ) {
            // parallelograms with sides (a, b, a, b) at three different angles
            let l = Linkage::new(vec![a, b, a, b]).unwrap();
            let cs: Vec<Configuration> = thetas.iter().zip(motions).map(|(&t, (angle, shift))| {
                let side = Point::new(b * t.cos(), b * t.sin());
                let pts = vec![Point::ORIGIN, Point::new(a, 0.0), Point::new(a, 0.0) + side, side];
                Configuration::new(l.clone(), pts).unwrap().transformed(angle, shift)
            }).collect();
            let d = |i: usize, j: usize| config_distance(&cs[i], &cs[j]).unwrap();
            for i in 0..3 {
                prop_assert!(d(i, i) < 1e-9);
                for j in 0..3 {
                    prop_assert!(d(i, j) >= 0.0);
                    prop_assert_eq!(d(i, j), d(j, i));
                    for k in 0..3 {
                        prop_assert!(d(i, k) <= d(i, j) + d(j, k) + 1e-9);
                    }
                }
            }
        }

        #[test]
        fn admissibility_invariant_under_relabeling(
            lengths in proptest::collection::vec(0.1..5.0f64, 4..9),
            start in 0usize..9,
        ) {
            let l = Linkage::new(lengths).unwrap();
            let start = start % l.n();
            prop_assert_eq!(l.triple_fold_admissible(start), l.rotated(start).triple_fold_admissible(0));
        }
    }
}
