//! Counterexample linkages built from triple folds, and the explicit loop
//! and torus of configurations passing through them.
//!
//! A gadget is a chain of three bars `l_a > l_b < l_c` whose end joints are
//! pinned at distance `d = l_a - l_b + l_c`. Folding the chain flat puts the
//! middle bar back over the other two; this is the only configuration on the
//! gadget's loop that is not embedded. `m` gadgets are mounted as chords of a
//! common circle, facing outwards, and consecutive chords are joined by two
//! base bars through a vertex on the circle. Every gadget contributes five
//! bars, so the linkage has `n = 5m` bars.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{circle_circle, CircleIntersection, Segment};
use crate::linkage::{Configuration, Linkage, TorusPoint, ABS_TOL, LENGTH_TOL};
use crate::point::Point;

/// Tolerance under which the elbow solve is treated as a tangency.
const TANGENCY_EPS: f64 = 1e-12;
/// Relative tolerance on the anchor gap of a gadget.
const ANCHOR_TOL: f64 = 1e-12;
const MAX_LAYOUT_ATTEMPTS: usize = 40;
const RADIUS_GROWTH: f64 = 1.25;
/// Arc subdivisions when over-approximating moving regions by polygons.
const REGION_ARC_STEPS: usize = 16;

/// Bar lengths of a triple fold, in chain order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 3]", into = "[f64; 3]")]
pub struct FoldLengths {
    first: f64,
    middle: f64,
    last: f64,
}

impl FoldLengths {
    pub fn new(first: f64, middle: f64, last: f64) -> Result<Self> {
        let ok = [first, middle, last]
            .iter()
            .all(|l| l.is_finite() && *l > 0.0)
            && first > middle
            && middle < last;
        if !ok {
            return Err(Error::InvalidFoldLengths(first, middle, last));
        }
        Ok(FoldLengths {
            first,
            middle,
            last,
        })
    }

    pub fn first(&self) -> f64 {
        self.first
    }

    pub fn middle(&self) -> f64 {
        self.middle
    }

    pub fn last(&self) -> f64 {
        self.last
    }

    /// Anchor gap `l_a - l_b + l_c` of the flat fold.
    pub fn chord(&self) -> f64 {
        self.first - self.middle + self.last
    }

    /// Radius of the moving region around the chord.
    pub fn reach(&self) -> f64 {
        self.first + self.middle
    }

    pub fn scaled(&self, s: f64) -> Result<Self> {
        FoldLengths::new(self.first * s, self.middle * s, self.last * s)
    }
}

impl Default for FoldLengths {
    fn default() -> Self {
        FoldLengths {
            first: 2.0,
            middle: 1.0,
            last: 2.0,
        }
    }
}

impl TryFrom<[f64; 3]> for FoldLengths {
    type Error = Error;
    fn try_from([a, b, c]: [f64; 3]) -> Result<Self> {
        FoldLengths::new(a, b, c)
    }
}

impl From<FoldLengths> for [f64; 3] {
    fn from(f: FoldLengths) -> Self {
        [f.first, f.middle, f.last]
    }
}

/// Half-plane of the oriented chord `anchor_start -> anchor_end` in which
/// the chain moves. Serializes as `+1` (left) or `-1` (right).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "i8", into = "i8")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn sign(self) -> f64 {
        match self {
            Side::Left => 1.0,
            Side::Right => -1.0,
        }
    }

    pub fn flipped(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

impl TryFrom<i8> for Side {
    type Error = Error;
    fn try_from(v: i8) -> Result<Self> {
        match v {
            1 => Ok(Side::Left),
            -1 => Ok(Side::Right),
            _ => Err(Error::InvalidLayout(format!(
                "side must be +1 or -1, got {v}"
            ))),
        }
    }
}

impl From<Side> for i8 {
    fn from(s: Side) -> Self {
        match s {
            Side::Left => 1,
            Side::Right => -1,
        }
    }
}

/// One triple fold mounted on two pinned anchors.
#[derive(Debug, Clone, PartialEq)]
pub struct GadgetSpec {
    fold: FoldLengths,
    anchor_start: Point,
    anchor_end: Point,
    side: Side,
    first_bar: usize,
}

impl GadgetSpec {
    pub fn new(
        fold: FoldLengths,
        anchor_start: Point,
        anchor_end: Point,
        side: Side,
        first_bar: usize,
    ) -> Result<Self> {
        let d = fold.chord();
        let gap = anchor_start.dist(anchor_end);
        if !((gap - d).abs() <= ANCHOR_TOL * d) {
            return Err(Error::InvalidLayout(format!(
                "anchors are {gap} apart, fold needs exactly {d}"
            )));
        }
        Ok(GadgetSpec {
            fold,
            anchor_start,
            anchor_end,
            side,
            first_bar,
        })
    }

    pub fn fold(&self) -> FoldLengths {
        self.fold
    }

    pub fn anchors(&self) -> (Point, Point) {
        (self.anchor_start, self.anchor_end)
    }

    pub fn side(&self) -> Side {
        self.side
    }

    /// The three consecutive bars of the gadget (0-based, not reduced mod n).
    pub fn edge_indices(&self) -> [usize; 3] {
        [self.first_bar, self.first_bar + 1, self.first_bar + 2]
    }

    fn frame(&self) -> (Point, Point) {
        let chord = self.anchor_end - self.anchor_start;
        let u = chord * (1.0 / chord.norm());
        (u, u.perp() * self.side.sign())
    }

    /// Largest rotation of the first bar away from the chord for which the
    /// elbow still closes; there the last two bars are aligned.
    pub fn fold_branch_interval(&self) -> f64 {
        let FoldLengths {
            first,
            middle,
            last,
        } = self.fold;
        let d = self.fold.chord();
        let reach = middle + last;
        let cos = (first * first + d * d - reach * reach) / (2.0 * first * d);
        cos.clamp(-1.0, 1.0).acos()
    }

    /// Interior joints `(a2, a3)` at loop parameter `t` (taken mod 1).
    ///
    /// The first half of the loop opens the first bar from the flat fold to
    /// the straight elbow on one elbow branch, the second half closes it on
    /// the other branch.
    pub fn fold_chain_at(&self, t: f64) -> (Point, Point) {
        let t = t.rem_euclid(1.0);
        let phi_max = self.fold_branch_interval();
        let (phi, first_branch) = if t <= 0.5 {
            (2.0 * t * phi_max, true)
        } else {
            ((2.0 - 2.0 * t) * phi_max, false)
        };
        let (u, v) = self.frame();
        let (s, c) = phi.sin_cos();
        let a2 = self.anchor_start + (u * c + v * s) * self.fold.first;
        let a3 = match circle_circle(
            a2,
            self.fold.middle,
            self.anchor_end,
            self.fold.last,
            TANGENCY_EPS,
        ) {
            Ok(CircleIntersection::Two(p, q)) => {
                if first_branch {
                    p
                } else {
                    q
                }
            }
            Ok(CircleIntersection::Tangent(p)) => p,
            // only reachable through rounding at the two tangencies
            Err(_) => elbow_tangency(a2, self.fold.middle, self.anchor_end, self.fold.last),
        };
        (a2, a3)
    }

    /// Conservative convex polygon containing the moving region: points on
    /// the gadget's side within `reach` of the chord.
    pub fn region_polygon(&self) -> Vec<Point> {
        let (u, v) = self.frame();
        let step = 0.5 * PI / REGION_ARC_STEPS as f64;
        let rho = self.fold.reach() / (0.5 * step).cos();
        let arc = |center: Point, start: f64| {
            (0..=REGION_ARC_STEPS).map(move |k| {
                let (s, c) = (start + k as f64 * step).sin_cos();
                center + (u * c + v * s) * rho
            })
        };
        arc(self.anchor_end, 0.0)
            .chain(arc(self.anchor_start, 0.5 * PI))
            .collect()
    }

    /// Signed distance of `p` from the chord line, positive on the gadget's side.
    pub fn side_distance(&self, p: Point) -> f64 {
        let (_, v) = self.frame();
        (p - self.anchor_start).dot(v)
    }
}

fn elbow_tangency(c1: Point, r1: f64, c2: Point, r2: f64) -> Point {
    let v = c2 - c1;
    let u = v * (1.0 / v.norm());
    if v.norm() >= 0.5 * (r1 + r2 + (r1 - r2).abs()) {
        (c1 + u * r1).lerp(c2 - u * r2, 0.5)
    } else {
        let s = if r1 >= r2 { 1.0 } else { -1.0 };
        (c1 + u * (s * r1)).lerp(c2 + u * (s * r2), 0.5)
    }
}

/// Clearances certified for a layout.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LayoutMargins {
    pub radius: f64,
    /// Smallest distance between two moving regions (infinite for one gadget).
    pub region_gap: f64,
    /// Smallest distance of a non-anchor base vertex from a chord line,
    /// measured away from the moving side.
    pub base_clearance: f64,
}

/// `m` triple-fold gadgets on a rigid base.
#[derive(Debug, Clone, PartialEq)]
pub struct CounterexampleLayout {
    linkage: Linkage,
    gadgets: Vec<GadgetSpec>,
    base_vertices: Vec<Point>,
    angle_triples: Vec<[usize; 3]>,
    /// For every vertex: `Ok(base index)` or `Err((gadget, 0 | 1))`.
    slots: Vec<std::result::Result<usize, (usize, usize)>>,
}

impl CounterexampleLayout {
    /// Assembles and checks a layout. Region separation is not checked here
    /// (see [`CounterexampleLayout::margins`]).
    pub fn new(
        linkage: Linkage,
        gadgets: Vec<GadgetSpec>,
        base_vertices: Vec<Point>,
        angle_triples: Vec<[usize; 3]>,
    ) -> Result<Self> {
        let n = linkage.n();
        let bad = |msg: String| Err(Error::InvalidLayout(msg));
        if gadgets.is_empty() {
            return bad("no gadgets".into());
        }
        let mut slots = vec![Ok(usize::MAX); n];
        let mut gadget_bar = vec![false; n];
        for (g, gadget) in gadgets.iter().enumerate() {
            if gadget.first_bar >= n {
                return bad(format!(
                    "gadget {g} starts at bar {} of {n}",
                    gadget.first_bar
                ));
            }
            let bars = gadget.edge_indices().map(|b| b % n);
            for (k, &b) in bars.iter().enumerate() {
                if gadget_bar[b] {
                    return bad(format!("bar {} is used by two gadgets", b + 1));
                }
                gadget_bar[b] = true;
                let expected = [gadget.fold.first, gadget.fold.middle, gadget.fold.last][k];
                if linkage.length(b) != expected {
                    return bad(format!("bar {} length disagrees with gadget {g}", b + 1));
                }
            }
            slots[(gadget.first_bar + 1) % n] = Err((g, 0));
            slots[(gadget.first_bar + 2) % n] = Err((g, 1));
            if !linkage.triple_fold_admissible(gadget.first_bar) {
                return bad(format!("gadget {g} violates the triple-fold inequalities"));
            }
        }
        let mut next = 0;
        for slot in slots.iter_mut().filter(|s| s.is_ok()) {
            *slot = Ok(next);
            next += 1;
        }
        if next != base_vertices.len() {
            return bad(format!(
                "expected {next} base vertices, got {}",
                base_vertices.len()
            ));
        }
        for (g, gadget) in gadgets.iter().enumerate() {
            for (v, anchor) in [
                (gadget.first_bar, gadget.anchor_start),
                (gadget.first_bar + 3, gadget.anchor_end),
            ] {
                let Ok(b) = slots[v % n] else {
                    return bad(format!("anchor of gadget {g} is an interior joint"));
                };
                if base_vertices[b].dist(anchor) > 1e-9 {
                    return bad(format!(
                        "anchor of gadget {g} is not at base vertex {}",
                        v % n + 1
                    ));
                }
            }
        }
        for bar in (0..n).filter(|&b| !gadget_bar[b]) {
            let (Ok(i), Ok(j)) = (slots[bar], slots[(bar + 1) % n]) else {
                return bad(format!("base bar {} touches a moving joint", bar + 1));
            };
            let l = linkage.length(bar);
            if (base_vertices[i].dist(base_vertices[j]) - l).abs() > LENGTH_TOL * l {
                return bad(format!("base bar {} does not match its vertices", bar + 1));
            }
        }
        if angle_triples.len() != gadgets.len() {
            return bad("one angle triple per gadget is required".into());
        }
        if angle_triples.iter().flatten().any(|&v| v >= n) {
            return bad("angle triple index out of range".into());
        }
        Ok(CounterexampleLayout {
            linkage,
            gadgets,
            base_vertices,
            angle_triples,
            slots,
        })
    }

    pub fn linkage(&self) -> &Linkage {
        &self.linkage
    }

    pub fn gadgets(&self) -> &[GadgetSpec] {
        &self.gadgets
    }

    pub fn base_vertices(&self) -> &[Point] {
        &self.base_vertices
    }

    pub fn angle_triples(&self) -> &[[usize; 3]] {
        &self.angle_triples
    }

    /// Number of gadgets.
    pub fn m(&self) -> usize {
        self.gadgets.len()
    }

    pub fn is_gadget_bar(&self, bar: usize) -> bool {
        let n = self.linkage.n();
        self.gadgets
            .iter()
            .any(|g| g.edge_indices().iter().any(|&b| b % n == bar % n))
    }

    /// The configuration at loop parameters `params` (one per gadget, mod 1).
    pub fn gamma_at(&self, params: &[f64]) -> Result<Configuration> {
        if params.len() != self.m() {
            return Err(Error::InvalidArgument(format!(
                "expected {} torus coordinates, got {}",
                self.m(),
                params.len()
            )));
        }
        let chains: Vec<(Point, Point)> = self
            .gadgets
            .iter()
            .zip(params)
            .map(|(g, &t)| g.fold_chain_at(t))
            .collect();
        let vertices = self
            .slots
            .iter()
            .map(|slot| match *slot {
                Ok(b) => self.base_vertices[b],
                Err((g, 0)) => chains[g].0,
                Err((g, _)) => chains[g].1,
            })
            .collect();
        Configuration::new(self.linkage.clone(), vertices)
    }

    /// The torus map; angle `theta` stands for loop parameter `theta / 2pi`.
    pub fn gamma(&self, p: &TorusPoint) -> Result<Configuration> {
        self.gamma_at(&p.params())
    }

    /// All gadgets folded flat.
    pub fn aligned_configuration(&self) -> Result<Configuration> {
        self.gamma_at(&vec![0.0; self.m()])
    }

    /// Loop in torus coordinate `gadget` sampled at `t = k / samples`, the
    /// other coordinates held at `others`.
    pub fn sample_loop(
        &self,
        gadget: usize,
        samples: usize,
        others: &TorusPoint,
    ) -> Result<Vec<(f64, Configuration)>> {
        if samples < 8 {
            return Err(Error::InvalidArgument(format!(
                "need at least 8 loop samples, got {samples}"
            )));
        }
        if gadget >= self.m() {
            return Err(Error::InvalidArgument(format!("no gadget {gadget}")));
        }
        let base = others.params();
        (0..samples)
            .into_par_iter()
            .map(|k| {
                let t = k as f64 / samples as f64;
                let mut params = base.clone();
                params[gadget] = t;
                self.gamma_at(&params).map(|c| (t, c))
            })
            .collect()
    }

    /// The torus map on a product grid, row-major (last coordinate fastest).
    pub fn sample_torus(&self, grid: &[usize]) -> Result<Vec<(TorusPoint, Configuration)>> {
        if grid.len() != self.m() {
            return Err(Error::InvalidArgument(format!(
                "grid has {} axes for {} gadgets",
                grid.len(),
                self.m()
            )));
        }
        if let Some(&g) = grid.iter().find(|&&g| g < 4) {
            return Err(Error::InvalidArgument(format!(
                "grid counts must be at least 4, got {g}"
            )));
        }
        let total: usize = grid.iter().product();
        (0..total)
            .into_par_iter()
            .map(|flat| {
                let mut rest = flat;
                let mut params = vec![0.0; grid.len()];
                for axis in (0..grid.len()).rev() {
                    params[axis] = (rest % grid[axis]) as f64 / grid[axis] as f64;
                    rest /= grid[axis];
                }
                let c = self.gamma_at(&params)?;
                Ok((TorusPoint::from_params(&params), c))
            })
            .collect()
    }

    /// Separation certificates of the layout.
    pub fn margins(&self) -> LayoutMargins {
        let regions: Vec<Vec<Point>> = self
            .gadgets
            .iter()
            .map(GadgetSpec::region_polygon)
            .collect();
        let mut region_gap = f64::INFINITY;
        for i in 0..regions.len() {
            for j in i + 1..regions.len() {
                region_gap = region_gap.min(convex_polygon_distance(&regions[i], &regions[j]));
            }
        }
        let n = self.linkage.n();
        let mut base_clearance = f64::INFINITY;
        for g in &self.gadgets {
            let anchors = [g.first_bar % n, (g.first_bar + 3) % n];
            for (v, slot) in self.slots.iter().enumerate() {
                if let Ok(b) = slot {
                    if !anchors.contains(&v) {
                        base_clearance =
                            base_clearance.min(-g.side_distance(self.base_vertices[*b]));
                    }
                }
            }
        }
        let radius = self
            .base_vertices
            .iter()
            .map(|p| p.norm())
            .fold(0.0, f64::max);
        LayoutMargins {
            radius,
            region_gap,
            base_clearance,
        }
    }
}

/// Builds the `m`-gadget counterexample with the given fold lengths.
///
/// The radius of the mounting circle starts at the smallest value that fits
/// all chords and grows until the moving regions separate.
pub fn build_counterexample(m: usize, fold: FoldLengths) -> Result<CounterexampleLayout> {
    if m == 0 {
        return Err(Error::InvalidArgument(
            "at least one gadget is required".into(),
        ));
    }
    let d = fold.chord();
    let mut radius = d.max(1.5 * d / (2.0 * (PI / (2.0 * m as f64)).sin()));
    for _ in 0..MAX_LAYOUT_ATTEMPTS {
        if let Some(layout) = try_layout(m, fold, radius)? {
            return Ok(layout);
        }
        radius *= RADIUS_GROWTH;
    }
    Err(Error::LayoutFailure(format!(
        "moving regions still overlap at radius {radius}"
    )))
}

fn try_layout(m: usize, fold: FoldLengths, radius: f64) -> Result<Option<CounterexampleLayout>> {
    let d = fold.chord();
    let half = (d / (2.0 * radius)).asin();
    let sector = 2.0 * PI / m as f64;
    if 2.0 * half >= sector {
        return Ok(None);
    }
    let on_circle = |angle: f64| Point::new(radius * angle.cos(), radius * angle.sin());

    let mut lengths = Vec::with_capacity(5 * m);
    let mut base_vertices = Vec::with_capacity(3 * m);
    let mut gadgets = Vec::with_capacity(m);
    let mut angle_triples = Vec::with_capacity(m);
    let centers: Vec<f64> = (0..m).map(|g| -0.5 * PI + g as f64 * sector).collect();
    for (g, &center) in centers.iter().enumerate() {
        let start = on_circle(center - half);
        let dir = on_circle(center + half) - start;
        let end = start + dir * (d / dir.norm());
        let apex = on_circle(center + 0.5 * sector);
        let next_start = on_circle(centers[(g + 1) % m] - half);
        // labels start at the last gadget's far anchor, so that the first two
        // vertices (the canonical frame) belong to the rigid base
        let first_bar = 5 * g + 2;
        gadgets.push(GadgetSpec::new(fold, start, end, Side::Right, first_bar)?);
        angle_triples.push([first_bar, first_bar + 1, first_bar + 2]);
        base_vertices.extend([start, end, apex]);
        lengths.extend([
            fold.first,
            fold.middle,
            fold.last,
            end.dist(apex),
            apex.dist(next_start),
        ]);
    }
    lengths.rotate_right(2);
    base_vertices.rotate_right(2);
    let linkage = Linkage::new(lengths)?;
    let layout = match CounterexampleLayout::new(linkage, gadgets, base_vertices, angle_triples) {
        Ok(l) => l,
        Err(Error::InvalidLayout(_)) => return Ok(None),
        Err(e) => return Err(e),
    };
    let margins = layout.margins();
    if margins.region_gap > ABS_TOL && margins.base_clearance > ABS_TOL {
        Ok(Some(layout))
    } else {
        Ok(None)
    }
}

fn convex_contains(poly: &[Point], p: Point) -> bool {
    let n = poly.len();
    let mut sign = 0.0;
    for i in 0..n {
        let c = (poly[(i + 1) % n] - poly[i]).cross(p - poly[i]);
        if c != 0.0 {
            if sign == 0.0 {
                sign = c.signum();
            } else if c.signum() != sign {
                return false;
            }
        }
    }
    true
}

fn convex_polygon_distance(a: &[Point], b: &[Point]) -> f64 {
    if convex_contains(a, b[0]) || convex_contains(b, a[0]) {
        return 0.0;
    }
    let edges = |p: &[Point]| -> Vec<Segment> {
        (0..p.len())
            .map(|i| Segment::new(p[i], p[(i + 1) % p.len()]))
            .collect()
    };
    let (ea, eb) = (edges(a), edges(b));
    ea.iter()
        .flat_map(|s| eb.iter().map(move |t| s.distance_to(t)))
        .fold(f64::INFINITY, f64::min)
}

/// Serialized layout: 1-based indices, fold lengths as triples.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LayoutDoc {
    pub lengths: Vec<f64>,
    pub gadgets: Vec<GadgetDoc>,
    pub base_vertices: Vec<Point>,
    pub angle_triples: Vec<[usize; 3]>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GadgetDoc {
    pub edge_indices: [usize; 3],
    pub anchors: [Point; 2],
    pub side: Side,
    pub fold_lengths: FoldLengths,
}

impl From<&CounterexampleLayout> for LayoutDoc {
    fn from(l: &CounterexampleLayout) -> Self {
        LayoutDoc {
            lengths: l.linkage.lengths().to_vec(),
            gadgets: l
                .gadgets
                .iter()
                .map(|g| GadgetDoc {
                    edge_indices: g.edge_indices().map(|b| b + 1),
                    anchors: [g.anchor_start, g.anchor_end],
                    side: g.side,
                    fold_lengths: g.fold,
                })
                .collect(),
            base_vertices: l.base_vertices.clone(),
            angle_triples: l.angle_triples.iter().map(|t| t.map(|v| v + 1)).collect(),
        }
    }
}

impl TryFrom<LayoutDoc> for CounterexampleLayout {
    type Error = Error;
    fn try_from(doc: LayoutDoc) -> Result<Self> {
        let linkage = Linkage::new(doc.lengths)?;
        let n = linkage.n();
        let one_based = |v: usize| {
            v.checked_sub(1)
                .filter(|&i| i < n)
                .ok_or_else(|| Error::InvalidLayout(format!("index {v} out of range 1..={n}")))
        };
        let gadgets = doc
            .gadgets
            .into_iter()
            .map(|g| {
                let [i, j, k] = g.edge_indices;
                let first = one_based(i)?;
                if one_based(j)? != (first + 1) % n || one_based(k)? != (first + 2) % n {
                    return Err(Error::InvalidLayout(format!(
                        "gadget bars {:?} are not consecutive",
                        g.edge_indices
                    )));
                }
                GadgetSpec::new(g.fold_lengths, g.anchors[0], g.anchors[1], g.side, first)
            })
            .collect::<Result<Vec<_>>>()?;
        let angle_triples = doc
            .angle_triples
            .iter()
            .map(|t| Ok([one_based(t[0])?, one_based(t[1])?, one_based(t[2])?]))
            .collect::<Result<Vec<_>>>()?;
        CounterexampleLayout::new(linkage, gadgets, doc.base_vertices, angle_triples)
    }
}

impl Serialize for CounterexampleLayout {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        LayoutDoc::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for CounterexampleLayout {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = LayoutDoc::deserialize(d)?;
        CounterexampleLayout::try_from(doc).map_err(serde::de::Error::custom)
    }
}
