//! Vietoris–Rips filtrations and their persistent homology over Z/2.

use std::cmp::Ordering;
use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linkage::{euclidean, Configuration};

pub const DEFAULT_BUDGET: usize = 5_000_000;
/// Persistence ratio a Betti claim must clear against the strongest
/// unclaimed class of the same dimension.
pub const SIGNIFICANCE_RATIO: f64 = 5.0;
const MAX_SIMPLEX_DIM: usize = 3;

/// Symmetric matrix of pairwise distances.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DistanceMatrix {
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> f64 + Sync) -> Self {
        let data = (0..n * n)
            .into_par_iter()
            .map(|idx| {
                let (i, j) = (idx / n, idx % n);
                match i.cmp(&j) {
                    Ordering::Equal => 0.0,
                    Ordering::Less => f(i, j),
                    Ordering::Greater => f(j, i),
                }
            })
            .collect();
        DistanceMatrix { n, data }
    }

    pub fn from_vectors(points: &[Vec<f64>]) -> Self {
        Self::from_fn(points.len(), |i, j| euclidean(&points[i], &points[j]))
    }

    /// Distances under [`crate::linkage::config_distance`].
    pub fn from_configurations(configs: &[Configuration]) -> Result<Self> {
        if configs.iter().any(|c| c.linkage() != configs[0].linkage()) {
            return Err(Error::LinkageMismatch);
        }
        let coords = configs
            .par_iter()
            .map(Configuration::canonical_coordinates)
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_vectors(&coords))
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    /// Smallest radius at which some point is within reach of all others.
    /// Beyond it the Rips complex is a cone.
    pub fn enclosing_radius(&self) -> f64 {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j)).fold(0.0, f64::max))
            .fold(f64::INFINITY, f64::min)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Simplex {
    pub vertices: Vec<usize>,
    pub diameter: f64,
}

impl Simplex {
    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }
}

fn filtration_order(a: &Simplex, b: &Simplex) -> Ordering {
    a.diameter
        .total_cmp(&b.diameter)
        .then(a.vertices.len().cmp(&b.vertices.len()))
        .then_with(|| a.vertices.cmp(&b.vertices))
}

/// Simplices sorted by (diameter, dimension, vertices).
#[derive(Debug, Clone, PartialEq)]
pub struct Filtration {
    simplices: Vec<Simplex>,
    max_dim: usize,
    max_diameter: f64,
}

impl Filtration {
    /// Sorts and checks an explicit list of simplices: vertex lists must be
    /// strictly increasing and every face must appear no later than its cofaces.
    pub fn new(mut simplices: Vec<Simplex>, max_diameter: f64) -> Result<Self> {
        simplices.sort_by(filtration_order);
        let max_dim = simplices.iter().map(Simplex::dim).max().unwrap_or(0);
        let index = simplex_index(&simplices);
        for s in &simplices {
            if s.vertices.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidArgument(format!(
                    "unsorted simplex {:?}",
                    s.vertices
                )));
            }
            if s.dim() > 0 {
                for face in faces(&s.vertices) {
                    match index.get(&simplex_key(&face)) {
                        Some(&f) if simplices[f].diameter <= s.diameter => {}
                        _ => {
                            return Err(Error::InvalidArgument(format!(
                                "face {face:?} of {:?} is missing or enters later",
                                s.vertices
                            )))
                        }
                    }
                }
            }
        }
        Ok(Filtration {
            simplices,
            max_dim,
            max_diameter,
        })
    }

    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn max_dim(&self) -> usize {
        self.max_dim
    }

    pub fn max_diameter(&self) -> f64 {
        self.max_diameter
    }

    pub fn count_by_dim(&self) -> Vec<usize> {
        let mut counts = vec![0; self.max_dim + 1];
        for s in &self.simplices {
            counts[s.dim()] += 1;
        }
        counts
    }

    /// Plain-text export: one simplex per line, `diameter v1 v2 ...`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for s in &self.simplices {
            out.push_str(&format!("{}", s.diameter));
            for v in &s.vertices {
                out.push_str(&format!(" {v}"));
            }
            out.push('\n');
        }
        out
    }
}

fn simplex_key(vertices: &[usize]) -> u64 {
    vertices
        .iter()
        .enumerate()
        .fold(0u64, |key, (i, &v)| key | ((v as u64 + 1) << (16 * i)))
}

fn simplex_index(simplices: &[Simplex]) -> HashMap<u64, usize> {
    simplices
        .iter()
        .enumerate()
        .map(|(i, s)| (simplex_key(&s.vertices), i))
        .collect()
}

fn faces(vertices: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    (0..vertices.len()).map(move |skip| {
        vertices
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != skip)
            .map(|(_, &v)| v)
            .collect()
    })
}

/// Visits every clique of the threshold graph with lowest vertex `root`.
fn for_each_clique(
    dist: &DistanceMatrix,
    neighbors: &[Vec<usize>],
    root: usize,
    max_dim: usize,
    visit: &mut dyn FnMut(&[usize], f64),
) {
    fn extend(
        dist: &DistanceMatrix,
        neighbors: &[Vec<usize>],
        clique: &mut Vec<usize>,
        diameter: f64,
        candidates: &[usize],
        max_dim: usize,
        visit: &mut dyn FnMut(&[usize], f64),
    ) {
        visit(clique, diameter);
        if clique.len() > max_dim {
            return;
        }
        for (pos, &v) in candidates.iter().enumerate() {
            let d = clique
                .iter()
                .map(|&u| dist.get(u, v))
                .fold(diameter, f64::max);
            let next: Vec<usize> = candidates[pos + 1..]
                .iter()
                .copied()
                .filter(|w| neighbors[v].binary_search(w).is_ok())
                .collect();
            clique.push(v);
            extend(dist, neighbors, clique, d, &next, max_dim, visit);
            clique.pop();
        }
    }
    let mut clique = vec![root];
    extend(
        dist,
        neighbors,
        &mut clique,
        0.0,
        &neighbors[root],
        max_dim,
        visit,
    );
}

/// Number of cliques with lowest vertex `root` and at most `max_dim + 1`
/// vertices, without visiting the largest ones.
fn count_cliques(neighbors: &[Vec<usize>], root: usize, max_dim: usize) -> usize {
    fn count(neighbors: &[Vec<usize>], size: usize, candidates: &[usize], max_dim: usize) -> usize {
        if size > max_dim {
            return 1;
        }
        if size == max_dim {
            return 1 + candidates.len();
        }
        let mut total = 1;
        for (pos, &v) in candidates.iter().enumerate() {
            let next: Vec<usize> = candidates[pos + 1..]
                .iter()
                .copied()
                .filter(|w| neighbors[v].binary_search(w).is_ok())
                .collect();
            total += count(neighbors, size + 1, &next, max_dim);
        }
        total
    }
    count(neighbors, 1, &neighbors[root], max_dim)
}

/// All simplices of dimension at most `max_dim` whose diameter is at most
/// `max_diameter`. Fails with [`Error::TooLarge`] (carrying the exact count)
/// when there are more than `budget`.
pub fn vr_filtration(
    dist: &DistanceMatrix,
    max_diameter: f64,
    max_dim: usize,
    budget: usize,
) -> Result<Filtration> {
    if dist.len() < 2 {
        return Err(Error::InvalidArgument("need at least two points".into()));
    }
    if max_dim > MAX_SIMPLEX_DIM {
        return Err(Error::InvalidArgument(format!(
            "simplex dimension is capped at {MAX_SIMPLEX_DIM}, got {max_dim}"
        )));
    }
    let n = dist.len();
    // higher-index neighbors, sorted
    let neighbors: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            (i + 1..n)
                .filter(|&j| dist.get(i, j) <= max_diameter)
                .collect()
        })
        .collect();

    let count: usize = (0..n)
        .into_par_iter()
        .map(|root| count_cliques(&neighbors, root, max_dim))
        .sum();
    if count > budget {
        return Err(Error::TooLarge { count, budget });
    }

    let mut simplices: Vec<Simplex> = (0..n)
        .into_par_iter()
        .flat_map_iter(|root| {
            let mut out = Vec::new();
            for_each_clique(dist, &neighbors, root, max_dim, &mut |c, d| {
                out.push(Simplex {
                    vertices: c.to_vec(),
                    diameter: d,
                })
            });
            out
        })
        .collect();
    simplices.par_sort_by(filtration_order);
    Ok(Filtration {
        simplices,
        max_dim,
        max_diameter,
    })
}

/// Index-level pairing produced by the boundary reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pairing {
    /// `(birth simplex, death simplex)` indices into the filtration.
    pub pairs: Vec<(usize, usize)>,
    /// Simplices creating classes that never die within the filtration.
    pub essential: Vec<usize>,
}

/// `out = a + b` over Z/2 for sorted index lists.
fn add_columns(a: &[usize], b: &[usize], out: &mut Vec<usize>) {
    out.clear();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
}

/// Standard Z/2 column reduction of the boundary matrix, highest dimension
/// first, clearing columns whose simplex is already known to be a pivot.
pub fn reduce(filtration: &Filtration) -> Pairing {
    let simplices = &filtration.simplices;
    let total = simplices.len();
    let index = simplex_index(simplices);
    let mut by_dim: Vec<Vec<usize>> = vec![Vec::new(); filtration.max_dim + 1];
    for (i, s) in simplices.iter().enumerate() {
        by_dim[s.dim()].push(i);
    }

    let mut pivot_owner: Vec<usize> = vec![usize::MAX; total];
    let mut reduced: Vec<Vec<usize>> = vec![Vec::new(); total];
    let (mut col, mut scratch) = (Vec::new(), Vec::new());
    let mut cleared = vec![false; total];
    let mut is_death = vec![false; total];
    let mut pairs = Vec::new();

    for dim in (1..=filtration.max_dim).rev() {
        for &j in &by_dim[dim] {
            if cleared[j] {
                continue;
            }
            col.clear();
            col.extend(faces(&simplices[j].vertices).map(|f| index[&simplex_key(&f)]));
            col.sort_unstable();
            while let Some(&low) = col.last() {
                let owner = pivot_owner[low];
                if owner == usize::MAX {
                    break;
                }
                add_columns(&col, &reduced[owner], &mut scratch);
                std::mem::swap(&mut col, &mut scratch);
            }
            if let Some(&low) = col.last() {
                pivot_owner[low] = j;
                cleared[low] = true;
                is_death[j] = true;
                pairs.push((low, j));
                reduced[j] = col.clone();
            }
        }
    }
    let essential = (0..total)
        .filter(|&i| !is_death[i] && pivot_owner[i] == usize::MAX)
        .collect();
    pairs.sort_unstable_by_key(|&(b, d)| (d, b));
    Pairing { pairs, essential }
}

/// Birth/death pairs of one homology dimension.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DimensionDiagram {
    pub k: usize,
    pub pairs: Vec<[f64; 2]>,
    pub infinite: Vec<f64>,
}

impl DimensionDiagram {
    /// Persistence of every class, infinite classes measured up to `end`.
    pub fn persistences(&self, end: f64) -> Vec<f64> {
        self.pairs
            .iter()
            .map(|[b, d]| d - b)
            .chain(self.infinite.iter().map(|b| end - b))
            .collect()
    }
}

/// Persistence diagram; pairs born and dying at the same diameter are dropped.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PersistenceDiagram {
    pub dims: Vec<DimensionDiagram>,
}

impl PersistenceDiagram {
    pub fn from_pairing(filtration: &Filtration, pairing: &Pairing) -> Self {
        let s = &filtration.simplices;
        let mut dims: Vec<DimensionDiagram> = (0..=filtration.max_dim)
            .map(|k| DimensionDiagram {
                k,
                pairs: Vec::new(),
                infinite: Vec::new(),
            })
            .collect();
        for &(b, d) in &pairing.pairs {
            let (birth, death) = (s[b].diameter, s[d].diameter);
            if birth < death {
                dims[s[b].dim()].pairs.push([birth, death]);
            }
        }
        for &e in &pairing.essential {
            dims[s[e].dim()].infinite.push(s[e].diameter);
        }
        PersistenceDiagram { dims }
    }

    /// Keeps dimensions `0..=max_k`.
    pub fn truncated(mut self, max_k: usize) -> Self {
        self.dims.truncate(max_k + 1);
        self
    }

    pub fn dim(&self, k: usize) -> Option<&DimensionDiagram> {
        self.dims.get(k)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("diagram serializes")
    }
}

pub fn persistent_homology(filtration: &Filtration) -> PersistenceDiagram {
    PersistenceDiagram::from_pairing(filtration, &reduce(filtration))
}

/// Betti numbers at scale `r`: classes with `birth <= r < death`.
pub fn betti_in_window(diagram: &PersistenceDiagram, r: f64) -> Vec<usize> {
    diagram
        .dims
        .iter()
        .map(|d| {
            d.pairs.iter().filter(|[b, de]| *b <= r && r < *de).count()
                + d.infinite.iter().filter(|b| **b <= r).count()
        })
        .collect()
}

/// The classes of one dimension that stand out by the largest-gap rule.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Significance {
    pub k: usize,
    /// Number of classes above the largest drop in sorted persistence.
    pub claimed: usize,
    /// Weakest claimed persistence over strongest unclaimed one
    /// (infinite if every class is claimed).
    pub ratio: f64,
    /// Scales at which every claimed class is alive, if any.
    pub window: Option<[f64; 2]>,
}

impl Significance {
    pub fn is_significant(&self) -> bool {
        self.claimed > 0 && self.ratio >= SIGNIFICANCE_RATIO && self.window.is_some()
    }

    /// Midpoint of the common lifetime of the claimed classes.
    pub fn mid_scale(&self) -> Option<f64> {
        self.window.map(|[a, b]| 0.5 * (a + b))
    }
}

/// Applies the largest-gap rule in dimension `k`. Infinite classes count as
/// dying at `end` (normally the filtration's maximal diameter).
pub fn significance(diagram: &PersistenceDiagram, k: usize, end: f64) -> Significance {
    let Some(dd) = diagram.dim(k) else {
        return Significance {
            k,
            claimed: 0,
            ratio: 0.0,
            window: None,
        };
    };
    let mut classes: Vec<(f64, f64)> = dd
        .pairs
        .iter()
        .map(|&[b, d]| (b, d))
        .chain(dd.infinite.iter().map(|&b| (b, end)))
        .collect();
    classes.sort_by(|x, y| {
        (y.1 - y.0)
            .total_cmp(&(x.1 - x.0))
            .then(x.0.total_cmp(&y.0))
    });
    let pers: Vec<f64> = classes.iter().map(|(b, d)| d - b).collect();
    // cut where the sorted persistences drop the most
    let (mut claimed, mut drop) = (0, 0.0);
    for c in 1..=pers.len() {
        let d = pers[c - 1] - pers.get(c).copied().unwrap_or(0.0);
        if d > drop {
            claimed = c;
            drop = d;
        }
    }
    let ratio = match (claimed, pers.get(claimed)) {
        (0, _) => 0.0,
        (_, Some(&next)) if next > 0.0 => pers[claimed - 1] / next,
        _ => f64::INFINITY,
    };
    let window = (claimed > 0)
        .then(|| {
            let lo = classes[..claimed]
                .iter()
                .map(|c| c.0)
                .fold(f64::NEG_INFINITY, f64::max);
            let hi = classes[..claimed]
                .iter()
                .map(|c| c.1)
                .fold(f64::INFINITY, f64::min);
            (lo < hi).then_some([lo, hi])
        })
        .flatten();
    Significance {
        k,
        claimed,
        ratio,
        window,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::TAU;

    fn circle(n: usize) -> Vec<Vec<f64>> {
        (0..n)
            .map(|i| {
                let a = TAU * i as f64 / n as f64;
                vec![a.cos(), a.sin()]
            })
            .collect()
    }

    #[test]
    fn triangle_filtration() {
        let pts = vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.5, 3f64.sqrt() / 2.0]];
        let d = DistanceMatrix::from_fn(3, |i, j| if i == j { 0.0 } else { 1.0 });
        let f = vr_filtration(&d, 2.0, 2, DEFAULT_BUDGET).unwrap();
        assert_eq!(f.count_by_dim(), vec![3, 3, 1]);
        assert!(f.simplices()[3..].iter().all(|s| s.diameter == 1.0));
        let f = vr_filtration(&d, 0.5, 2, DEFAULT_BUDGET).unwrap();
        assert_eq!(f.count_by_dim(), vec![3, 0, 0]);
        let e = DistanceMatrix::from_vectors(&pts);
        assert!((e.get(0, 2) - 1.0).abs() < 1e-15);
        assert!(vr_filtration(&d, 2.0, 4, DEFAULT_BUDGET).is_err());
        assert_eq!(
            vr_filtration(&d, 2.0, 2, 6),
            Err(Error::TooLarge {
                count: 7,
                budget: 6
            })
        );
    }

    #[test]
    fn circle_edge_count_matches_pair_count() {
        let pts = circle(60);
        let d = DistanceMatrix::from_vectors(&pts);
        let f = vr_filtration(&d, 0.5, 2, DEFAULT_BUDGET).unwrap();
        let mut pairs = 0;
        for i in 0..60 {
            for j in i + 1..60 {
                let chord =
                    ((pts[i][0] - pts[j][0]).powi(2) + (pts[i][1] - pts[j][1]).powi(2)).sqrt();
                if chord <= 0.5 {
                    pairs += 1;
                }
            }
        }
        assert_eq!(f.count_by_dim()[1], pairs);
        assert_eq!(pairs, 240);
    }

    #[test]
    fn budget_count_matches_enumeration() {
        let pts: Vec<Vec<f64>> = (0..25)
            .map(|i| {
                vec![
                    (i as f64 * 0.7).sin(),
                    (i as f64 * 1.3).cos(),
                    i as f64 * 0.05,
                ]
            })
            .collect();
        let d = DistanceMatrix::from_vectors(&pts);
        for max_dim in 1..=3 {
            let full = vr_filtration(&d, 1.2, max_dim, usize::MAX).unwrap().len();
            assert_eq!(
                vr_filtration(&d, 1.2, max_dim, full - 1),
                Err(Error::TooLarge {
                    count: full,
                    budget: full - 1
                })
            );
        }
    }

    #[test]
    fn tiny_diagrams() {
        let single = Filtration::new(
            vec![Simplex {
                vertices: vec![0],
                diameter: 0.0,
            }],
            0.0,
        )
        .unwrap();
        let dg = persistent_homology(&single);
        assert_eq!(dg.dims[0].infinite, vec![0.0]);
        assert!(dg.dims[0].pairs.is_empty());

        let d = DistanceMatrix::from_fn(2, |_, _| 0.7);
        let f = vr_filtration(&d, 1.0, 1, DEFAULT_BUDGET).unwrap();
        let dg = persistent_homology(&f);
        assert_eq!(dg.dims[0].infinite, vec![0.0]);
        assert_eq!(dg.dims[0].pairs, vec![[0.0, 0.7]]);
    }

    #[test]
    fn circle_has_one_dominant_loop() {
        let d = DistanceMatrix::from_vectors(&circle(60));
        let f = vr_filtration(&d, 2.0, 2, DEFAULT_BUDGET).unwrap();
        let dg = persistent_homology(&f);
        let sig = significance(&dg, 1, f.max_diameter());
        assert_eq!(sig.claimed, 1);
        assert!(sig.ratio >= SIGNIFICANCE_RATIO);
        let h1 = &dg.dims[1];
        assert_eq!(h1.pairs.len() + h1.infinite.len(), 1);
        let r = sig.mid_scale().unwrap();
        assert_eq!(betti_in_window(&dg, r)[..2], [1, 1]);
    }

    #[test]
    fn two_clusters() {
        let mut pts: Vec<Vec<f64>> = (0..5).map(|i| vec![i as f64 * 0.01, 0.0]).collect();
        pts.extend((0..5).map(|i| vec![10.0 + i as f64 * 0.01, 0.0]));
        let d = DistanceMatrix::from_vectors(&pts);
        let f = vr_filtration(&d, 20.0, 1, DEFAULT_BUDGET).unwrap();
        let dg = persistent_homology(&f);
        assert_eq!(betti_in_window(&dg, 0.5)[0], 2);
        assert_eq!(betti_in_window(&dg, 15.0)[0], 1);
    }

    #[test]
    fn explicit_filtration_validates_faces() {
        let bad = vec![
            Simplex {
                vertices: vec![0],
                diameter: 0.0,
            },
            Simplex {
                vertices: vec![0, 1],
                diameter: 1.0,
            },
        ];
        assert!(Filtration::new(bad, 1.0).is_err());
        let text = vr_filtration(&DistanceMatrix::from_fn(2, |_, _| 0.5), 1.0, 1, 10)
            .unwrap()
            .to_text();
        assert_eq!(text, "0 0\n0 1\n0.5 0 1\n");
    }

    #[test]
    fn diagram_json_shape() {
        let d = DistanceMatrix::from_fn(2, |_, _| 0.5);
        let dg = persistent_homology(&vr_filtration(&d, 1.0, 1, 10).unwrap());
        assert_eq!(
            dg.to_json(),
            r#"{"dims":[{"k":0,"pairs":[[0.0,0.5]],"infinite":[0.0]},{"k":1,"pairs":[],"infinite":[]}]}"#
        );
    }
}
