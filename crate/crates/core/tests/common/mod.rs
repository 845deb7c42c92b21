//! Brute-force persistent Betti numbers over GF(2), shared by test targets.
#![allow(dead_code)]

use trifold::homology::{persistent_homology, Filtration, Simplex};

/// Rank over GF(2) of a matrix given as column bitmasks.
pub fn gf2_rank(mut cols: Vec<u64>) -> usize {
    let mut rank = 0;
    for bit in 0..64 {
        let Some(p) = cols.iter().position(|c| c >> bit & 1 == 1) else {
            continue;
        };
        let pivot = cols.swap_remove(p);
        for c in cols.iter_mut() {
            if *c >> bit & 1 == 1 {
                *c ^= pivot;
            }
        }
        rank += 1;
    }
    rank
}

/// Boundary of the (k+1)-simplices present at scale `r`, as bitmasks over
/// the k-simplices (indexed by position in `faces_k`), optionally keeping only
/// rows not present at scale `row_filter`.
fn boundary(f: &Filtration, k: usize, r: f64, row_filter: Option<f64>) -> Vec<u64> {
    let faces_k: Vec<&Simplex> = f.simplices().iter().filter(|s| s.dim() == k).collect();
    assert!(faces_k.len() <= 64);
    f.simplices()
        .iter()
        .filter(|s| s.dim() == k + 1 && s.diameter <= r)
        .map(|s| {
            let mut mask = 0u64;
            for skip in 0..s.vertices.len() {
                let face: Vec<usize> = s
                    .vertices
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, &v)| v)
                    .collect();
                let idx = faces_k.iter().position(|t| t.vertices == face).unwrap();
                if row_filter.is_none_or(|rs| faces_k[idx].diameter > rs) {
                    mask |= 1 << idx;
                }
            }
            mask
        })
        .collect()
}

/// dim of the image of H_k(K_i) in H_k(K_j).
pub fn persistent_betti(f: &Filtration, k: usize, ri: f64, rj: f64) -> usize {
    let chains = f
        .simplices()
        .iter()
        .filter(|s| s.dim() == k && s.diameter <= ri)
        .count();
    let cycles = chains
        - if k == 0 {
            0
        } else {
            gf2_rank(boundary(f, k - 1, ri, None))
        };
    let bounding = if k == f.max_dim() {
        0
    } else {
        gf2_rank(boundary(f, k, rj, None)) - gf2_rank(boundary(f, k, rj, Some(ri)))
    };
    cycles - bounding
}

pub fn diagram_count(f: &Filtration, k: usize, ri: f64, rj: f64) -> usize {
    let dg = persistent_homology(f);
    let d = &dg.dims[k];
    d.pairs
        .iter()
        .filter(|[b, de]| *b <= ri && rj < *de)
        .count()
        + d.infinite.iter().filter(|b| **b <= ri).count()
}

/// Compares the diagram with the oracle at every pair of scales; returns the
/// first disagreement.
pub fn check_against_oracle(f: &Filtration) -> Result<(), String> {
    let mut scales: Vec<f64> = f.simplices().iter().map(|s| s.diameter).collect();
    scales.dedup();
    for (a, &ri) in scales.iter().enumerate() {
        for &rj in &scales[a..] {
            for k in 0..=f.max_dim() {
                let (got, want) = (diagram_count(f, k, ri, rj), persistent_betti(f, k, ri, rj));
                if got != want {
                    return Err(format!(
                        "k={k} ri={ri} rj={rj}: diagram {got}, oracle {want}"
                    ));
                }
            }
        }
    }
    Ok(())
}
