//! Test-only oracles written independently of the library's Smith form code,
//! and shared generators.
#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use surgery_core::zx::{ZXComplex, ZXMorphism};
use surgery_core::{IntChainComplex, SimplicialComplex, SparseMatrix};

/// Rank over Q by fraction-free row reduction.
pub fn rank_q(rows: usize, cols: usize, entries: &[(usize, usize, i64)]) -> usize {
    let mut m = vec![vec![BigRational::zero(); cols]; rows];
    for &(i, j, v) in entries {
        m[i][j] += BigRational::from_integer(BigInt::from(v));
    }
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(rank, p);
        for r in 0..rows {
            if r != rank && !m[r][c].is_zero() {
                let f = &m[r][c] / &m[rank][c];
                for k in c..cols {
                    let v = &f * &m[rank][k];
                    m[r][k] -= v;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Rank over the prime field F_p.
pub fn rank_mod_p(rows: usize, cols: usize, entries: &[(usize, usize, i64)], p: i64) -> usize {
    let mut m = vec![vec![0i64; cols]; rows];
    for &(i, j, v) in entries {
        m[i][j] = (m[i][j] + v).rem_euclid(p);
    }
    let inv = |a: i64| -> i64 {
        let mut r = 1i64;
        let (mut b, mut e) = (a, p - 2);
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        r
    };
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| m[r][c] != 0) else { continue };
        m.swap(rank, piv);
        let iv = inv(m[rank][c]);
        for r in 0..rows {
            if r != rank && m[r][c] != 0 {
                let f = m[r][c] * iv % p;
                for k in c..cols {
                    m[r][k] = (m[r][k] - f * m[rank][k]).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn entries(c: &IntChainComplex, r: i64) -> (usize, usize, Vec<(usize, usize, i64)>) {
    let d = c.differential(r);
    let e = d.entries().map(|(i, j, v)| (i, j, v.to_i64().unwrap())).collect();
    (d.rows(), d.cols(), e)
}

/// Betti numbers over Q (`p = None`) or F_p in degrees `lo..=hi`.
pub fn betti(c: &IntChainComplex, p: Option<i64>) -> Vec<(i64, usize)> {
    let rank = |r: i64| {
        let (rows, cols, e) = entries(c, r);
        match p {
            None => rank_q(rows, cols, &e),
            Some(p) => rank_mod_p(rows, cols, &e, p),
        }
    };
    c.degrees().map(|r| (r, c.rank(r) - rank(r) - rank(r + 1))).collect()
}

/// Boundary matrix `C_d → C_{d-1}` built straight from vertex lists.
pub fn boundary_entries(x: &SimplicialComplex, d: usize) -> (usize, usize, Vec<(usize, usize, i64)>) {
    let lower = x.simplices(d - 1);
    let upper = x.simplices(d);
    let mut out = Vec::new();
    for (j, s) in upper.iter().enumerate() {
        for i in 0..s.vertices().len() {
            let mut f = s.vertices().to_vec();
            f.remove(i);
            let row = lower.iter().position(|t| t.vertices() == f.as_slice()).unwrap();
            out.push((row, j, if i % 2 == 0 { 1 } else { -1 }));
        }
    }
    (lower.len(), upper.len(), out)
}

/// A random support-legal degree +1 map that strictly raises labels.
pub fn raising_homotopy(c: &ZXComplex, rng: &mut ChaCha8Rng, density: f64) -> BTreeMap<i64, SparseMatrix> {
    let base = c.base();
    let chain = c.chain();
    chain
        .degrees()
        .map(|r| {
            let rows = chain.rank(r + 1);
            let mut triplets = Vec::new();
            for (j, &cl) in c.labels(r).iter().enumerate() {
                for (i, &rl) in c.labels(r + 1).iter().enumerate() {
                    let (col_label, row_label) = (base.simplex(cl), base.simplex(rl));
                    if col_label != row_label && col_label.is_face_of(row_label) && rng.gen_bool(density) {
                        triplets.push((i, j, BigInt::from(rng.gen_range(-3i64..=3))));
                    }
                }
            }
            (r, SparseMatrix::from_triplets(rows, chain.rank(r), triplets))
        })
        .collect()
}

/// `k·id + dh + hd`, a chain map whose diagonal blocks are `k·id`.
pub fn perturbed(c: &ZXComplex, k: i64, h: &BTreeMap<i64, SparseMatrix>) -> ZXMorphism {
    let chain = c.chain();
    let zero = |rows, cols| SparseMatrix::zeros(rows, cols);
    let components = chain
        .degrees()
        .map(|r| {
            let hr = &h[&r];
            let hprev = h.get(&(r - 1)).cloned().unwrap_or_else(|| zero(chain.rank(r), chain.rank(r - 1)));
            let dh = chain.differential(r + 1).mul(hr);
            let hd = hprev.mul(&chain.differential(r));
            let id = SparseMatrix::identity(chain.rank(r)).scale(&BigInt::from(k));
            (r, id.add(&dh).add(&hd))
        })
        .collect();
    ZXMorphism::new(c.clone(), c.clone(), components).expect("perturbation is a legal chain map")
}
