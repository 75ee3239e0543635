//! Smith normal form over the integers.
//!
//! Two entry points: [`smith_normal_form`] computes `U·A·V = D` with explicit
//! unimodular transforms (and their inverses) on dense matrices, and
//! [`invariant_factors`] computes only rank and torsion of a sparse matrix. The
//! latter first eliminates unit pivots sparsely, which on boundary matrices of
//! simplicial complexes removes almost everything, then hands the residue to the
//! dense routine.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::matrix::{IntMatrix, SparseMatrix};

/// Result of a Smith normal form computation: `u * a * v == d`.
#[derive(Clone, Debug)]
pub struct SnfResult {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
}

impl SnfResult {
    /// Nonzero diagonal entries, in divisibility order.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d.get(i, i).clone())
            .take_while(|x| !x.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().len()
    }
}

/// Rank and nontrivial invariant factors of a matrix.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Invariants {
    pub rank: usize,
    /// Invariant factors greater than one, each dividing the next.
    pub torsion: Vec<BigInt>,
}

struct Workspace {
    a: Vec<Vec<BigInt>>,
    rows: usize,
    cols: usize,
    track: bool,
    u: Vec<Vec<BigInt>>,
    u_inv: Vec<Vec<BigInt>>,
    v: Vec<Vec<BigInt>>,
    v_inv: Vec<Vec<BigInt>>,
}

fn identity_rows(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

fn to_matrix(rows: Vec<Vec<BigInt>>, nrows: usize, ncols: usize) -> IntMatrix {
    let mut m = IntMatrix::zeros(nrows, ncols);
    for (i, row) in rows.into_iter().enumerate() {
        for (j, x) in row.into_iter().enumerate() {
            m.set(i, j, x);
        }
    }
    m
}

impl Workspace {
    fn new(a: &IntMatrix, track: bool) -> Self {
        let (rows, cols) = a.shape();
        let dense = (0..rows).map(|i| a.row(i).to_vec()).collect();
        let (u, u_inv, v, v_inv) = if track {
            (identity_rows(rows), identity_rows(rows), identity_rows(cols), identity_rows(cols))
        } else {
            (Vec::new(), Vec::new(), Vec::new(), Vec::new())
        };
        Self { a: dense, rows, cols, track, u, u_inv, v, v_inv }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        if self.track {
            self.u.swap(i, j);
            for row in &mut self.u_inv {
                row.swap(i, j);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in &mut self.a {
            row.swap(i, j);
        }
        if self.track {
            for row in &mut self.v {
                row.swap(i, j);
            }
            self.v_inv.swap(i, j);
        }
    }

    /// row_i += q * row_t
    fn add_row(&mut self, i: usize, t: usize, q: &BigInt) {
        let (src, dst) = pair_mut(&mut self.a, t, i);
        for (d, s) in dst.iter_mut().zip(src.iter()) {
            if !s.is_zero() {
                *d += q * s;
            }
        }
        if self.track {
            let (src, dst) = pair_mut(&mut self.u, t, i);
            for (d, s) in dst.iter_mut().zip(src.iter()) {
                if !s.is_zero() {
                    *d += q * s;
                }
            }
            // inverse: col_t -= q * col_i
            for row in &mut self.u_inv {
                if !row[i].is_zero() {
                    let delta = q * &row[i];
                    row[t] -= delta;
                }
            }
        }
    }

    /// col_j += q * col_t
    fn add_col(&mut self, j: usize, t: usize, q: &BigInt) {
        for row in &mut self.a {
            if !row[t].is_zero() {
                let delta = q * &row[t];
                row[j] += delta;
            }
        }
        if self.track {
            for row in &mut self.v {
                if !row[t].is_zero() {
                    let delta = q * &row[t];
                    row[j] += delta;
                }
            }
            // inverse: row_t -= q * row_j
            let (src, dst) = pair_mut(&mut self.v_inv, j, t);
            for (d, s) in dst.iter_mut().zip(src.iter()) {
                if !s.is_zero() {
                    *d -= q * s;
                }
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in &mut self.a[i] {
            *x = -&*x;
        }
        if self.track {
            for x in &mut self.u[i] {
                *x = -&*x;
            }
            for row in &mut self.u_inv {
                row[i] = -&row[i];
            }
        }
    }

    fn smallest_nonzero(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, &BigInt)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let x = &self.a[i][j];
                if x.is_zero() {
                    continue;
                }
                if best.map_or(true, |(_, _, b)| x.abs() < b.abs()) {
                    if x.is_one() || (-x).is_one() {
                        return Some((i, j));
                    }
                    best = Some((i, j, x));
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }

    fn run(&mut self) {
        let n = self.rows.min(self.cols);
        for t in 0..n {
            loop {
                let Some((pi, pj)) = self.smallest_nonzero(t) else {
                    return;
                };
                self.swap_rows(t, pi);
                self.swap_cols(t, pj);
                let pivot = self.a[t][t].clone();
                let mut clean = true;
                for i in t + 1..self.rows {
                    if self.a[i][t].is_zero() {
                        continue;
                    }
                    let q = -(&self.a[i][t] / &pivot);
                    if !q.is_zero() {
                        self.add_row(i, t, &q);
                    }
                    if !self.a[i][t].is_zero() {
                        clean = false;
                    }
                }
                for j in t + 1..self.cols {
                    if self.a[t][j].is_zero() {
                        continue;
                    }
                    let q = -(&self.a[t][j] / &pivot);
                    if !q.is_zero() {
                        self.add_col(j, t, &q);
                    }
                    if !self.a[t][j].is_zero() {
                        clean = false;
                    }
                }
                if !clean {
                    continue;
                }
                let offender = (t + 1..self.rows)
                    .find(|&i| (t + 1..self.cols).any(|j| !self.a[i][j].is_multiple_of(&pivot)));
                match offender {
                    Some(i) => self.add_row(t, i, &BigInt::one()),
                    None => break,
                }
            }
            if self.a[t][t].is_negative() {
                self.negate_row(t);
            }
        }
    }
}

fn pair_mut<T>(v: &mut [T], src: usize, dst: usize) -> (&T, &mut T) {
    assert_ne!(src, dst);
    if src < dst {
        let (lo, hi) = v.split_at_mut(dst);
        (&lo[src], &mut hi[0])
    } else {
        let (lo, hi) = v.split_at_mut(src);
        (&hi[0], &mut lo[dst])
    }
}

/// Smith normal form with transforms.
pub fn smith_normal_form(a: &IntMatrix) -> SnfResult {
    let mut ws = Workspace::new(a, true);
    ws.run();
    let (r, c) = (ws.rows, ws.cols);
    SnfResult {
        d: to_matrix(ws.a, r, c),
        u: to_matrix(ws.u, r, r),
        u_inv: to_matrix(ws.u_inv, r, r),
        v: to_matrix(ws.v, c, c),
        v_inv: to_matrix(ws.v_inv, c, c),
    }
}

fn dense_invariants(a: &IntMatrix) -> Invariants {
    let mut ws = Workspace::new(a, false);
    ws.run();
    let n = ws.rows.min(ws.cols);
    let diag: Vec<BigInt> = (0..n).map(|i| ws.a[i][i].clone()).take_while(|x| !x.is_zero()).collect();
    Invariants {
        rank: diag.len(),
        torsion: diag.into_iter().filter(|x| !x.is_one()).collect(),
    }
}

/// Rank and torsion invariants of a sparse matrix.
pub fn invariant_factors(m: &SparseMatrix) -> Invariants {
    // Invariant factors are transpose-invariant; work with the columns as sparse rows.
    let mut lines: Vec<Vec<(usize, BigInt)>> = m.columns().map(<[_]>::to_vec).collect();
    let width = m.rows();
    let mut by_slot: Vec<Vec<usize>> = vec![Vec::new(); width];
    for (li, line) in lines.iter().enumerate() {
        for (s, _) in line {
            by_slot[*s].push(li);
        }
    }
    let mut alive = vec![true; lines.len()];
    let mut rank = 0usize;

    loop {
        let mut progressed = false;
        for li in 0..lines.len() {
            if !alive[li] || lines[li].is_empty() {
                continue;
            }
            let pivot = lines[li]
                .iter()
                .filter(|(_, v)| v.abs().is_one())
                .min_by_key(|(s, _)| by_slot[*s].len())
                .map(|(s, v)| (*s, v.clone()));
            let Some((slot, unit)) = pivot else {
                continue;
            };
            progressed = true;
            rank += 1;
            alive[li] = false;
            let pivot_line = std::mem::take(&mut lines[li]);
            let mut others: Vec<usize> = std::mem::take(&mut by_slot[slot]);
            others.sort_unstable();
            others.dedup();
            for other in others {
                if other == li || !alive[other] {
                    continue;
                }
                let Ok(k) = lines[other].binary_search_by_key(&slot, |(s, _)| *s) else {
                    continue;
                };
                let factor = -(&lines[other][k].1 * &unit);
                let before: HashSet<usize> = lines[other].iter().map(|(s, _)| *s).collect();
                lines[other] = axpy(&lines[other], &factor, &pivot_line);
                for (s, _) in &lines[other] {
                    if !before.contains(s) {
                        by_slot[*s].push(other);
                    }
                }
            }
        }
        if !progressed {
            break;
        }
    }

    let rest: Vec<usize> = (0..lines.len()).filter(|&i| alive[i] && !lines[i].is_empty()).collect();
    if rest.is_empty() {
        return Invariants { rank, torsion: Vec::new() };
    }
    let mut slots: Vec<usize> = rest.iter().flat_map(|&i| lines[i].iter().map(|(s, _)| *s)).collect();
    slots.sort_unstable();
    slots.dedup();
    let dense = IntMatrix::from_fn(rest.len(), slots.len(), |i, j| {
        let line = &lines[rest[i]];
        match line.binary_search_by_key(&slots[j], |(s, _)| *s) {
            Ok(k) => line[k].1.clone(),
            Err(_) => BigInt::zero(),
        }
    });
    let tail = dense_invariants(&dense);
    Invariants { rank: rank + tail.rank, torsion: tail.torsion }
}

/// `a + factor * b` on sorted sparse vectors.
fn axpy(a: &[(usize, BigInt)], factor: &BigInt, b: &[(usize, BigInt)]) -> Vec<(usize, BigInt)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, factor * &b[j].1));
            j += 1;
        } else {
            let v = &a[i].1 + factor * &b[j].1;
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// A basis of the integer kernel of `a`: the last columns of `V`.
pub fn kernel_basis(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    kernel_basis_with(&smith_normal_form(a))
}

pub fn kernel_basis_with(snf: &SnfResult) -> Vec<Vec<BigInt>> {
    (snf.rank()..snf.v.cols()).map(|j| snf.v.column(j)).collect()
}

/// Whether `y` lies in the integer column span of `a`.
pub fn in_column_span(a: &IntMatrix, y: &[BigInt]) -> bool {
    in_column_span_with(&smith_normal_form(a), y)
}

/// Column-span membership reusing a precomputed decomposition of `a`.
pub fn in_column_span_with(snf: &SnfResult, y: &[BigInt]) -> bool {
    let z = snf.u.apply(y);
    let diag = snf.diagonal();
    z.iter().enumerate().all(|(i, zi)| match diag.get(i) {
        Some(d) => zi.is_multiple_of(d),
        None => zi.is_zero(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(a: &IntMatrix) -> SnfResult {
        let s = smith_normal_form(a);
        assert_eq!(s.u.mul(a).mul(&s.v), s.d);
        assert!(s.u.is_unimodular() && s.v.is_unimodular());
        assert_eq!(s.u.mul(&s.u_inv), IntMatrix::identity(a.rows()));
        assert_eq!(s.v.mul(&s.v_inv), IntMatrix::identity(a.cols()));
        assert!(s.d.is_diagonal());
        let diag = s.diagonal();
        for w in diag.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        assert!(diag.iter().all(|x| x.is_positive()));
        s
    }

    #[test]
    fn identity_is_fixed() {
        let s = check(&IntMatrix::identity(2));
        assert_eq!(s.d, IntMatrix::identity(2));
    }

    #[test]
    fn two_by_two_example() {
        // gcd of entries is 2 and |det| = 8, so the diagonal is (2, 4).
        let s = check(&IntMatrix::from_rows(&[[2, 4], [6, 8]]));
        assert_eq!(s.diagonal(), vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn zero_matrix() {
        let s = check(&IntMatrix::zeros(3, 2));
        assert!(s.d.is_zero());
        assert_eq!(s.rank(), 0);
    }

    #[test]
    fn empty_matrices() {
        for (r, c) in [(0, 0), (0, 3), (2, 0)] {
            let s = check(&IntMatrix::zeros(r, c));
            assert_eq!(s.d.shape(), (r, c));
        }
    }

    #[test]
    fn divisibility_fixup_needed() {
        // diag(2, 3) is diagonal but not in normal form: expect (1, 6).
        let s = check(&IntMatrix::from_rows(&[[2, 0], [0, 3]]));
        assert_eq!(s.diagonal(), vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn sparse_invariants_match_dense() {
        let a = IntMatrix::from_rows(&[[2, 4, 4], [-6, 6, 12], [10, -4, -16]]);
        let dense = smith_normal_form(&a).diagonal();
        let inv = invariant_factors(&a.to_sparse());
        assert_eq!(inv.rank, dense.len());
        let expected: Vec<BigInt> = dense.into_iter().filter(|x| !x.is_one()).collect();
        assert_eq!(inv.torsion, expected);
    }

    #[test]
    fn span_membership() {
        let a = IntMatrix::from_rows(&[[2], [0]]);
        assert!(in_column_span(&a, &[BigInt::from(4), BigInt::zero()]));
        assert!(!in_column_span(&a, &[BigInt::from(3), BigInt::zero()]));
        assert!(!in_column_span(&a, &[BigInt::zero(), BigInt::one()]));
    }
}
