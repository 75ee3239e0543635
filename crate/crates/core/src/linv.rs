//! Signature, Arf invariant, and the homotopy groups of the L-spectra of Z.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::matrix::{bigint_to_json, IntMatrix};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum FormError {
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("form is not even: diagonal entry {index} is odd")]
    NotEven { index: usize },
    #[error("form is not unimodular (determinant {0})")]
    NotUnimodular(BigInt),
    #[error("signature {0} of an even unimodular form is not divisible by 8")]
    SignatureNotDivisible(i64),
    #[error("bilinear matrix must be square, symmetric, 0/1-valued with zero diagonal")]
    MalformedGf2,
    #[error("rank {0} exceeds the supported maximum of 63")]
    RankTooLarge(usize),
    #[error("associated bilinear form is singular over GF(2)")]
    Singular,
}

/// A symmetric integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricForm {
    matrix: IntMatrix,
}

impl SymmetricForm {
    pub fn new(matrix: IntMatrix) -> Result<Self, FormError> {
        if !matrix.is_symmetric() {
            return Err(FormError::NotSymmetric);
        }
        Ok(Self { matrix })
    }

    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self, FormError> {
        Self::new(IntMatrix::from_rows(rows))
    }

    pub fn empty() -> Self {
        Self { matrix: IntMatrix::zeros(0, 0) }
    }

    /// The E8 lattice form: Cartan matrix of E8, even, unimodular, positive definite.
    pub fn e8() -> Self {
        // Dynkin diagram: chain 0-1-2-3-4-5-6 with 7 attached to 4.
        let edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7)];
        let m = IntMatrix::from_fn(8, 8, |i, j| {
            if i == j {
                BigInt::from(2)
            } else if edges.contains(&(i.min(j), i.max(j))) {
                BigInt::from(-1)
            } else {
                BigInt::zero()
            }
        });
        Self { matrix: m }
    }

    /// `[[0, 1], [1, 0]]`.
    pub fn hyperbolic() -> Self {
        Self::from_rows(&[[0, 1], [1, 0]]).unwrap()
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.matrix.rows()
    }

    pub fn determinant(&self) -> BigInt {
        self.matrix.determinant()
    }

    pub fn is_unimodular(&self) -> bool {
        self.matrix.is_unimodular()
    }

    pub fn is_even(&self) -> bool {
        self.first_odd_diagonal().is_none()
    }

    fn first_odd_diagonal(&self) -> Option<usize> {
        (0..self.rank()).find(|&i| !(self.matrix.get(i, i) % 2u32).is_zero())
    }

    pub fn neg(&self) -> Self {
        Self { matrix: self.matrix.neg() }
    }

    pub fn direct_sum(&self, other: &SymmetricForm) -> Self {
        let (a, b) = (self.rank(), other.rank());
        let m = IntMatrix::from_fn(a + b, a + b, |i, j| match (i < a, j < a) {
            (true, true) => self.matrix.get(i, j).clone(),
            (false, false) => other.matrix.get(i - a, j - a).clone(),
            _ => BigInt::zero(),
        });
        Self { matrix: m }
    }

    /// `Uᵀ F U`.
    pub fn congruent(&self, u: &IntMatrix) -> Self {
        Self { matrix: u.transpose().mul(&self.matrix).mul(u) }
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> =
            (0..self.rank()).map(|i| Value::Array(self.matrix.row(i).iter().map(bigint_to_json).collect())).collect();
        Value::Array(rows)
    }
}

/// Index of the form: positive minus negative entries after exact rational
/// congruence diagonalization. The radical contributes nothing.
pub fn signature(form: &SymmetricForm) -> i64 {
    let n = form.rank();
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| (0..n).map(|j| BigRational::from_integer(form.matrix.get(i, j).clone())).collect())
        .collect();
    let mut sig = 0i64;
    for k in 0..n {
        if a[k][k].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !a[j][j].is_zero()) {
                a.swap(k, j);
                for row in a.iter_mut() {
                    row.swap(k, j);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) {
                // every later diagonal entry is zero, so the new pivot is 2·a[k][j]
                for c in 0..n {
                    let v = a[j][c].clone();
                    a[k][c] += v;
                }
                for row in a.iter_mut() {
                    let v = row[j].clone();
                    row[k] += v;
                }
            } else {
                continue;
            }
        }
        let pivot = a[k][k].clone();
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &pivot;
            for c in k..n {
                let v = &f * &a[k][c];
                a[i][c] -= v;
            }
            for row in a.iter_mut().skip(k) {
                let v = &f * &row[k];
                row[i] -= v;
            }
        }
        sig += if pivot.is_positive() { 1 } else { -1 };
    }
    sig
}

/// `signature / 8` for an even unimodular form.
pub fn quadratic_signature_over_8(form: &SymmetricForm) -> Result<i64, FormError> {
    if let Some(index) = form.first_odd_diagonal() {
        return Err(FormError::NotEven { index });
    }
    if !form.is_unimodular() {
        return Err(FormError::NotUnimodular(form.determinant()));
    }
    let s = signature(form);
    if s % 8 != 0 {
        return Err(FormError::SignatureNotDivisible(s));
    }
    Ok(s / 8)
}

/// A quadratic form over GF(2): an alternating bilinear matrix together with
/// the values of `q` on the basis vectors. Vectors are bit masks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticFormGF2 {
    rank: usize,
    rows: Vec<u64>,
    values: u64,
}

impl QuadraticFormGF2 {
    pub fn new(bilinear: &[Vec<u8>], values: &[u8]) -> Result<Self, FormError> {
        let r = bilinear.len();
        if r > 63 {
            return Err(FormError::RankTooLarge(r));
        }
        if values.len() != r || bilinear.iter().any(|row| row.len() != r) {
            return Err(FormError::MalformedGf2);
        }
        for i in 0..r {
            for j in 0..r {
                let x = bilinear[i][j];
                if x > 1 || x != bilinear[j][i] || (i == j && x != 0) {
                    return Err(FormError::MalformedGf2);
                }
            }
        }
        if values.iter().any(|&v| v > 1) {
            return Err(FormError::MalformedGf2);
        }
        let rows = bilinear
            .iter()
            .map(|row| row.iter().enumerate().fold(0u64, |acc, (j, &x)| acc | (u64::from(x) << j)))
            .collect();
        let values = values.iter().enumerate().fold(0u64, |acc, (i, &x)| acc | (u64::from(x) << i));
        Ok(Self { rank: r, rows, values })
    }

    /// `q(x, y) = xy` on GF(2)².
    pub fn hyperbolic() -> Self {
        Self::new(&[vec![0, 1], vec![1, 0]], &[0, 0]).unwrap()
    }

    /// `q(x, y) = x² + xy + y²`.
    pub fn anisotropic() -> Self {
        Self::new(&[vec![0, 1], vec![1, 0]], &[1, 1]).unwrap()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn orthogonal_sum(&self, other: &QuadraticFormGF2) -> Self {
        let shift = self.rank;
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().map(|r| r << shift));
        Self { rank: self.rank + other.rank, rows, values: self.values | (other.values << shift) }
    }

    /// `λ(x, y)`.
    pub fn bilinear(&self, x: u64, y: u64) -> u8 {
        let mut acc = 0u32;
        for i in 0..self.rank {
            if x >> i & 1 == 1 {
                acc += (self.rows[i] & y).count_ones();
            }
        }
        (acc % 2) as u8
    }

    /// `q(x) = Σ x_i q(e_i) + Σ_{i<j} x_i x_j λ(e_i, e_j)`.
    pub fn eval(&self, x: u64) -> u8 {
        let mut acc = (x & self.values).count_ones();
        for i in 0..self.rank {
            if x >> i & 1 == 1 {
                let above = !((1u64 << (i + 1)) - 1);
                acc += (self.rows[i] & x & above).count_ones();
            }
        }
        (acc % 2) as u8
    }

    pub fn is_nonsingular(&self) -> bool {
        let mut rows = self.rows.clone();
        let mut rank = 0;
        for bit in 0..self.rank {
            let Some(p) = (rank..rows.len()).find(|&i| rows[i] >> bit & 1 == 1) else {
                continue;
            };
            rows.swap(rank, p);
            for i in 0..rows.len() {
                if i != rank && rows[i] >> bit & 1 == 1 {
                    rows[i] ^= rows[rank];
                }
            }
            rank += 1;
        }
        rank == self.rank
    }
}

impl fmt::Display for QuadraticFormGF2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.rows.iter().map(|r| format!("{r:0w$b}", w = self.rank)).collect();
        write!(f, "q={:0w$b} λ=[{}]", self.values, rows.join(","), w = self.rank)
    }
}

/// Arf invariant by majority vote: 0 when `q` vanishes on more than half of
/// all vectors, 1 otherwise. Exhaustive, so limited to small ranks.
pub fn arf(q: &QuadraticFormGF2) -> Result<u8, FormError> {
    if !q.is_nonsingular() {
        return Err(FormError::Singular);
    }
    if q.rank > 30 {
        return Err(FormError::RankTooLarge(q.rank));
    }
    let total = 1u64 << q.rank;
    let zeros = (0..total).filter(|&x| q.eval(x) == 0).count() as u64;
    Ok(if 2 * zeros > total { 0 } else { 1 })
}

/// Arf invariant as `Σ q(a_i) q(b_i)` over a symplectic basis.
pub fn arf_symplectic(q: &QuadraticFormGF2) -> Result<u8, FormError> {
    if !q.is_nonsingular() {
        return Err(FormError::Singular);
    }
    let mut pool: Vec<u64> = (0..q.rank).map(|i| 1u64 << i).collect();
    let mut acc = 0u8;
    while let Some(a) = pool.pop() {
        let pos = pool.iter().position(|&w| q.bilinear(a, w) == 1).ok_or(FormError::Singular)?;
        let b = pool.swap_remove(pos);
        for w in pool.iter_mut() {
            let (wa, wb) = (q.bilinear(*w, a), q.bilinear(*w, b));
            if wb == 1 {
                *w ^= a;
            }
            if wa == 1 {
                *w ^= b;
            }
        }
        acc ^= q.eval(a) & q.eval(b);
    }
    Ok(acc)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LFlavor {
    Quadratic,
    Symmetric,
    Hyperquadratic,
}

impl LFlavor {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "quadratic" => Some(Self::Quadratic),
            "symmetric" => Some(Self::Symmetric),
            "hyperquadratic" => Some(Self::Hyperquadratic),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Quadratic => "quadratic",
            Self::Symmetric => "symmetric",
            Self::Hyperquadratic => "hyperquadratic",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum LGroup {
    #[serde(rename = "0")]
    Zero,
    #[serde(rename = "Z")]
    Z,
    #[serde(rename = "Z2")]
    Z2,
    #[serde(rename = "Z8")]
    Z8,
}

impl fmt::Display for LGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Zero => "0",
            Self::Z => "Z",
            Self::Z2 => "Z2",
            Self::Z8 => "Z8",
        })
    }
}

/// One entry of an L-group table: `π_n` of the given spectrum of Z.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LGroupDescriptor {
    pub flavor: LFlavor,
    pub n: u32,
    pub group: LGroup,
    /// The invariant detecting a generator, when one is named.
    pub generator_invariant: Option<&'static str>,
}

impl LGroupDescriptor {
    pub fn to_json(&self) -> Value {
        json!({
            "flavor": self.flavor.name(),
            "n": self.n,
            "group": self.group.to_string(),
            "generator_invariant": self.generator_invariant,
        })
    }
}

/// `π_n` of the 1-connective quadratic, the symmetric, or the hyperquadratic
/// L-spectrum of Z.
pub fn l_group_table(flavor: LFlavor, n: u32) -> LGroupDescriptor {
    let (group, generator_invariant) = match flavor {
        LFlavor::Quadratic => match n % 4 {
            _ if n == 0 => (LGroup::Zero, None),
            0 => (LGroup::Z, Some("signature/8")),
            2 => (LGroup::Z2, Some("Arf invariant")),
            _ => (LGroup::Zero, None),
        },
        LFlavor::Symmetric => match n % 4 {
            0 => (LGroup::Z, Some("signature")),
            1 => (LGroup::Z2, Some("deRham invariant")),
            _ => (LGroup::Zero, None),
        },
        LFlavor::Hyperquadratic => match n % 4 {
            _ if n == 0 => (LGroup::Z, None),
            0 => (LGroup::Z8, None),
            2 | 3 => (LGroup::Z2, None),
            _ => (LGroup::Zero, None),
        },
    };
    LGroupDescriptor { flavor, n, group, generator_invariant }
}
