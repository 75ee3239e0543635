//! Integer matrices over arbitrary-precision integers.
//!
//! [`IntMatrix`] is the dense row-major type used by Smith normal form and the
//! small exact computations (intersection forms, transforms). [`SparseMatrix`]
//! stores one sorted sparse vector per column and carries every differential of
//! every chain complex in the crate; boundary matrices of subdivided complexes
//! are far too large to hold densely.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::Value;

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Builds a matrix from machine-integer rows. Panics on ragged input.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let ncols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut m = Self::zeros(rows.len(), ncols);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            assert_eq!(row.len(), ncols, "ragged row {i}");
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, BigInt::from(x));
            }
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: BigInt) {
        self.data[i * self.cols + j] = x;
    }

    pub(crate) fn get_mut(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// True when every off-diagonal entry vanishes.
    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn neg(&self) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| -x).collect() }
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        *out.get_mut(i, j) += a * b;
                    }
                }
            }
        }
        out
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    /// Determinant by fraction-free (Bareiss) elimination. Square matrices only.
    pub fn determinant(&self) -> BigInt {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a: Vec<Vec<BigInt>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                    a[i][j] = v;
                }
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }

    pub fn is_unimodular(&self) -> bool {
        self.is_square() && self.determinant().abs().is_one()
    }

    pub fn to_sparse(&self) -> SparseMatrix {
        let columns = (0..self.cols)
            .map(|j| {
                (0..self.rows)
                    .filter(|&i| !self.get(i, j).is_zero())
                    .map(|i| (i, self.get(i, j).clone()))
                    .collect()
            })
            .collect();
        SparseMatrix { rows: self.rows, cols: self.cols, columns }
    }

    /// Row-major nested JSON arrays.
    pub fn to_json(&self) -> Value {
        Value::Array(
            (0..self.rows)
                .map(|i| Value::Array(self.row(i).iter().map(bigint_to_json).collect()))
                .collect(),
        )
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// JSON number when the value fits in an `i64`, decimal string otherwise.
pub fn bigint_to_json(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => Value::from(v),
        None => Value::String(x.to_string()),
    }
}

/// Column-compressed sparse integer matrix.
///
/// Each column is a list of `(row, value)` pairs sorted by row with no stored
/// zeros, so structural equality is value equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    columns: Vec<Vec<(usize, BigInt)>>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, columns: vec![Vec::new(); cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self { rows: n, cols: n, columns: (0..n).map(|i| vec![(i, BigInt::one())]).collect() }
    }

    /// Builds from per-column entry lists. Entries may be unsorted and may
    /// repeat a row; repeats are summed and zeros dropped.
    pub fn from_columns(rows: usize, columns: Vec<Vec<(usize, BigInt)>>) -> Self {
        let cols = columns.len();
        let columns = columns.into_iter().map(|c| normalize(c, rows)).collect();
        Self { rows, cols, columns }
    }

    /// Builds from `(row, col, value)` triplets, summing duplicates.
    pub fn from_triplets(rows: usize, cols: usize, triplets: impl IntoIterator<Item = (usize, usize, BigInt)>) -> Self {
        let mut columns = vec![Vec::new(); cols];
        for (i, j, v) in triplets {
            assert!(j < cols, "column {j} out of range {cols}");
            columns[j].push((i, v));
        }
        Self::from_columns(rows, columns)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn column(&self, j: usize) -> &[(usize, BigInt)] {
        &self.columns[j]
    }

    pub fn columns(&self) -> impl Iterator<Item = &[(usize, BigInt)]> {
        self.columns.iter().map(Vec::as_slice)
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn get(&self, i: usize, j: usize) -> BigInt {
        match self.columns[j].binary_search_by_key(&i, |(r, _)| *r) {
            Ok(k) => self.columns[j][k].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    /// Iterates over all stored `(row, col, value)` entries, column by column.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(j, col)| col.iter().map(move |(i, v)| (*i, j, v)))
    }

    pub fn transpose(&self) -> Self {
        let mut columns = vec![Vec::new(); self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, v) in col {
                columns[*i].push((j, v.clone()));
            }
        }
        Self { rows: self.cols, cols: self.rows, columns }
    }

    pub fn scale(&self, factor: &BigInt) -> Self {
        if factor.is_zero() {
            return Self::zeros(self.rows, self.cols);
        }
        let columns = self
            .columns
            .iter()
            .map(|c| c.iter().map(|(i, v)| (*i, v * factor)).collect())
            .collect();
        Self { rows: self.rows, cols: self.cols, columns }
    }

    pub fn neg(&self) -> Self {
        let columns = self
            .columns
            .iter()
            .map(|c| c.iter().map(|(i, v)| (*i, -v)).collect())
            .collect();
        Self { rows: self.rows, cols: self.cols, columns }
    }

    pub fn add(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.shape(), other.shape(), "shape mismatch in sum");
        let columns = self
            .columns
            .iter()
            .zip(&other.columns)
            .map(|(a, b)| {
                let mut c: Vec<(usize, BigInt)> = a.iter().cloned().chain(b.iter().cloned()).collect();
                c.sort_by_key(|(i, _)| *i);
                normalize(c, self.rows)
            })
            .collect();
        SparseMatrix { rows: self.rows, cols: self.cols, columns }
    }

    pub fn sub(&self, other: &SparseMatrix) -> SparseMatrix {
        self.add(&other.neg())
    }

    /// Applies the matrix to a sparse vector given as `(index, value)` pairs.
    pub fn apply_sparse(&self, v: &[(usize, BigInt)]) -> Vec<(usize, BigInt)> {
        let mut acc: Vec<(usize, BigInt)> = Vec::new();
        for (j, x) in v {
            for (i, a) in &self.columns[*j] {
                acc.push((*i, a * x));
            }
        }
        normalize(acc, self.rows)
    }

    /// Product `self * other`.
    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let columns = other.columns.iter().map(|c| self.apply_sparse(c)).collect();
        SparseMatrix { rows: self.rows, cols: other.cols, columns }
    }

    /// Restriction to the given columns, renumbering rows through `row_pos`
    /// (`None` drops the row). `new_rows` is the row count of the result.
    pub fn restrict(&self, row_pos: &[Option<usize>], new_rows: usize, cols: &[usize]) -> SparseMatrix {
        let columns = cols
            .iter()
            .map(|&j| {
                let mut c: Vec<(usize, BigInt)> = self.columns[j]
                    .iter()
                    .filter_map(|(i, v)| row_pos[*i].map(|p| (p, v.clone())))
                    .collect();
                c.sort_by_key(|(i, _)| *i);
                c
            })
            .collect();
        SparseMatrix { rows: new_rows, cols: cols.len(), columns }
    }

    pub fn to_dense(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rows, self.cols);
        for (i, j, v) in self.entries() {
            m.set(i, j, v.clone());
        }
        m
    }

    pub fn to_json(&self) -> Value {
        self.to_dense().to_json()
    }
}

fn normalize(mut entries: Vec<(usize, BigInt)>, rows: usize) -> Vec<(usize, BigInt)> {
    entries.sort_by_key(|(i, _)| *i);
    let mut out: Vec<(usize, BigInt)> = Vec::with_capacity(entries.len());
    for (i, v) in entries {
        assert!(i < rows, "row {i} out of range {rows}");
        match out.last_mut() {
            Some((j, acc)) if *j == i => *acc += v,
            _ => out.push((i, v)),
        }
    }
    out.retain(|(_, v)| !v.is_zero());
    out
}
