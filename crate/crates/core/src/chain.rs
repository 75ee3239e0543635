//! Bounded chain complexes of based free abelian groups.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};
use thiserror::Error;

use crate::matrix::{bigint_to_json, SparseMatrix};
use crate::snf::{in_column_span_with, invariant_factors, kernel_basis, smith_normal_form, Invariants};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ChainError {
    #[error("differential in degree {degree} has shape {found:?}, expected {expected:?}")]
    ShapeMismatch { degree: i64, expected: (usize, usize), found: (usize, usize) },
    #[error("d∘d is nonzero from degree {degree}")]
    NotAComplex { degree: i64 },
    #[error("map fails the chain-map identity in degree {degree}")]
    NotAChainMap { degree: i64 },
    #[error("map component in degree {degree} has shape {found:?}, expected {expected:?}")]
    MapShapeMismatch { degree: i64, expected: (usize, usize), found: (usize, usize) },
}

/// A bounded chain complex of based free Z-modules.
///
/// Degrees run over `bottom ..= bottom + ranks.len() - 1`; outside that range
/// every group is zero. `diffs[i]` is the differential leaving degree
/// `bottom + i`, so `diffs[0]` always has zero rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntChainComplex {
    bottom: i64,
    ranks: Vec<usize>,
    diffs: Vec<SparseMatrix>,
}

impl IntChainComplex {
    /// Builds a complex from ranks starting at `bottom` and the differentials
    /// leaving each degree. Shapes are checked; `d∘d = 0` is not (see
    /// [`IntChainComplex::validate`]).
    pub fn new(bottom: i64, ranks: Vec<usize>, diffs: Vec<SparseMatrix>) -> Result<Self, ChainError> {
        assert_eq!(ranks.len(), diffs.len(), "one differential per degree");
        for (i, d) in diffs.iter().enumerate() {
            let below = if i == 0 { 0 } else { ranks[i - 1] };
            let expected = (below, ranks[i]);
            if d.shape() != expected {
                return Err(ChainError::ShapeMismatch { degree: bottom + i as i64, expected, found: d.shape() });
            }
        }
        Ok(Self { bottom, ranks, diffs })
    }

    /// Builds a complex from a map `degree -> differential leaving that degree`.
    /// Missing degrees between the extremes get rank 0.
    pub fn from_differentials(diffs: BTreeMap<i64, SparseMatrix>) -> Result<Self, ChainError> {
        let (Some(&lo), Some(&hi)) = (diffs.keys().next(), diffs.keys().next_back()) else {
            return Ok(Self::zero());
        };
        let ranks: Vec<usize> = (lo..=hi).map(|r| diffs.get(&r).map_or(0, SparseMatrix::cols)).collect();
        let mats = (lo..=hi)
            .map(|r| {
                let below = if r == lo { 0 } else { ranks[(r - 1 - lo) as usize] };
                diffs.get(&r).cloned().unwrap_or_else(|| SparseMatrix::zeros(below, 0))
            })
            .collect();
        Self::new(lo, ranks, mats)
    }

    /// The zero complex.
    pub fn zero() -> Self {
        Self { bottom: 0, ranks: Vec::new(), diffs: Vec::new() }
    }

    /// `Z` in a single degree.
    pub fn unit(degree: i64) -> Self {
        Self { bottom: degree, ranks: vec![1], diffs: vec![SparseMatrix::zeros(0, 1)] }
    }

    pub fn bottom(&self) -> i64 {
        self.bottom
    }

    pub fn top(&self) -> i64 {
        self.bottom + self.ranks.len() as i64 - 1
    }

    pub fn degrees(&self) -> RangeInclusive<i64> {
        self.bottom..=self.top()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.iter().all(|&r| r == 0)
    }

    pub fn rank(&self, degree: i64) -> usize {
        self.slot(degree).map_or(0, |i| self.ranks[i])
    }

    pub fn total_rank(&self) -> usize {
        self.ranks.iter().sum()
    }

    fn slot(&self, degree: i64) -> Option<usize> {
        let i = degree - self.bottom;
        (i >= 0 && (i as usize) < self.ranks.len()).then_some(i as usize)
    }

    /// Differential leaving `degree`, shape `rank(degree-1) x rank(degree)`.
    pub fn differential(&self, degree: i64) -> SparseMatrix {
        match self.slot(degree) {
            Some(i) => self.diffs[i].clone(),
            None => SparseMatrix::zeros(self.rank(degree - 1), self.rank(degree)),
        }
    }

    pub(crate) fn differential_ref(&self, degree: i64) -> Option<&SparseMatrix> {
        self.slot(degree).map(|i| &self.diffs[i])
    }

    /// Euler characteristic from ranks.
    pub fn euler_characteristic(&self) -> i64 {
        self.degrees()
            .map(|r| if r.rem_euclid(2) == 0 { self.rank(r) as i64 } else { -(self.rank(r) as i64) })
            .sum()
    }

    /// Checks `d∘d = 0` in every degree.
    pub fn validate(&self) -> Result<(), ChainError> {
        let bad = self.degrees().collect::<Vec<_>>().into_par_iter().find_first(|&r| {
            let (Some(d1), Some(d0)) = (self.differential_ref(r), self.differential_ref(r - 1)) else {
                return false;
            };
            !d0.mul(d1).is_zero()
        });
        match bad {
            Some(degree) => Err(ChainError::NotAComplex { degree }),
            None => Ok(()),
        }
    }

    /// Integral homology: Betti numbers and torsion coefficients per degree.
    pub fn homology(&self) -> Result<HomologySummary, ChainError> {
        self.validate()?;
        let invariants: Vec<Invariants> = self.diffs.par_iter().map(invariant_factors).collect();
        let mut groups = BTreeMap::new();
        for r in self.degrees() {
            let i = (r - self.bottom) as usize;
            let outgoing = invariants[i].rank;
            let incoming = invariants.get(i + 1).cloned().unwrap_or_default();
            let betti = self.ranks[i] - outgoing - incoming.rank;
            let group = HomologyGroup { betti, torsion: incoming.torsion };
            if !group.is_zero() {
                groups.insert(r, group);
            }
        }
        Ok(HomologySummary { groups })
    }

    /// Homology vanishes in every degree. For bounded free complexes over Z
    /// this is equivalent to contractibility.
    pub fn is_contractible(&self) -> Result<bool, ChainError> {
        Ok(self.homology()?.is_zero())
    }

    /// The dual complex `C^{n-*}`: degree `r` holds the dual of `C_{n-r}` and the
    /// differential leaving degree `r` is `(-1)^r` times the transpose of
    /// `d_{n-r+1}`.
    pub fn dualize(&self, n: i64) -> IntChainComplex {
        if self.ranks.is_empty() {
            return Self::zero();
        }
        let bottom = n - self.top();
        let top = n - self.bottom;
        let ranks: Vec<usize> = (bottom..=top).map(|r| self.rank(n - r)).collect();
        let diffs = (bottom..=top)
            .map(|r| {
                let t = self.differential(n - r + 1).transpose();
                if r.rem_euclid(2) == 1 { t.neg() } else { t }
            })
            .collect();
        Self { bottom, ranks, diffs }
    }

    /// Degree shift: `(C_{*+k})_r = C_{r+k}`.
    pub fn shift(&self, k: i64) -> IntChainComplex {
        Self { bottom: self.bottom - k, ranks: self.ranks.clone(), diffs: self.diffs.clone() }
    }

    pub fn direct_sum(&self, other: &IntChainComplex) -> IntChainComplex {
        if self.ranks.is_empty() {
            return other.clone();
        }
        if other.ranks.is_empty() {
            return self.clone();
        }
        let lo = self.bottom.min(other.bottom);
        let hi = self.top().max(other.top());
        let ranks: Vec<usize> = (lo..=hi).map(|r| self.rank(r) + other.rank(r)).collect();
        let diffs = (lo..=hi)
            .map(|r| block_diagonal(&self.differential(r), &other.differential(r)))
            .collect();
        Self { bottom: lo, ranks, diffs }
    }

    /// Debug dump: ranks and dense differentials.
    pub fn to_json(&self) -> Value {
        let degrees: Vec<Value> = self
            .degrees()
            .map(|r| json!({ "degree": r, "rank": self.rank(r), "differential": self.differential(r).to_json() }))
            .collect();
        json!({ "bottom": self.bottom, "degrees": degrees })
    }
}

pub(crate) fn block_diagonal(a: &SparseMatrix, b: &SparseMatrix) -> SparseMatrix {
    let rows = a.rows() + b.rows();
    let mut cols: Vec<Vec<(usize, BigInt)>> = a.columns().map(<[_]>::to_vec).collect();
    cols.extend(b.columns().map(|c| c.iter().map(|(i, v)| (i + a.rows(), v.clone())).collect()));
    SparseMatrix::from_columns(rows, cols)
}

/// A degree-0 chain map between integer chain complexes.
#[derive(Clone, Debug)]
pub struct ChainMap {
    source: IntChainComplex,
    target: IntChainComplex,
    components: BTreeMap<i64, SparseMatrix>,
}

impl ChainMap {
    /// Assembles a chain map from its components and checks shapes and the
    /// chain-map identity `d f = f d`.
    pub fn new(
        source: IntChainComplex,
        target: IntChainComplex,
        components: BTreeMap<i64, SparseMatrix>,
    ) -> Result<Self, ChainError> {
        let map = Self::new_unchecked(source, target, components)?;
        map.verify()?;
        Ok(map)
    }

    /// Shape-checked construction without the chain-map identity check.
    pub fn new_unchecked(
        source: IntChainComplex,
        target: IntChainComplex,
        mut components: BTreeMap<i64, SparseMatrix>,
    ) -> Result<Self, ChainError> {
        for (&degree, m) in &components {
            let expected = (target.rank(degree), source.rank(degree));
            if m.shape() != expected {
                return Err(ChainError::MapShapeMismatch { degree, expected, found: m.shape() });
            }
        }
        components.retain(|_, m| !m.is_zero());
        Ok(Self { source, target, components })
    }

    pub fn identity(c: &IntChainComplex) -> Self {
        let components = c.degrees().map(|r| (r, SparseMatrix::identity(c.rank(r)))).collect();
        Self { source: c.clone(), target: c.clone(), components }
    }

    pub fn zero(source: &IntChainComplex, target: &IntChainComplex) -> Self {
        Self { source: source.clone(), target: target.clone(), components: BTreeMap::new() }
    }

    pub fn source(&self) -> &IntChainComplex {
        &self.source
    }

    pub fn target(&self) -> &IntChainComplex {
        &self.target
    }

    pub fn component(&self, degree: i64) -> SparseMatrix {
        self.components
            .get(&degree)
            .cloned()
            .unwrap_or_else(|| SparseMatrix::zeros(self.target.rank(degree), self.source.rank(degree)))
    }

    pub fn scale(&self, factor: i64) -> ChainMap {
        let f = BigInt::from(factor);
        let components = self.components.iter().map(|(&r, m)| (r, m.scale(&f))).collect();
        Self { source: self.source.clone(), target: self.target.clone(), components }
    }

    /// Checks `d_target ∘ f_r = f_{r-1} ∘ d_source` in every degree.
    pub fn verify(&self) -> Result<(), ChainError> {
        let lo = self.source.bottom().min(self.target.bottom());
        let hi = self.source.top().max(self.target.top()) + 1;
        for r in lo..=hi {
            let left = self.target.differential(r).mul(&self.component(r));
            let right = self.component(r - 1).mul(&self.source.differential(r));
            if left != right {
                return Err(ChainError::NotAChainMap { degree: r });
            }
        }
        Ok(())
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &ChainMap) -> ChainMap {
        assert_eq!(first.target.ranks_signature(), self.source.ranks_signature(), "composable maps");
        let components = first
            .components
            .iter()
            .map(|(&r, m)| (r, self.component(r).mul(m)))
            .collect();
        ChainMap::new_unchecked(first.source.clone(), self.target.clone(), components)
            .expect("composite shapes are consistent")
    }

    pub fn direct_sum(&self, other: &ChainMap) -> ChainMap {
        let source = self.source.direct_sum(&other.source);
        let target = self.target.direct_sum(&other.target);
        let components = source
            .degrees()
            .map(|r| (r, block_diagonal(&self.component(r), &other.component(r))))
            .collect();
        ChainMap::new_unchecked(source, target, components).expect("block shapes are consistent")
    }

    /// The mapping cone: `cone_r = target_r ⊕ source_{r-1}` with differential
    /// `[[d_target, f], [0, -d_source]]`. Target basis elements come first.
    pub fn mapping_cone(&self) -> IntChainComplex {
        let layout = ConeLayout::new(&self.source, &self.target);
        let diffs = layout
            .degrees()
            .map(|r| cone_differential(&self.target, &self.source, r, |d| self.component(d)))
            .collect();
        IntChainComplex::new(layout.bottom, layout.ranks, diffs).expect("cone shapes are consistent")
    }

    /// Whether `self` and `other` induce the same map on homology: the
    /// difference sends every cycle to a boundary. Uses dense Smith forms, so
    /// it is meant for small complexes.
    pub fn agrees_on_homology(&self, other: &ChainMap) -> bool {
        assert_eq!(self.source.ranks_signature(), other.source.ranks_signature(), "same source");
        assert_eq!(self.target.ranks_signature(), other.target.ranks_signature(), "same target");
        self.source.degrees().all(|r| {
            let diff = self.component(r).sub(&other.component(r));
            if diff.is_zero() {
                return true;
            }
            let cycles = kernel_basis(&self.source.differential(r).to_dense());
            let boundaries = smith_normal_form(&self.target.differential(r + 1).to_dense());
            cycles.iter().all(|z| {
                let sparse: Vec<(usize, BigInt)> =
                    z.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(i, v)| (i, v.clone())).collect();
                let mut y = vec![BigInt::zero(); self.target.rank(r)];
                for (i, v) in diff.apply_sparse(&sparse) {
                    y[i] = v;
                }
                in_column_span_with(&boundaries, &y)
            })
        })
    }

    /// Sends degree `r` to the matrix of the map on chains, for callers that
    /// need the homology-level behaviour (e.g. comparing two maps).
    pub fn components(&self) -> &BTreeMap<i64, SparseMatrix> {
        &self.components
    }
}

impl IntChainComplex {
    fn ranks_signature(&self) -> Vec<(i64, usize)> {
        self.degrees().map(|r| (r, self.rank(r))).filter(|(_, k)| *k > 0).collect()
    }
}

pub(crate) struct ConeLayout {
    pub bottom: i64,
    pub ranks: Vec<usize>,
}

impl ConeLayout {
    pub fn new(source: &IntChainComplex, target: &IntChainComplex) -> Self {
        let (lo, hi) = match (source.ranks.is_empty(), target.ranks.is_empty()) {
            (true, true) => return Self { bottom: 0, ranks: Vec::new() },
            (true, false) => (target.bottom(), target.top()),
            (false, true) => (source.bottom() + 1, source.top() + 1),
            (false, false) => (
                target.bottom().min(source.bottom() + 1),
                target.top().max(source.top() + 1),
            ),
        };
        let ranks = (lo..=hi).map(|r| target.rank(r) + source.rank(r - 1)).collect();
        Self { bottom: lo, ranks }
    }

    pub fn degrees(&self) -> RangeInclusive<i64> {
        self.bottom..=self.bottom + self.ranks.len() as i64 - 1
    }
}

pub(crate) fn cone_differential(
    target: &IntChainComplex,
    source: &IntChainComplex,
    r: i64,
    map: impl Fn(i64) -> SparseMatrix,
) -> SparseMatrix {
    let t_below = target.rank(r - 1);
    let rows = t_below + source.rank(r - 2);
    let dt = target.differential(r);
    let ds = source.differential(r - 1);
    let f = map(r - 1);
    let mut cols: Vec<Vec<(usize, BigInt)>> = dt.columns().map(<[_]>::to_vec).collect();
    for j in 0..source.rank(r - 1) {
        let mut col: Vec<(usize, BigInt)> = f.column(j).to_vec();
        col.extend(ds.column(j).iter().map(|(i, v)| (i + t_below, -v)));
        cols.push(col);
    }
    SparseMatrix::from_columns(rows, cols)
}

/// One homology group: `Z^betti ⊕ ⊕ Z/t_i`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct HomologyGroup {
    pub betti: usize,
    /// Torsion coefficients, each greater than one and dividing the next.
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn free(betti: usize) -> Self {
        Self { betti, torsion: Vec::new() }
    }

    pub fn with_torsion(betti: usize, torsion: &[i64]) -> Self {
        Self { betti, torsion: torsion.iter().map(|&t| BigInt::from(t)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({ "betti": self.betti, "torsion": self.torsion.iter().map(bigint_to_json).collect::<Vec<_>>() })
    }
}

/// Homology of a complex; only nonzero groups are stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct HomologySummary {
    groups: BTreeMap<i64, HomologyGroup>,
}

impl HomologySummary {
    pub fn from_groups(groups: impl IntoIterator<Item = (i64, HomologyGroup)>) -> Self {
        Self { groups: groups.into_iter().filter(|(_, g)| !g.is_zero()).collect() }
    }

    /// Free groups of the given Betti numbers in degrees `0, 1, 2, ...`.
    pub fn from_betti(betti: &[usize]) -> Self {
        Self::from_groups(betti.iter().enumerate().map(|(r, &b)| (r as i64, HomologyGroup::free(b))))
    }

    pub fn group(&self, degree: i64) -> HomologyGroup {
        self.groups.get(&degree).cloned().unwrap_or_default()
    }

    pub fn betti(&self, degree: i64) -> usize {
        self.groups.get(&degree).map_or(0, |g| g.betti)
    }

    pub fn torsion(&self, degree: i64) -> Vec<BigInt> {
        self.groups.get(&degree).map_or_else(Vec::new, |g| g.torsion.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.groups.is_empty()
    }

    pub fn nonzero_degrees(&self) -> impl Iterator<Item = i64> + '_ {
        self.groups.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &HomologyGroup)> {
        self.groups.iter().map(|(&r, g)| (r, g))
    }

    /// Reindexes `H_r` to `H_{r+k}`.
    pub fn shifted(&self, k: i64) -> Self {
        Self { groups: self.groups.iter().map(|(&r, g)| (r + k, g.clone())).collect() }
    }

    pub fn direct_sum(&self, other: &HomologySummary) -> HomologySummary {
        let mut groups = self.groups.clone();
        for (&r, g) in &other.groups {
            let entry = groups.entry(r).or_default();
            entry.betti += g.betti;
            let mut torsion: Vec<BigInt> = entry.torsion.iter().chain(&g.torsion).cloned().collect();
            torsion = normalize_torsion(torsion);
            entry.torsion = torsion;
        }
        HomologySummary { groups }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.groups
            .iter()
            .map(|(&r, g)| if r.rem_euclid(2) == 0 { g.betti as i64 } else { -(g.betti as i64) })
            .sum()
    }

    /// JSON array of nonzero groups, ascending degree.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.groups
                .iter()
                .map(|(&r, g)| {
                    let mut v = g.to_json();
                    v["degree"] = json!(r);
                    v
                })
                .collect(),
        )
    }

    /// JSON array covering every degree in `range`, zeros included.
    pub fn to_json_range(&self, range: RangeInclusive<i64>) -> Value {
        Value::Array(
            range
                .map(|r| {
                    let mut v = self.group(r).to_json();
                    v["degree"] = json!(r);
                    v
                })
                .collect(),
        )
    }
}

/// Puts a list of cyclic orders into invariant-factor form.
fn normalize_torsion(orders: Vec<BigInt>) -> Vec<BigInt> {
    let n = orders.len();
    if n == 0 {
        return orders;
    }
    let diag = crate::matrix::IntMatrix::from_fn(n, n, |i, j| if i == j { orders[i].clone() } else { BigInt::zero() });
    crate::snf::smith_normal_form(&diag)
        .diagonal()
        .into_iter()
        .filter(|x| !x.is_one())
        .collect()
}
