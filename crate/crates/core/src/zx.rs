//! Chain complexes whose basis elements are labelled by simplices of a base
//! complex `X`, with label-raising ("upper triangular") differentials and maps.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde_json::{json, Value};
use thiserror::Error;

use crate::chain::{cone_differential, ChainError, ChainMap, ConeLayout, HomologySummary, IntChainComplex};
use crate::complex::{ComplexError, Simplex, SimplicialComplex};
use crate::matrix::SparseMatrix;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ZxError {
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("degree {degree} has {found} labels for {expected} basis elements")]
    LabelCount { degree: i64, expected: usize, found: usize },
    #[error("label id {0} is not a simplex of the base")]
    UnknownLabel(usize),
    #[error("{} support violation(s), first at degree {}", .0.len(), .0[0].degree)]
    Support(Vec<SupportViolation>),
    #[error("source and target live over different base complexes")]
    BaseMismatch,
    #[error("chain dual fails d∘d = 0 from degree {degree}")]
    DualNotAComplex { degree: i64 },
}

/// A nonzero matrix entry whose row label does not contain its column label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportViolation {
    pub degree: i64,
    pub row: usize,
    pub col: usize,
    pub row_label: Simplex,
    pub col_label: Simplex,
}

/// Result of [`check_support`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SupportCheck {
    pub violations: Vec<SupportViolation>,
}

impl SupportCheck {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// A chain complex over `X` with one simplex label per basis element.
///
/// Labels are stored as global simplex ids of the base complex.
#[derive(Clone, Debug)]
pub struct ZXComplex {
    base: Arc<SimplicialComplex>,
    chain: IntChainComplex,
    labels: BTreeMap<i64, Vec<usize>>,
}

impl ZXComplex {
    /// Checks label counts and the support condition on the differential.
    pub fn new(
        base: Arc<SimplicialComplex>,
        chain: IntChainComplex,
        labels: BTreeMap<i64, Vec<usize>>,
    ) -> Result<Self, ZxError> {
        let c = Self::new_unchecked(base, chain, labels)?;
        let check = c.check_differential();
        if !check.ok() {
            return Err(ZxError::Support(check.violations));
        }
        Ok(c)
    }

    /// Checks label counts only.
    pub fn new_unchecked(
        base: Arc<SimplicialComplex>,
        chain: IntChainComplex,
        mut labels: BTreeMap<i64, Vec<usize>>,
    ) -> Result<Self, ZxError> {
        labels.retain(|_, l| !l.is_empty());
        for r in chain.degrees() {
            let found = labels.get(&r).map_or(0, Vec::len);
            if found != chain.rank(r) {
                return Err(ZxError::LabelCount { degree: r, expected: chain.rank(r), found });
            }
        }
        if let Some((&degree, l)) = labels.iter().find(|(r, _)| !chain.degrees().contains(*r)) {
            return Err(ZxError::LabelCount { degree, expected: 0, found: l.len() });
        }
        if let Some(&bad) = labels.values().flatten().find(|&&id| id >= base.num_simplices()) {
            return Err(ZxError::UnknownLabel(bad));
        }
        Ok(Self { base, chain, labels })
    }

    pub fn base(&self) -> &Arc<SimplicialComplex> {
        &self.base
    }

    pub fn chain(&self) -> &IntChainComplex {
        &self.chain
    }

    /// Label ids of the basis in `degree` (empty outside the range).
    pub fn labels(&self, degree: i64) -> &[usize] {
        self.labels.get(&degree).map_or(&[], Vec::as_slice)
    }

    pub fn label(&self, degree: i64, index: usize) -> &Simplex {
        self.base.simplex(self.labels(degree)[index])
    }

    /// Rank of the `σ`-labelled part in each degree, nonzero entries only.
    pub fn label_ranks(&self, s: &Simplex) -> BTreeMap<i64, usize> {
        let Some(id) = self.base.id(s) else {
            return BTreeMap::new();
        };
        self.labels
            .iter()
            .map(|(&r, l)| (r, l.iter().filter(|&&x| x == id).count()))
            .filter(|(_, k)| *k > 0)
            .collect()
    }

    /// Label ids that occur anywhere, ascending.
    pub fn occurring_labels(&self) -> Vec<usize> {
        let mut ids: Vec<usize> = self.labels.values().flatten().copied().collect();
        ids.sort_unstable();
        ids.dedup();
        ids
    }

    /// Support check on the differential.
    pub fn check_differential(&self) -> SupportCheck {
        let mut violations = Vec::new();
        for r in self.chain.degrees() {
            if let Some(d) = self.chain.differential_ref(r) {
                violations.extend(support_violations(&self.base, r, d, self.labels(r - 1), self.labels(r)));
            }
        }
        SupportCheck { violations }
    }

    /// Forgets labels; assembly for trivial fundamental group.
    pub fn assemble(&self) -> IntChainComplex {
        self.chain.clone()
    }

    /// `(C_{*+k})_r = C_{r+k}` with labels carried along.
    pub fn shift(&self, k: i64) -> ZXComplex {
        let labels = self.labels.iter().map(|(&r, l)| (r - k, l.clone())).collect();
        Self { base: self.base.clone(), chain: self.chain.shift(k), labels }
    }

    /// The `σ`-labelled subcomplex: rows and columns whose label is exactly `σ`.
    /// Strictly label-raising entries drop out, so this is again a complex.
    pub fn local_complex(&self, s: &Simplex) -> Result<IntChainComplex, ZxError> {
        let id = self.base.id(s).ok_or_else(|| ComplexError::NotInComplex(s.clone()))?;
        Ok(LabelIndex::new(self).local_complex(self, id))
    }

    /// Debug dump: ranks, differentials and a parallel label table.
    pub fn to_json(&self) -> Value {
        let degrees: Vec<Value> = self
            .chain
            .degrees()
            .map(|r| {
                let labels: Vec<Value> =
                    self.labels(r).iter().map(|&id| json!(self.base.simplex(id).vertices())).collect();
                json!({
                    "degree": r,
                    "rank": self.chain.rank(r),
                    "labels": labels,
                    "differential": self.chain.differential(r).to_json(),
                })
            })
            .collect();
        json!({ "base": self.base.name(), "degrees": degrees })
    }
}

fn support_violations(
    base: &SimplicialComplex,
    degree: i64,
    m: &SparseMatrix,
    row_labels: &[usize],
    col_labels: &[usize],
) -> Vec<SupportViolation> {
    let mut out = Vec::new();
    for (j, col) in m.columns().enumerate() {
        let cl = col_labels[j];
        for (i, _) in col {
            let rl = row_labels[*i];
            if rl != cl && !base.simplex(cl).is_face_of(base.simplex(rl)) {
                out.push(SupportViolation {
                    degree,
                    row: *i,
                    col: j,
                    row_label: base.simplex(rl).clone(),
                    col_label: base.simplex(cl).clone(),
                });
            }
        }
    }
    out
}

/// Checks that every nonzero entry of the candidate components sends a
/// `σ`-labelled column to rows labelled by cofaces `τ ⊇ σ`.
pub fn check_support(source: &ZXComplex, target: &ZXComplex, components: &BTreeMap<i64, SparseMatrix>) -> SupportCheck {
    let mut violations = Vec::new();
    for (&r, m) in components {
        violations.extend(support_violations(&source.base, r, m, target.labels(r), source.labels(r)));
    }
    SupportCheck { violations }
}

/// Per-degree positions of each basis element inside its label block.
struct LabelIndex {
    position: BTreeMap<i64, Vec<usize>>,
    blocks: BTreeMap<i64, HashMap<usize, Vec<usize>>>,
}

impl LabelIndex {
    fn new(c: &ZXComplex) -> Self {
        let mut position = BTreeMap::new();
        let mut blocks = BTreeMap::new();
        for (&r, labels) in &c.labels {
            let mut block: HashMap<usize, Vec<usize>> = HashMap::new();
            let pos = labels
                .iter()
                .enumerate()
                .map(|(i, &l)| {
                    let b = block.entry(l).or_default();
                    b.push(i);
                    b.len() - 1
                })
                .collect();
            position.insert(r, pos);
            blocks.insert(r, block);
        }
        Self { position, blocks }
    }

    fn block(&self, degree: i64, label: usize) -> &[usize] {
        self.blocks.get(&degree).and_then(|b| b.get(&label)).map_or(&[], Vec::as_slice)
    }

    /// Restriction of `m` (rows in `row_degree`) to the `label` block on both sides.
    fn restrict(&self, c_rows: &ZXComplex, row_degree: i64, m: &SparseMatrix, cols: &[usize], label: usize) -> SparseMatrix {
        let row_labels = c_rows.labels(row_degree);
        let row_pos = self.position.get(&row_degree);
        let columns = cols
            .iter()
            .map(|&j| {
                m.column(j)
                    .iter()
                    .filter(|(i, _)| row_labels[*i] == label)
                    .map(|(i, v)| (row_pos.unwrap()[*i], v.clone()))
                    .collect()
            })
            .collect();
        SparseMatrix::from_columns(self.block(row_degree, label).len(), columns)
    }

    fn local_complex(&self, c: &ZXComplex, label: usize) -> IntChainComplex {
        let degrees: Vec<i64> = c.labels.keys().copied().filter(|&r| !self.block(r, label).is_empty()).collect();
        let (Some(&lo), Some(&hi)) = (degrees.first(), degrees.last()) else {
            return IntChainComplex::zero();
        };
        let ranks = (lo..=hi).map(|r| self.block(r, label).len()).collect();
        let diffs = (lo..=hi)
            .map(|r| {
                let cols = self.block(r, label);
                match c.chain.differential_ref(r) {
                    Some(d) if r > lo => self.restrict(c, r - 1, d, cols, label),
                    _ => SparseMatrix::zeros(if r > lo { self.block(r - 1, label).len() } else { 0 }, cols.len()),
                }
            })
            .collect();
        IntChainComplex::new(lo, ranks, diffs).expect("local block shapes")
    }
}

/// A chain map between labelled complexes over the same base, satisfying the
/// support condition.
#[derive(Clone, Debug)]
pub struct ZXMorphism {
    source: ZXComplex,
    target: ZXComplex,
    map: ChainMap,
}

impl ZXMorphism {
    /// Verifies the chain-map identity and the support condition.
    pub fn new(
        source: ZXComplex,
        target: ZXComplex,
        components: BTreeMap<i64, SparseMatrix>,
    ) -> Result<Self, ZxError> {
        if !Arc::ptr_eq(&source.base, &target.base) && *source.base != *target.base {
            return Err(ZxError::BaseMismatch);
        }
        let check = check_support(&source, &target, &components);
        if !check.ok() {
            return Err(ZxError::Support(check.violations));
        }
        let map = ChainMap::new(source.chain.clone(), target.chain.clone(), components)?;
        Ok(Self { source, target, map })
    }

    pub fn identity(c: &ZXComplex) -> Self {
        Self { source: c.clone(), target: c.clone(), map: ChainMap::identity(&c.chain) }
    }

    pub fn source(&self) -> &ZXComplex {
        &self.source
    }

    pub fn target(&self) -> &ZXComplex {
        &self.target
    }

    pub fn component(&self, degree: i64) -> SparseMatrix {
        self.map.component(degree)
    }

    /// The underlying map with labels forgotten.
    pub fn assemble(&self) -> &ChainMap {
        &self.map
    }

    pub fn scale(&self, factor: i64) -> ZXMorphism {
        Self { source: self.source.clone(), target: self.target.clone(), map: self.map.scale(factor) }
    }

    pub fn direct_sum(&self, other: &ZXMorphism) -> Result<ZXMorphism, ZxError> {
        let source = direct_sum(&self.source, &other.source)?;
        let target = direct_sum(&self.target, &other.target)?;
        Ok(Self { source, target, map: self.map.direct_sum(&other.map) })
    }

    /// Diagonal block at label `σ` together with the local complexes.
    pub fn local_component(&self, s: &Simplex) -> Result<LocalComponent, ZxError> {
        let id = self.source.base.id(s).ok_or_else(|| ComplexError::NotInComplex(s.clone()))?;
        let si = LabelIndex::new(&self.source);
        let ti = LabelIndex::new(&self.target);
        Ok(self.local_with(&si, &ti, id))
    }

    fn local_with(&self, si: &LabelIndex, ti: &LabelIndex, id: usize) -> LocalComponent {
        let source = si.local_complex(&self.source, id);
        let target = ti.local_complex(&self.target, id);
        let components = source
            .degrees()
            .map(|r| {
                let m = ti.restrict(&self.target, r, &self.map.component(r), si.block(r, id), id);
                (r, m)
            })
            .collect();
        let map = ChainMap::new_unchecked(source, target, components).expect("local block shapes");
        LocalComponent { simplex: self.source.base.simplex(id).clone(), map }
    }

    /// Whether every diagonal block is a chain equivalence. Labels whose local
    /// cone has nonzero homology are listed as defects.
    pub fn is_local_equivalence(&self) -> Result<LocalEquivalence, ZxError> {
        let si = LabelIndex::new(&self.source);
        let ti = LabelIndex::new(&self.target);
        let mut ids = self.source.occurring_labels();
        ids.extend(self.target.occurring_labels());
        ids.sort_unstable();
        ids.dedup();
        let results: Vec<(usize, HomologySummary)> = ids
            .into_par_iter()
            .map(|id| {
                let local = self.local_with(&si, &ti, id);
                local.cone_homology().map(|h| (id, h))
            })
            .collect::<Result<_, _>>()?;
        let defects = results
            .into_iter()
            .filter(|(_, h)| !h.is_zero())
            .map(|(id, h)| (self.source.base.simplex(id).clone(), h))
            .collect();
        Ok(LocalEquivalence { defects })
    }

    /// Labelled mapping cone: target block first, source shifted up by one,
    /// labels carried along.
    pub fn mapping_cone(&self) -> ZXComplex {
        let (s, t) = (&self.source.chain, &self.target.chain);
        let layout = ConeLayout::new(s, t);
        let diffs = layout
            .degrees()
            .map(|r| cone_differential(t, s, r, |d| self.map.component(d)))
            .collect();
        let chain = IntChainComplex::new(layout.bottom, layout.ranks.clone(), diffs).expect("cone shapes");
        let labels = layout
            .degrees()
            .map(|r| {
                let mut l = self.target.labels(r).to_vec();
                l.extend_from_slice(self.source.labels(r - 1));
                (r, l)
            })
            .collect();
        ZXComplex::new_unchecked(self.source.base.clone(), chain, labels).expect("cone labels")
    }
}

/// Label-wise direct sum; bases must agree.
pub fn direct_sum(a: &ZXComplex, b: &ZXComplex) -> Result<ZXComplex, ZxError> {
    if *a.base != *b.base {
        return Err(ZxError::BaseMismatch);
    }
    let chain = a.chain.direct_sum(&b.chain);
    let labels = chain
        .degrees()
        .map(|r| {
            let mut l = a.labels(r).to_vec();
            l.extend_from_slice(b.labels(r));
            (r, l)
        })
        .collect();
    ZXComplex::new_unchecked(a.base.clone(), chain, labels)
}

/// The diagonal block `f(σ,σ)` of a labelled morphism.
#[derive(Clone, Debug)]
pub struct LocalComponent {
    pub simplex: Simplex,
    pub map: ChainMap,
}

impl LocalComponent {
    pub fn source(&self) -> &IntChainComplex {
        self.map.source()
    }

    pub fn target(&self) -> &IntChainComplex {
        self.map.target()
    }

    pub fn cone_homology(&self) -> Result<HomologySummary, ChainError> {
        self.map.mapping_cone().homology()
    }
}

/// Outcome of the local chain-equivalence test.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LocalEquivalence {
    /// Labels with non-acyclic local cone, and that cone's homology.
    pub defects: BTreeMap<Simplex, HomologySummary>,
}

impl LocalEquivalence {
    pub fn holds(&self) -> bool {
        self.defects.is_empty()
    }
}

/// `C(X')` with each flag `σ₀ < … < σ_p` labelled by `σ₀`.
pub fn label_simplicial_chains(x: &Arc<SimplicialComplex>) -> ZXComplex {
    let sd = crate::complex::BarycentricSubdivision::new(x.clone());
    label_derived_chains(&sd)
}

pub(crate) fn label_derived_chains(sd: &crate::complex::BarycentricSubdivision) -> ZXComplex {
    let derived = sd.derived();
    let chain = derived.chain_complex();
    let labels = chain
        .degrees()
        .map(|r| (r, derived.simplices(r as usize).iter().map(|s| sd.leading_id(s)).collect()))
        .collect();
    ZXComplex::new_unchecked(sd.base().clone(), chain, labels).expect("one label per derived simplex")
}

/// The chain dual `TC`. In degree `r` at label `σ` the basis is the set of
/// pairs `(σ, b)` with `b` a basis element of `C` in degree `-|σ|-r` whose
/// label contains `σ`. The differential is `(-1)^r` times the transposed
/// differential of `C` within a fixed `σ`, plus incidence numbers `[σ' : σ]`
/// towards the codimension-one cofaces `σ' ⊆ label(b)`.
pub fn chain_dual(c: &ZXComplex) -> Result<ZXComplex, ZxError> {
    let base = &c.base;
    // TC basis per degree: (σ id, C degree, C index), sorted.
    let mut basis: BTreeMap<i64, Vec<(usize, i64, usize)>> = BTreeMap::new();
    for (&m, labels) in &c.labels {
        for (b, &tau) in labels.iter().enumerate() {
            for face in base.simplex(tau).faces() {
                let sigma = base.id(&face).expect("faces are present");
                let r = -(face.dim() as i64) - m;
                basis.entry(r).or_default().push((sigma, m, b));
            }
        }
    }
    for v in basis.values_mut() {
        v.sort_unstable();
    }
    let index: HashMap<(usize, i64, usize), usize> = basis
        .values()
        .flat_map(|v| v.iter().enumerate().map(|(i, &k)| (k, i)))
        .collect();
    let (Some(&lo), Some(&hi)) = (basis.keys().next(), basis.keys().next_back()) else {
        return Ok(ZXComplex::new_unchecked(base.clone(), IntChainComplex::zero(), BTreeMap::new())?);
    };
    // Row access to C's differentials: transpose of d_{m+1}.
    let transposed: BTreeMap<i64, SparseMatrix> =
        c.labels.keys().map(|&m| (m, c.chain.differential(m + 1).transpose())).collect();
    let rank = |r: i64| basis.get(&r).map_or(0, Vec::len);
    let ranks: Vec<usize> = (lo..=hi).map(rank).collect();
    let diffs: Vec<SparseMatrix> = (lo..=hi)
        .map(|r| {
            let elems = basis.get(&r).map_or(&[][..], Vec::as_slice);
            let sign = if r.rem_euclid(2) == 0 { BigInt::from(1) } else { BigInt::from(-1) };
            let cols = elems
                .iter()
                .map(|&(sigma, m, b)| {
                    let s = base.simplex(sigma);
                    let mut col = Vec::new();
                    if let Some(t) = transposed.get(&m) {
                        for (bp, coef) in t.column(b) {
                            let lab = c.labels(m + 1)[*bp];
                            if s.is_face_of(base.simplex(lab)) {
                                col.push((index[&(sigma, m + 1, *bp)], &sign * coef));
                            }
                        }
                    }
                    let tau = base.simplex(c.labels(m)[b]);
                    for v in tau.vertices().iter().filter(|v| !s.contains_vertex(**v)) {
                        let up = s.union(&Simplex::vertex(*v));
                        let up_id = base.id(&up).expect("faces are present");
                        col.push((index[&(up_id, m, b)], BigInt::from(up.incidence(s))));
                    }
                    col
                })
                .collect();
            SparseMatrix::from_columns(rank(r - 1), cols)
        })
        .collect();
    let chain = IntChainComplex::new(lo, ranks, diffs)?;
    if let Err(ChainError::NotAComplex { degree }) = chain.validate() {
        return Err(ZxError::DualNotAComplex { degree });
    }
    let labels = basis.into_iter().map(|(r, v)| (r, v.into_iter().map(|(s, _, _)| s).collect())).collect();
    ZXComplex::new(base.clone(), chain, labels)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base(facets: &[&[u64]]) -> Arc<SimplicialComplex> {
        Arc::new(SimplicialComplex::from_facets("t", facets.iter().map(|f| Simplex::new(f.to_vec()).unwrap())))
    }

    fn s(v: &[u64]) -> Simplex {
        Simplex::new(v.to_vec()).unwrap()
    }

    /// A single generator in degree 0 with the given label.
    fn point_module(x: &Arc<SimplicialComplex>, label: &Simplex) -> ZXComplex {
        let id = x.id(label).unwrap();
        ZXComplex::new(x.clone(), IntChainComplex::unit(0), BTreeMap::from([(0, vec![id])])).unwrap()
    }

    #[test]
    fn labels_of_the_subdivided_edge() {
        let x = base(&[&[0, 1]]);
        let c = label_simplicial_chains(&x);
        assert_eq!(c.label_ranks(&s(&[0])), BTreeMap::from([(0, 1), (1, 1)]));
        assert_eq!(c.label_ranks(&s(&[1])), BTreeMap::from([(0, 1), (1, 1)]));
        assert_eq!(c.label_ranks(&s(&[0, 1])), BTreeMap::from([(0, 1)]));
        assert!(c.check_differential().ok());
    }

    #[test]
    fn support_violation_is_reported() {
        let x = base(&[&[0, 1]]);
        let src = point_module(&x, &s(&[0, 1]));
        let tgt = point_module(&x, &s(&[0]));
        let comps = BTreeMap::from([(0, SparseMatrix::identity(1))]);
        let check = check_support(&src, &tgt, &comps);
        assert_eq!(check.violations.len(), 1);
        assert!(ZXMorphism::new(src.clone(), tgt.clone(), comps).is_err());
        assert!(check_support(&src, &tgt, &BTreeMap::new()).ok());
    }

    #[test]
    fn global_iso_need_not_be_local() {
        let x = base(&[&[0, 1]]);
        let src = point_module(&x, &s(&[0]));
        let tgt = point_module(&x, &s(&[0, 1]));
        let f = ZXMorphism::new(src, tgt, BTreeMap::from([(0, SparseMatrix::identity(1))])).unwrap();
        assert!(f.assemble().mapping_cone().is_contractible().unwrap());
        let local = f.is_local_equivalence().unwrap();
        assert_eq!(local.defects.keys().cloned().collect::<Vec<_>>(), vec![s(&[0]), s(&[0, 1])]);
    }

    #[test]
    fn identity_is_local_equivalence() {
        let x = base(&[&[0, 1, 2]]);
        let c = label_simplicial_chains(&x);
        let id = ZXMorphism::identity(&c);
        assert!(id.is_local_equivalence().unwrap().holds());
        let local = id.local_component(&s(&[0])).unwrap();
        assert_eq!(local.map.component(0), SparseMatrix::identity(local.source().rank(0)));
    }

    #[test]
    fn chain_dual_of_labelled_point_on_edge() {
        let x = base(&[&[0, 1]]);
        let tc = chain_dual(&point_module(&x, &s(&[0, 1]))).unwrap();
        assert_eq!(tc.label_ranks(&s(&[0])), BTreeMap::from([(0, 1)]));
        assert_eq!(tc.label_ranks(&s(&[1])), BTreeMap::from([(0, 1)]));
        assert_eq!(tc.label_ranks(&s(&[0, 1])), BTreeMap::from([(-1, 1)]));
        let h = tc.assemble().homology().unwrap();
        assert_eq!(h, HomologySummary::from_betti(&[1]));
    }

    #[test]
    fn chain_dual_over_a_vertex_is_plain_dual() {
        let x = base(&[&[3]]);
        let c = label_simplicial_chains(&x);
        let tc = chain_dual(&c).unwrap();
        assert_eq!(tc.assemble(), c.assemble().dualize(0));
    }

    #[test]
    fn labelled_cone_keeps_labels() {
        let x = base(&[&[0, 1]]);
        let c = label_simplicial_chains(&x);
        let cone = ZXMorphism::identity(&c).mapping_cone();
        assert!(cone.check_differential().ok());
        assert_eq!(cone.labels(1).len(), c.labels(1).len() + c.labels(0).len());
        let shifted = cone.shift(1);
        assert_eq!(shifted.labels(0), cone.labels(1));
    }
}
