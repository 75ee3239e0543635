//! Fundamental cycles, the dual-cell duality map `[X] ∩ −: C(X)^{n-*} → C(X')`,
//! and intersection forms of 4k-dimensional complexes.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde_json::{json, Value};
use thiserror::Error;

use crate::chain::{ChainError, ChainMap};
use crate::complex::{BarycentricSubdivision, ComplexError, Simplex, SimplicialComplex, Vertex};
use crate::linv::{FormError, SymmetricForm};
use crate::matrix::{IntMatrix, SparseMatrix};
use crate::snf::{kernel_basis_with, smith_normal_form};
use crate::zx::{label_derived_chains, ZXComplex, ZXMorphism, ZxError};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum DualityError {
    #[error("complex is empty")]
    Empty,
    #[error("facet {facet} has dimension {}, expected {expected}", .facet.dim())]
    NotPure { facet: Simplex, expected: usize },
    #[error("not orientable: {0}")]
    NotOrientable(OrientationWitness),
    #[error("dimension {0} is not a multiple of 4")]
    NotFourK(usize),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error(transparent)]
    Zx(#[from] ZxError),
    #[error(transparent)]
    Form(#[from] FormError),
}

/// Why no `±1` fundamental cycle exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrientationWitness {
    /// A ridge with an odd number of cofacets.
    OddRidge { ridge: Simplex, cofaces: usize },
    /// Propagating signs around facets meets a contradiction across this ridge.
    InconsistentLoop { ridge: Simplex },
    /// A ridge with an even number (at least four) of cofacets and no `±1`
    /// cycle in the top-dimensional kernel.
    NoUnitCycle { ridge: Simplex },
}

impl std::fmt::Display for OrientationWitness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::OddRidge { ridge, cofaces } => write!(f, "ridge {ridge} has {cofaces} cofacets"),
            Self::InconsistentLoop { ridge } => write!(f, "inconsistent orientation loop through ridge {ridge}"),
            Self::NoUnitCycle { ridge } => write!(f, "no ±1 cycle; branching at ridge {ridge}"),
        }
    }
}

impl OrientationWitness {
    pub fn to_json(&self) -> Value {
        match self {
            Self::OddRidge { ridge, cofaces } => {
                json!({ "kind": "odd_ridge", "ridge": ridge.vertices(), "cofaces": cofaces })
            }
            Self::InconsistentLoop { ridge } => json!({ "kind": "inconsistent_loop", "ridge": ridge.vertices() }),
            Self::NoUnitCycle { ridge } => json!({ "kind": "no_unit_cycle", "ridge": ridge.vertices() }),
        }
    }
}

/// Which of the two normalized fundamental cycles to use.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Orientation {
    /// Lexicographically least facet of each component has coefficient `+1`.
    #[default]
    Auto,
    /// The negative of `Auto`.
    Reverse,
}

/// A `±1` weighting of the facets with zero boundary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FundamentalCycle {
    n: usize,
    coefficients: BTreeMap<Simplex, i64>,
}

impl FundamentalCycle {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn coefficients(&self) -> &BTreeMap<Simplex, i64> {
        &self.coefficients
    }

    pub fn coefficient(&self, facet: &Simplex) -> i64 {
        self.coefficients.get(facet).copied().unwrap_or(0)
    }

    pub fn reversed(&self) -> Self {
        Self { n: self.n, coefficients: self.coefficients.iter().map(|(s, c)| (s.clone(), -c)).collect() }
    }

    pub fn oriented(self, orientation: Orientation) -> Self {
        match orientation {
            Orientation::Auto => self,
            Orientation::Reverse => self.reversed(),
        }
    }

    /// Coefficient vector in the basis of `n`-simplices of `x`.
    pub fn vector(&self, x: &SimplicialComplex) -> Vec<BigInt> {
        x.simplices(self.n).iter().map(|s| BigInt::from(self.coefficient(s))).collect()
    }
}

fn check_pure(x: &SimplicialComplex, n: usize) -> Result<(), DualityError> {
    if x.is_empty() {
        return Err(DualityError::Empty);
    }
    if let Some(f) = x.facets().iter().find(|f| f.dim() != n) {
        return Err(DualityError::NotPure { facet: f.clone(), expected: n });
    }
    Ok(())
}

/// Finds the `±1` fundamental cycle of a pure `n`-dimensional complex by
/// propagating signs across ridges. Each connected component is normalized
/// so that its lexicographically least facet has coefficient `+1`.
pub fn fundamental_cycle(x: &SimplicialComplex, n: usize) -> Result<FundamentalCycle, DualityError> {
    check_pure(x, n)?;
    let facets = x.simplices(n);
    if n == 0 {
        let coefficients = facets.iter().map(|f| (f.clone(), 1)).collect();
        return Ok(FundamentalCycle { n, coefficients });
    }
    let mut ridges: HashMap<Simplex, Vec<(usize, i64)>> = HashMap::new();
    for (i, f) in facets.iter().enumerate() {
        for (sign, r) in f.boundary() {
            ridges.entry(r).or_default().push((i, sign));
        }
    }
    let mut branching: Vec<&Simplex> = Vec::new();
    for r in x.simplices(n - 1) {
        let k = ridges.get(r).map_or(0, Vec::len);
        if k % 2 == 1 {
            return Err(DualityError::NotOrientable(OrientationWitness::OddRidge { ridge: r.clone(), cofaces: k }));
        }
        if k > 2 {
            branching.push(r);
        }
    }
    // Propagate across ridges with exactly two cofacets. Each resulting piece
    // is oriented up to one sign, rooted at its least facet.
    let mut sign: Vec<i64> = vec![0; facets.len()];
    let mut piece: Vec<usize> = vec![usize::MAX; facets.len()];
    let mut roots: Vec<usize> = Vec::new();
    for root in 0..facets.len() {
        if sign[root] != 0 {
            continue;
        }
        sign[root] = 1;
        piece[root] = roots.len();
        roots.push(root);
        let mut queue = VecDeque::from([root]);
        while let Some(i) = queue.pop_front() {
            for (s, r) in facets[i].boundary() {
                let pair = &ridges[&r];
                if pair.len() != 2 {
                    continue;
                }
                let &(j, t) = pair.iter().find(|(j, _)| *j != i).expect("two cofacets");
                let want = -sign[i] * s * t;
                if sign[j] == 0 {
                    sign[j] = want;
                    piece[j] = piece[i];
                    queue.push_back(j);
                } else if sign[j] != want {
                    return Err(DualityError::NotOrientable(OrientationWitness::InconsistentLoop { ridge: r }));
                }
            }
        }
    }
    let flips = piece_signs(&ridges, &branching, &sign, &piece, roots.len())?;
    let coefficients = facets
        .iter()
        .enumerate()
        .map(|(i, f)| (f.clone(), sign[i] * flips[piece[i]]))
        .collect();
    Ok(FundamentalCycle { n, coefficients })
}

/// Largest group of pieces meeting at branching ridges searched exhaustively.
const MAX_BRANCHED_PIECES: usize = 20;

/// Relative signs of the pieces making every branching ridge cancel. Pieces
/// linked through branching ridges are solved together by exhaustive search,
/// with the least piece of each group fixed to `+1`.
fn piece_signs(
    ridges: &HashMap<Simplex, Vec<(usize, i64)>>,
    branching: &[&Simplex],
    sign: &[i64],
    piece: &[usize],
    pieces: usize,
) -> Result<Vec<i64>, DualityError> {
    let mut flips = vec![1i64; pieces];
    if branching.is_empty() {
        return Ok(flips);
    }
    // Per branching ridge: the summed incidence of each piece.
    let constraints: Vec<(&Simplex, BTreeMap<usize, i64>)> = branching
        .iter()
        .map(|r| {
            let mut row: BTreeMap<usize, i64> = BTreeMap::new();
            for &(i, s) in &ridges[*r] {
                *row.entry(piece[i]).or_default() += s * sign[i];
            }
            row.retain(|_, c| *c != 0);
            (*r, row)
        })
        .collect();
    // Union pieces sharing a constraint.
    let mut parent: Vec<usize> = (0..pieces).collect();
    fn find(parent: &mut [usize], a: usize) -> usize {
        let mut a = a;
        while parent[a] != a {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        a
    }
    for (_, row) in &constraints {
        let mut it = row.keys();
        if let Some(&first) = it.next() {
            for &other in it {
                let (a, b) = (find(&mut parent, first), find(&mut parent, other));
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for p in 0..pieces {
        let g = find(&mut parent, p);
        groups.entry(g).or_default().push(p);
    }
    for members in groups.values() {
        let local: Vec<&(&Simplex, BTreeMap<usize, i64>)> =
            constraints.iter().filter(|(_, row)| row.keys().next().is_some_and(|p| members.contains(p))).collect();
        let witness = || local.first().map_or_else(|| branching[0].clone(), |(r, _)| (*r).clone());
        if local.is_empty() {
            continue;
        }
        if members.len() > MAX_BRANCHED_PIECES {
            return Err(DualityError::NotOrientable(OrientationWitness::NoUnitCycle { ridge: witness() }));
        }
        let free = members.len() - 1;
        let found = (0u64..1 << free).find(|mask| {
            let s = |p: usize| {
                let k = members.iter().position(|&m| m == p).unwrap();
                if k > 0 && mask >> (k - 1) & 1 == 1 { -1 } else { 1 }
            };
            local.iter().all(|(_, row)| row.iter().map(|(&p, &c)| s(p) * c).sum::<i64>() == 0)
        });
        let Some(mask) = found else {
            return Err(DualityError::NotOrientable(OrientationWitness::NoUnitCycle { ridge: witness() }));
        };
        for (k, &p) in members.iter().enumerate().skip(1) {
            if mask >> (k - 1) & 1 == 1 {
                flips[p] = -1;
            }
        }
    }
    Ok(flips)
}

/// The duality map and the labelled complexes it connects.
#[derive(Clone, Debug)]
pub struct DualityPackage {
    pub complex: Arc<SimplicialComplex>,
    pub n: usize,
    pub cycle: FundamentalCycle,
    pub subdivision: BarycentricSubdivision,
    /// `C(X)^{n-*}` with the dual of `σ` labelled `σ`.
    pub source: ZXComplex,
    /// `C(X')` with each flag labelled by its least entry.
    pub target: ZXComplex,
    pub phi: ZXMorphism,
}

/// `C(X)^{n-*}` as a labelled complex: degree `r` has the `(n-r)`-simplices.
pub fn labelled_dual_chains(x: &Arc<SimplicialComplex>, n: usize) -> ZXComplex {
    let chain = x.chain_complex().dualize(n as i64);
    let labels = chain
        .degrees()
        .map(|r| {
            let p = (n as i64 - r) as usize;
            (r, x.simplices(p).iter().map(|s| x.id(s).unwrap()).collect())
        })
        .collect();
    ZXComplex::new_unchecked(x.clone(), chain, labels).expect("one label per simplex")
}

/// Pushed fundamental cycle `ξ = sd([X])`, keyed by derived `n`-simplex index.
fn pushed_cycle(sd: &BarycentricSubdivision, cycle: &FundamentalCycle) -> HashMap<usize, BigInt> {
    let mut xi: HashMap<usize, BigInt> = HashMap::new();
    for (facet, &eps) in cycle.coefficients() {
        for (idx, c) in sd.subdivide(facet) {
            *xi.entry(idx).or_insert_with(BigInt::zero) += c * eps;
        }
    }
    xi.retain(|_, v| !v.is_zero());
    xi
}

/// Flags `σ = σ_p < σ_{p+1} < … < σ_n` with consecutive dimensions, as lists
/// of global ids.
fn tails(x: &SimplicialComplex, s: &Simplex, n: usize) -> Vec<Vec<Vertex>> {
    let id = x.id(s).unwrap() as Vertex;
    if s.dim() == n {
        return vec![vec![id]];
    }
    let mut out = Vec::new();
    for up in x.cofaces(s).collect::<Vec<_>>() {
        for mut t in tails(x, &up, n) {
            t.insert(0, id);
            out.push(t);
        }
    }
    out
}

/// Ids of the initial-segment flag `{v0} < {v0 v1} < …` strictly below `σ`.
fn canonical_head(x: &SimplicialComplex, s: &Simplex) -> Vec<Vertex> {
    (1..s.vertices().len())
        .map(|k| x.id(&Simplex::new(s.vertices()[..k].to_vec()).unwrap()).unwrap() as Vertex)
        .collect()
}

/// `(-1)^{(n+1)p}`.
fn phi_sign(n: usize, p: usize) -> i64 {
    if (n + 1) * p % 2 == 0 { 1 } else { -1 }
}

/// Builds `Φ = [X] ∩ −` by the dual-cell formula: the image of `σ*` is the sum
/// of the flags `σ̂_p … σ̂_n` starting at `σ`, each weighted by the pushed cycle
/// on its extension by the initial-segment flag of `σ`, times `(-1)^{(n+1)p}`.
/// Support is automatic; the chain-map identity is verified.
pub fn duality_map(
    x: &Arc<SimplicialComplex>,
    n: usize,
    orientation: Orientation,
) -> Result<DualityPackage, DualityError> {
    let cycle = fundamental_cycle(x, n)?.oriented(orientation);
    let sd = BarycentricSubdivision::new(x.clone());
    let xi = pushed_cycle(&sd, &cycle);
    let derived = sd.derived().clone();
    let source = labelled_dual_chains(x, n);
    let target = label_derived_chains(&sd);
    let components: BTreeMap<i64, SparseMatrix> = (0..=n)
        .into_par_iter()
        .map(|p| {
            let r = (n - p) as i64;
            let sign = phi_sign(n, p);
            let cols = x
                .simplices(p)
                .iter()
                .map(|s| {
                    let head = canonical_head(x, s);
                    tails(x, s, n)
                        .into_iter()
                        .filter_map(|t| {
                            let mut full = head.clone();
                            full.extend_from_slice(&t);
                            let full_idx = derived.index_in_dim(&Simplex::new(full).unwrap())?;
                            let c = xi.get(&full_idx)?;
                            let row = derived.index_in_dim(&Simplex::new(t).unwrap()).unwrap();
                            Some((row, c * sign))
                        })
                        .collect()
                })
                .collect();
            (r, SparseMatrix::from_columns(derived.simplices(n - p).len(), cols))
        })
        .collect();
    let phi = ZXMorphism::new(source.clone(), target.clone(), components)?;
    Ok(DualityPackage { complex: x.clone(), n, cycle, subdivision: sd, source, target, phi })
}

/// Independent construction of the duality map as the Alexander–Whitney cap
/// of the pushed cycle with the last-vertex pullback of `σ*`, with the same
/// degree sign. Not label-preserving in general; compare on homology only.
pub fn alexander_whitney_duality_map(package: &DualityPackage) -> ChainMap {
    let (x, n, sd) = (&package.complex, package.n, &package.subdivision);
    let derived = sd.derived();
    let xi = pushed_cycle(sd, &package.cycle);
    let mut triplets: BTreeMap<i64, Vec<(usize, usize, BigInt)>> = BTreeMap::new();
    let mut flags: Vec<(&usize, &BigInt)> = xi.iter().collect();
    flags.sort();
    for (&idx, c) in flags {
        let flag = &derived.simplices(n)[idx];
        for p in 0..=n {
            let head = &flag.vertices()[..=p];
            let maxes: Vec<Vertex> = head.iter().map(|&v| x.simplex(v as usize).max_vertex()).collect();
            if !maxes.windows(2).all(|w| w[0] < w[1]) {
                continue;
            }
            let s = Simplex::new(maxes).unwrap();
            let Some(col) = x.index_in_dim(&s) else { continue };
            let tail = Simplex::new(flag.vertices()[p..].to_vec()).unwrap();
            let row = derived.index_in_dim(&tail).unwrap();
            triplets.entry((n - p) as i64).or_default().push((row, col, c * phi_sign(n, p)));
        }
    }
    let components = (0..=n)
        .map(|p| {
            let r = (n - p) as i64;
            let t = triplets.remove(&r).unwrap_or_default();
            (r, SparseMatrix::from_triplets(derived.simplices(n - p).len(), x.simplices(p).len(), t))
        })
        .collect();
    ChainMap::new_unchecked(package.source.assemble(), package.target.assemble(), components)
        .expect("cap product shapes")
}

/// Cup-product pairing on the free part of `H^{2k}(X)` evaluated on the
/// fundamental cycle, for `n = 4k`.
pub fn intersection_form(
    x: &SimplicialComplex,
    n: usize,
    orientation: Orientation,
) -> Result<SymmetricForm, DualityError> {
    if n % 4 != 0 {
        return Err(DualityError::NotFourK(n));
    }
    let cycle = fundamental_cycle(x, n)?.oriented(orientation);
    let basis = free_cohomology_basis(x, n / 2);
    cup_pairing(x, &cycle, &basis)
}

/// Gram matrix of `(a, b) ↦ ⟨a ∪ b, [X]⟩` on the given middle-degree cochains,
/// with the Alexander–Whitney front and back faces of each facet.
pub fn cup_pairing(
    x: &SimplicialComplex,
    cycle: &FundamentalCycle,
    cochains: &[Vec<BigInt>],
) -> Result<SymmetricForm, DualityError> {
    let m = cycle.dim() / 2;
    let index: HashMap<&Simplex, usize> = x.simplices(m).iter().enumerate().map(|(i, s)| (s, i)).collect();
    let g = cochains.len();
    let mut q = IntMatrix::zeros(g, g);
    for (facet, &eps) in cycle.coefficients() {
        let front = Simplex::new(facet.vertices()[..=m].to_vec()).unwrap();
        let back = Simplex::new(facet.vertices()[m..].to_vec()).unwrap();
        let (fi, bi) = (index[&front], index[&back]);
        for i in 0..g {
            if cochains[i][fi].is_zero() {
                continue;
            }
            for j in 0..g {
                let v = &cochains[i][fi] * &cochains[j][bi] * eps;
                if !v.is_zero() {
                    *q.get_mut(i, j) += v;
                }
            }
        }
    }
    Ok(SymmetricForm::new(q)?)
}

/// Cocycles in degree `m` projecting to a basis of the free part of `H^m(X)`,
/// as coefficient vectors over the `m`-simplices.
pub fn free_cohomology_basis(x: &SimplicialComplex, m: usize) -> Vec<Vec<BigInt>> {
    let c = x.chain_complex();
    let coboundary_out = c.differential(m as i64 + 1).transpose().to_dense();
    let coboundary_in = c.differential(m as i64).transpose().to_dense();
    let outer = smith_normal_form(&coboundary_out);
    let rank = outer.rank();
    let cycles: Vec<Vec<BigInt>> = kernel_basis_with(&outer);
    let z = cycles.len();
    // Coordinates of coboundaries in the cocycle basis: tail of V⁻¹ b.
    let coords = IntMatrix::from_fn(z, coboundary_in.cols(), |i, j| {
        let col = coboundary_in.column(j);
        let row = outer.v_inv.row(rank + i);
        row.iter().zip(&col).map(|(a, b)| a * b).sum()
    });
    let inner = smith_normal_form(&coords);
    (inner.rank()..z)
        .map(|i| {
            let c = inner.u_inv.column(i);
            (0..x.simplices(m).len())
                .map(|s| cycles.iter().zip(&c).map(|(v, ci)| &v[s] * ci).sum())
                .collect()
        })
        .collect()
}
