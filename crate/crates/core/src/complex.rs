//! Finite abstract simplicial complexes, barycentric subdivision and dual cells.
//!
//! Every complex fixes a global order on its simplices: by dimension, then
//! lexicographically on the sorted vertex list. The position of a simplex in
//! that order is its *global id*, and the barycentric subdivision uses global
//! ids as vertex names. Consequently a derived simplex, read as a sorted vertex
//! list, is already the flag `σ₀ < σ₁ < … < σ_p` it represents.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use itertools::Itertools;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chain::{ChainMap, IntChainComplex};
use crate::matrix::SparseMatrix;

pub type Vertex = u64;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ComplexError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: repeated vertex {vertex} in facet")]
    RepeatedVertex { line: usize, vertex: Vertex },
    #[error("line {line}: empty facet")]
    EmptyFacet { line: usize },
    #[error("invalid JSON complex: {0}")]
    Json(String),
    #[error("simplex {0} is not in the complex")]
    NotInComplex(Simplex),
    #[error("vertex {0} has no image under the map")]
    UnmappedVertex(Vertex),
    #[error("image {image} of simplex {simplex} is not a simplex of the target")]
    NotSimplicial { simplex: Simplex, image: Simplex },
}

/// A simplex, stored as its strictly increasing vertex list.
///
/// Simplices order by dimension first and lexicographically second, matching
/// the global order used inside every [`SimplicialComplex`].
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vertex>", into = "Vec<Vertex>")]
pub struct Simplex(Vec<Vertex>);

impl Simplex {
    /// Sorts the vertices; rejects empty input and repeated vertices.
    pub fn new(mut vertices: Vec<Vertex>) -> Result<Self, String> {
        if vertices.is_empty() {
            return Err("a simplex needs at least one vertex".into());
        }
        vertices.sort_unstable();
        if let Some(w) = vertices.windows(2).find(|w| w[0] == w[1]) {
            return Err(format!("repeated vertex {}", w[0]));
        }
        Ok(Self(vertices))
    }

    pub fn vertex(v: Vertex) -> Self {
        Self(vec![v])
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn max_vertex(&self) -> Vertex {
        *self.0.last().expect("simplices are non-empty")
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// `self ⊆ other` as vertex sets.
    pub fn is_face_of(&self, other: &Simplex) -> bool {
        if self.0.len() > other.0.len() {
            return false;
        }
        let mut it = other.0.iter();
        self.0.iter().all(|v| it.any(|w| w == v))
    }

    /// The codimension-one faces with their boundary signs `(-1)^i`, where `i`
    /// is the position of the deleted vertex. Empty for vertices.
    pub fn boundary(&self) -> impl Iterator<Item = (i64, Simplex)> + '_ {
        let n = if self.0.len() > 1 { self.0.len() } else { 0 };
        (0..n).map(move |i| {
            let mut f = self.0.clone();
            f.remove(i);
            (if i % 2 == 0 { 1 } else { -1 }, Simplex(f))
        })
    }

    /// Incidence number `[self : face]` for a codimension-one face, else 0.
    pub fn incidence(&self, face: &Simplex) -> i64 {
        if face.0.len() + 1 != self.0.len() || !face.is_face_of(self) {
            return 0;
        }
        let i = (0..self.0.len()).find(|&i| i == face.0.len() || self.0[i] != face.0[i]).unwrap();
        if i % 2 == 0 { 1 } else { -1 }
    }

    /// Every non-empty face, including `self`.
    pub fn faces(&self) -> impl Iterator<Item = Simplex> + '_ {
        (1..=self.0.len()).flat_map(move |k| self.0.iter().copied().combinations(k).map(Simplex))
    }

    pub fn union(&self, other: &Simplex) -> Simplex {
        let mut v: Vec<Vertex> = self.0.iter().chain(&other.0).copied().collect();
        v.sort_unstable();
        v.dedup();
        Simplex(v)
    }

    /// Vertices of `self` not in `other`; `None` if that set is empty.
    pub fn difference(&self, other: &Simplex) -> Option<Simplex> {
        let v: Vec<Vertex> = self.0.iter().copied().filter(|v| !other.contains_vertex(*v)).collect();
        (!v.is_empty()).then_some(Simplex(v))
    }

    pub fn is_disjoint(&self, other: &Simplex) -> bool {
        self.0.iter().all(|v| !other.contains_vertex(*v))
    }
}

impl TryFrom<Vec<Vertex>> for Simplex {
    type Error = String;
    fn try_from(v: Vec<Vertex>) -> Result<Self, String> {
        Simplex::new(v)
    }
}

impl From<Simplex> for Vec<Vertex> {
    fn from(s: Simplex) -> Self {
        s.0
    }
}

impl Ord for Simplex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Simplex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.0.iter().join(" "))
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A finite simplicial complex, closed under taking faces.
#[derive(Clone)]
pub struct SimplicialComplex {
    name: String,
    facets: Vec<Simplex>,
    levels: Vec<Vec<Simplex>>,
    offsets: Vec<usize>,
    ids: HashMap<Simplex, usize>,
}

#[derive(Serialize, Deserialize)]
struct ComplexDocument {
    name: String,
    facets: Vec<Vec<Vertex>>,
}

impl SimplicialComplex {
    /// The face closure of the given simplices. Duplicates collapse and
    /// simplices that are faces of others are absorbed.
    pub fn from_facets(name: impl Into<String>, facets: impl IntoIterator<Item = Simplex>) -> Self {
        let mut all: HashSet<Simplex> = HashSet::new();
        for f in facets {
            if all.contains(&f) {
                continue;
            }
            for face in f.faces() {
                all.insert(face);
            }
        }
        Self::from_closed_set(name.into(), all)
    }

    /// The empty complex.
    pub fn empty(name: impl Into<String>) -> Self {
        Self::from_closed_set(name.into(), HashSet::new())
    }

    fn from_closed_set(name: String, all: HashSet<Simplex>) -> Self {
        let top = all.iter().map(Simplex::dim).max();
        let mut levels: Vec<Vec<Simplex>> = vec![Vec::new(); top.map_or(0, |d| d + 1)];
        for s in all {
            let d = s.dim();
            levels[d].push(s);
        }
        for level in &mut levels {
            level.sort_unstable();
        }
        let mut offsets = Vec::with_capacity(levels.len());
        let mut acc = 0;
        for level in &levels {
            offsets.push(acc);
            acc += level.len();
        }
        let ids: HashMap<Simplex, usize> = levels
            .iter()
            .zip(&offsets)
            .flat_map(|(level, &off)| level.iter().enumerate().map(move |(i, s)| (s.clone(), off + i)))
            .collect();
        let mut covered: HashSet<&Simplex> = HashSet::new();
        for level in levels.iter().skip(1) {
            for s in level {
                for (_, f) in s.boundary() {
                    covered.insert(ids.get_key_value(&f).expect("face closure").0);
                }
            }
        }
        let facets: Vec<Simplex> = levels.iter().flatten().filter(|s| !covered.contains(s)).cloned().collect();
        Self { name, facets, levels, offsets, ids }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Maximal simplices, in global order.
    pub fn facets(&self) -> &[Simplex] {
        &self.facets
    }

    /// Maximal simplex dimension, `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.levels.len().checked_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    /// Every facet has dimension `n`.
    pub fn is_pure(&self, n: usize) -> bool {
        self.facets.iter().all(|f| f.dim() == n)
    }

    /// Simplices of dimension `d`, sorted.
    pub fn simplices(&self, d: usize) -> &[Simplex] {
        self.levels.get(d).map_or(&[], Vec::as_slice)
    }

    /// All simplices in global order.
    pub fn all_simplices(&self) -> impl Iterator<Item = &Simplex> {
        self.levels.iter().flatten()
    }

    pub fn num_simplices(&self) -> usize {
        self.ids.len()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.levels.iter().map(Vec::len).collect()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.simplices(0).iter().map(|s| s.0[0])
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.ids.contains_key(s)
    }

    /// Position of `s` in the global order.
    pub fn id(&self, s: &Simplex) -> Option<usize> {
        self.ids.get(s).copied()
    }

    /// Position of `s` among simplices of its dimension.
    pub fn index_in_dim(&self, s: &Simplex) -> Option<usize> {
        self.id(s).map(|g| g - self.offsets[s.dim()])
    }

    /// Simplex with the given global id.
    pub fn simplex(&self, id: usize) -> &Simplex {
        let d = self.offsets.partition_point(|&o| o <= id) - 1;
        &self.levels[d][id - self.offsets[d]]
    }

    /// Codimension-one cofaces of `s` present in the complex.
    pub fn cofaces<'a>(&'a self, s: &'a Simplex) -> impl Iterator<Item = Simplex> + 'a {
        self.vertices()
            .filter(move |v| !s.contains_vertex(*v))
            .map(move |v| s.union(&Simplex::vertex(v)))
            .filter(move |t| self.contains(t))
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.levels
            .iter()
            .enumerate()
            .map(|(d, l)| if d % 2 == 0 { l.len() as i64 } else { -(l.len() as i64) })
            .sum()
    }

    /// Oriented simplicial chain complex, degrees `0..=dim`. Basis in degree
    /// `d` is the sorted list of `d`-simplices.
    pub fn chain_complex(&self) -> IntChainComplex {
        let Some(top) = self.dim() else {
            return IntChainComplex::zero();
        };
        let ranks: Vec<usize> = self.f_vector();
        let diffs = (0..=top)
            .map(|d| {
                if d == 0 {
                    return SparseMatrix::zeros(0, ranks[0]);
                }
                let cols = self.levels[d]
                    .iter()
                    .map(|s| {
                        s.boundary()
                            .map(|(sign, f)| (self.index_in_dim(&f).unwrap(), BigInt::from(sign)))
                            .collect()
                    })
                    .collect();
                SparseMatrix::from_columns(ranks[d - 1], cols)
            })
            .collect();
        IntChainComplex::new(0, ranks, diffs).expect("boundary shapes")
    }

    /// Chain complex augmented by `Z` in degree `-1`; its homology is reduced
    /// homology, and the empty complex has `Z` in degree `-1`.
    pub fn augmented_chain_complex(&self) -> IntChainComplex {
        let top = self.dim().map_or(-1, |d| d as i64);
        let mut ranks = vec![1usize];
        let mut diffs = vec![SparseMatrix::zeros(0, 1)];
        for d in 0..=top {
            let d = d as usize;
            ranks.push(self.levels[d].len());
            if d == 0 {
                let cols = (0..self.levels[0].len()).map(|_| vec![(0, BigInt::from(1))]).collect();
                diffs.push(SparseMatrix::from_columns(1, cols));
            } else {
                diffs.push(self.chain_complex().differential(d as i64));
            }
        }
        IntChainComplex::new(-1, ranks, diffs).expect("augmented shapes")
    }

    /// `{ t : t ∩ s = ∅, t ∪ s ∈ X }`.
    pub fn link(&self, s: &Simplex) -> Result<SimplicialComplex, ComplexError> {
        if !self.contains(s) {
            return Err(ComplexError::NotInComplex(s.clone()));
        }
        let pieces = self.facets.iter().filter(|f| s.is_face_of(f)).filter_map(|f| f.difference(s));
        Ok(SimplicialComplex::from_facets(format!("lk({s})"), pieces))
    }

    /// Disjoint union, with the vertices of `other` shifted past those of `self`.
    pub fn disjoint_union(&self, other: &SimplicialComplex) -> SimplicialComplex {
        let shift = self.vertices().max().map_or(0, |v| v + 1);
        let moved = other.facets.iter().map(|f| Simplex(f.0.iter().map(|v| v + shift).collect()));
        SimplicialComplex::from_facets(
            format!("{}+{}", self.name, other.name),
            self.facets.iter().cloned().chain(moved),
        )
    }

    /// Join with two new cone points.
    pub fn suspension(&self) -> SimplicialComplex {
        let a = self.vertices().max().map_or(0, |v| v + 1);
        let b = a + 1;
        let facets = self.facets.iter().flat_map(|f| {
            [a, b].map(|p| Simplex(f.0.iter().copied().chain([p]).collect()))
        });
        let mut out = SimplicialComplex::from_facets(format!("S{}", self.name), facets);
        if self.is_empty() {
            out = SimplicialComplex::from_facets(format!("S{}", self.name), [Simplex::vertex(a), Simplex::vertex(b)]);
        }
        out
    }

    /// Parses the facet-list text format: one facet per line, vertex ids
    /// separated by spaces, `#` starting a comment line. Blank lines are skipped.
    pub fn parse_facet_list(name: impl Into<String>, text: &str) -> Result<SimplicialComplex, ComplexError> {
        let mut facets = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let vertices = trimmed
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<Vertex>().map_err(|_| ComplexError::Parse {
                        line,
                        message: format!("expected a non-negative integer vertex id, found {tok:?}"),
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            facets.push(facet_from_line(line, vertices)?);
        }
        Ok(SimplicialComplex::from_facets(name, facets))
    }

    /// Facets one per line, in global order.
    pub fn to_facet_list(&self) -> String {
        let mut out = String::new();
        for f in &self.facets {
            out.push_str(&f.0.iter().join(" "));
            out.push('\n');
        }
        out
    }

    /// Parses `{"name": str, "facets": [[int, ...], ...]}`. Facet positions
    /// (1-based) stand in for line numbers in errors.
    pub fn from_json(text: &str) -> Result<SimplicialComplex, ComplexError> {
        let doc: ComplexDocument = serde_json::from_str(text).map_err(|e| ComplexError::Json(e.to_string()))?;
        let facets = doc
            .facets
            .into_iter()
            .enumerate()
            .map(|(i, f)| facet_from_line(i + 1, f))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SimplicialComplex::from_facets(doc.name, facets))
    }

    pub fn to_json(&self) -> String {
        let doc = ComplexDocument {
            name: self.name.clone(),
            facets: self.facets.iter().map(|f| f.0.clone()).collect(),
        };
        serde_json::to_string(&doc).expect("plain data serializes")
    }

    pub fn barycentric_subdivision(&self) -> BarycentricSubdivision {
        BarycentricSubdivision::new(Arc::new(self.clone()))
    }
}

fn facet_from_line(line: usize, vertices: Vec<Vertex>) -> Result<Simplex, ComplexError> {
    if vertices.is_empty() {
        return Err(ComplexError::EmptyFacet { line });
    }
    let mut sorted = vertices;
    sorted.sort_unstable();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(ComplexError::RepeatedVertex { line, vertex: w[0] });
    }
    Ok(Simplex(sorted))
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.facets == other.facets
    }
}

impl Eq for SimplicialComplex {}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimplicialComplex")
            .field("name", &self.name)
            .field("f_vector", &self.f_vector())
            .finish()
    }
}

/// The barycentric subdivision `X'` of a complex `X`.
///
/// The barycenter of `σ` is the vertex whose id is the global id of `σ` in
/// `X`, so derived vertices sort by (dimension, lexicographic) of the base
/// simplex and every derived simplex lists its flag in increasing order.
#[derive(Clone, Debug)]
pub struct BarycentricSubdivision {
    base: Arc<SimplicialComplex>,
    derived: Arc<SimplicialComplex>,
}

impl BarycentricSubdivision {
    pub fn new(base: Arc<SimplicialComplex>) -> Self {
        let mut all: HashSet<Simplex> = HashSet::new();
        for facet in base.facets() {
            for order in facet.vertices().iter().copied().permutations(facet.vertices().len()) {
                let flag = full_flag(&base, &order);
                let mut stack = vec![flag];
                while let Some(s) = stack.pop() {
                    if all.insert(s.clone()) {
                        stack.extend(s.boundary().map(|(_, f)| f));
                    }
                }
            }
        }
        let derived = SimplicialComplex::from_closed_set(format!("{}'", base.name()), all);
        Self { base, derived: Arc::new(derived) }
    }

    pub fn base(&self) -> &Arc<SimplicialComplex> {
        &self.base
    }

    pub fn derived(&self) -> &Arc<SimplicialComplex> {
        &self.derived
    }

    /// Barycenter of a base simplex, as a derived vertex id.
    pub fn barycenter(&self, s: &Simplex) -> Option<Vertex> {
        self.base.id(s).map(|g| g as Vertex)
    }

    /// The base simplices `σ₀ < … < σ_p` of a derived simplex.
    pub fn flag<'a>(&'a self, derived: &'a Simplex) -> impl Iterator<Item = &'a Simplex> + 'a {
        derived.vertices().iter().map(|&v| self.base.simplex(v as usize))
    }

    /// The minimal flag entry `σ₀`.
    pub fn leading(&self, derived: &Simplex) -> &Simplex {
        self.base.simplex(derived.vertices()[0] as usize)
    }

    /// Id in the base of the minimal flag entry.
    pub fn leading_id(&self, derived: &Simplex) -> usize {
        derived.vertices()[0] as usize
    }

    /// `D(σ)` and `∂D(σ)` as subcomplexes of `X'`.
    pub fn dual_cell(&self, center: &Simplex) -> Result<DualCell, ComplexError> {
        let Some(cid) = self.base.id(center) else {
            return Err(ComplexError::NotInComplex(center.clone()));
        };
        let mut cell = HashSet::new();
        let mut boundary = HashSet::new();
        for s in self.derived.all_simplices() {
            let lead = self.leading(s);
            if center.is_face_of(lead) {
                cell.insert(s.clone());
                if self.leading_id(s) != cid {
                    boundary.insert(s.clone());
                }
            }
        }
        Ok(DualCell {
            center: center.clone(),
            cell: SimplicialComplex::from_closed_set(format!("D({center})"), cell),
            boundary: SimplicialComplex::from_closed_set(format!("dD({center})"), boundary),
        })
    }

    /// The subdivision chain map `C(X) → C(X')`,
    /// `sd(σ) = (-1)^p sd(∂σ) * σ̂` with the barycenter appended last.
    ///
    /// The coefficient of the full flag `σ₀ < … < σ_p = σ` is
    /// `∏_{k=1..p} (-1)^k [σ_k : σ_{k-1}]`.
    pub fn subdivision_chain_map(&self) -> ChainMap {
        let source = self.base.chain_complex();
        let target = self.derived.chain_complex();
        let mut components = BTreeMap::new();
        for d in 0..self.base.levels.len() {
            let rows = self.derived.simplices(d).len();
            let cols = self.base.simplices(d).iter().map(|s| self.subdivide(s)).collect();
            components.insert(d as i64, SparseMatrix::from_columns(rows, cols));
        }
        ChainMap::new_unchecked(source, target, components).expect("subdivision shapes")
    }

    /// `sd(σ)` as `(derived index in dimension, coefficient)` pairs.
    pub(crate) fn subdivide(&self, s: &Simplex) -> Vec<(usize, BigInt)> {
        s.vertices()
            .iter()
            .copied()
            .permutations(s.vertices().len())
            .map(|order| {
                let flag = full_flag(&self.base, &order);
                let idx = self.derived.index_in_dim(&flag).expect("flag of a base simplex");
                (idx, BigInt::from(flag_sign(&order)))
            })
            .collect()
    }

    /// Last-vertex map `X' → X`: `σ̂ ↦ max vertex of σ`.
    pub fn last_vertex_map(&self) -> SimplicialMap {
        let vertex_map = self
            .base
            .all_simplices()
            .enumerate()
            .map(|(g, s)| (g as Vertex, s.max_vertex()))
            .collect();
        SimplicialMap::new(self.derived.clone(), self.base.clone(), vertex_map)
            .expect("the last-vertex map is simplicial")
    }
}

/// Flag `{v0} < {v0,v1} < …` from a vertex ordering, as a derived simplex.
fn full_flag(base: &SimplicialComplex, order: &[Vertex]) -> Simplex {
    let mut ids = Vec::with_capacity(order.len());
    let mut acc: Vec<Vertex> = Vec::with_capacity(order.len());
    for &v in order {
        let pos = acc.partition_point(|&w| w < v);
        acc.insert(pos, v);
        ids.push(base.id(&Simplex(acc.clone())).expect("faces of a simplex are present") as Vertex);
    }
    Simplex(ids)
}

/// `∏_k (-1)^k [σ_k : σ_{k-1}]` for the flag generated by `order`.
pub(crate) fn flag_sign(order: &[Vertex]) -> i64 {
    let mut sign = 1;
    let mut acc: Vec<Vertex> = Vec::with_capacity(order.len());
    for (k, &v) in order.iter().enumerate() {
        let pos = acc.partition_point(|&w| w < v);
        acc.insert(pos, v);
        if (k + pos) % 2 == 1 {
            sign = -sign;
        }
    }
    sign
}

/// Dual cell `D(σ, X)` with its boundary, as subcomplexes of `X'`.
#[derive(Clone, Debug)]
pub struct DualCell {
    pub center: Simplex,
    pub cell: SimplicialComplex,
    pub boundary: SimplicialComplex,
}

/// `D(σ, X)` computed through a fresh subdivision of `X`.
pub fn dual_cell(x: &SimplicialComplex, s: &Simplex) -> Result<DualCell, ComplexError> {
    x.barycentric_subdivision().dual_cell(s)
}

/// A vertex map between complexes carrying simplices to simplices.
#[derive(Clone, Debug)]
pub struct SimplicialMap {
    source: Arc<SimplicialComplex>,
    target: Arc<SimplicialComplex>,
    vertex_map: BTreeMap<Vertex, Vertex>,
}

impl SimplicialMap {
    /// Validates that every source vertex is mapped and every image vertex set
    /// is a simplex of the target.
    pub fn new(
        source: Arc<SimplicialComplex>,
        target: Arc<SimplicialComplex>,
        vertex_map: BTreeMap<Vertex, Vertex>,
    ) -> Result<Self, ComplexError> {
        if let Some(v) = source.vertices().find(|v| !vertex_map.contains_key(v)) {
            return Err(ComplexError::UnmappedVertex(v));
        }
        let map = Self { source, target, vertex_map };
        for f in map.source.facets() {
            let image = map.image(f);
            if !map.target.contains(&image) {
                return Err(ComplexError::NotSimplicial { simplex: f.clone(), image });
            }
        }
        Ok(map)
    }

    pub fn source(&self) -> &Arc<SimplicialComplex> {
        &self.source
    }

    pub fn target(&self) -> &Arc<SimplicialComplex> {
        &self.target
    }

    pub fn vertex_map(&self) -> &BTreeMap<Vertex, Vertex> {
        &self.vertex_map
    }

    /// Image vertex set (possibly of lower dimension).
    pub fn image(&self, s: &Simplex) -> Simplex {
        let mut v: Vec<Vertex> = s.vertices().iter().map(|x| self.vertex_map[x]).collect();
        v.sort_unstable();
        v.dedup();
        Simplex(v)
    }

    /// Oriented image: `Some((sign, image))` when non-degenerate.
    pub fn oriented_image(&self, s: &Simplex) -> Option<(i64, Simplex)> {
        let imgs: Vec<Vertex> = s.vertices().iter().map(|x| self.vertex_map[x]).collect();
        let sign = permutation_sign(&imgs)?;
        let mut sorted = imgs;
        sorted.sort_unstable();
        Some((sign, Simplex(sorted)))
    }

    /// Induced map on simplicial chains; degenerate images go to 0.
    pub fn chain_map(&self) -> ChainMap {
        let source = self.source.chain_complex();
        let target = self.target.chain_complex();
        let mut components = BTreeMap::new();
        for d in 0..self.source.levels.len() {
            let rows = self.target.simplices(d).len();
            let cols = self
                .source
                .simplices(d)
                .iter()
                .map(|s| match self.oriented_image(s) {
                    Some((sign, img)) => vec![(self.target.index_in_dim(&img).unwrap(), BigInt::from(sign))],
                    None => Vec::new(),
                })
                .collect();
            components.insert(d as i64, SparseMatrix::from_columns(rows, cols));
        }
        ChainMap::new_unchecked(source, target, components).expect("chain map shapes")
    }

    pub fn is_injective_on_vertices(&self) -> bool {
        let images: BTreeSet<Vertex> = self.vertex_map.values().copied().collect();
        images.len() == self.vertex_map.len()
    }
}

/// Sign of the permutation sorting `v`, or `None` if `v` repeats a value.
fn permutation_sign(v: &[Vertex]) -> Option<i64> {
    let mut inversions = 0usize;
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            match v[i].cmp(&v[j]) {
                Ordering::Equal => return None,
                Ordering::Greater => inversions += 1,
                Ordering::Less => {}
            }
        }
    }
    Some(if inversions % 2 == 0 { 1 } else { -1 })
}
