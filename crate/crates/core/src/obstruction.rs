//! Local-to-global certificates: the homology-manifold test, Poincaré pairs of
//! dual cells, the cone of the duality map with its per-simplex defects, and
//! the structure defect of a simplicial map into a subdivision.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::chain::{ChainError, HomologySummary};
use crate::complex::{BarycentricSubdivision, ComplexError, Simplex, SimplicialComplex, SimplicialMap};
use crate::duality::{duality_map, fundamental_cycle, DualityError, Orientation};
use crate::zx::{label_derived_chains, ZXComplex, ZXMorphism, ZxError};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ObstructionError {
    #[error("complex is empty")]
    Empty,
    #[error("facet {facet} has dimension {}, expected {expected}", .facet.dim())]
    NotPure { facet: Simplex, expected: usize },
    #[error("map target is not the barycentric subdivision of {0}")]
    NotIntoSubdivision(String),
    #[error("local cones are acyclic but the assembled cone is not")]
    LocalWithoutGlobal,
    #[error(transparent)]
    Duality(#[from] DualityError),
    #[error(transparent)]
    Zx(#[from] ZxError),
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

fn simplex_json(s: &Simplex) -> Value {
    json!(s.vertices())
}

fn check_pure(x: &SimplicialComplex, n: usize) -> Result<(), ObstructionError> {
    if x.is_empty() {
        return Err(ObstructionError::Empty);
    }
    if let Some(f) = x.facets().iter().find(|f| f.dim() != n) {
        return Err(ObstructionError::NotPure { facet: f.clone(), expected: n });
    }
    Ok(())
}

/// Reduced homology of `S^d`; `d = -1` is the empty sphere.
pub fn sphere_reduced_homology(d: i64) -> HomologySummary {
    HomologySummary::from_groups([(d, crate::chain::HomologyGroup::free(1))])
}

/// Outcome of [`homology_manifold_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ManifoldVerdict {
    pub n: usize,
    /// Simplices whose link is not a homology sphere, with the link's reduced
    /// homology (degree `-1` stands for the empty link).
    pub defects: BTreeMap<Simplex, HomologySummary>,
}

impl ManifoldVerdict {
    pub fn is_manifold(&self) -> bool {
        self.defects.is_empty()
    }

    pub fn to_json(&self) -> Value {
        let defects: Vec<Value> = self
            .defects
            .iter()
            .map(|(s, h)| json!({ "simplex": simplex_json(s), "link_reduced_homology": h.to_json() }))
            .collect();
        json!({ "n": self.n, "homology_manifold": self.is_manifold(), "defects": defects })
    }
}

/// Every simplex link has the reduced integral homology of `S^{n-|σ|-1}`.
pub fn homology_manifold_check(x: &SimplicialComplex, n: usize) -> Result<ManifoldVerdict, ObstructionError> {
    check_pure(x, n)?;
    let simplices: Vec<&Simplex> = x.all_simplices().collect();
    let results: Vec<(Simplex, HomologySummary)> = simplices
        .into_par_iter()
        .map(|s| {
            let link = x.link(s)?;
            let h = link.augmented_chain_complex().homology()?;
            Ok((s.clone(), h))
        })
        .collect::<Result<_, ObstructionError>>()?;
    let defects = results
        .into_iter()
        .filter(|(s, h)| *h != sphere_reduced_homology(n as i64 - s.dim() as i64 - 1))
        .collect();
    Ok(ManifoldVerdict { n, defects })
}

/// Both sides of the Lefschetz duality comparison for one dual cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairCheck {
    pub simplex: Simplex,
    /// `H_r(D(σ), ∂D(σ))`.
    pub relative_homology: HomologySummary,
    /// `H^{m-r}(D(σ))` placed in degree `r`, with `m = n - |σ|`.
    pub dual_cohomology: HomologySummary,
}

impl PairCheck {
    pub fn holds(&self) -> bool {
        self.relative_homology == self.dual_cohomology
    }
}

/// Whether `(D(σ), ∂D(σ))` satisfies `H_r(D, ∂D) ≅ H^{n-|σ|-r}(D)`.
pub fn poincare_pair_check(x: &Arc<SimplicialComplex>, n: usize, s: &Simplex) -> Result<PairCheck, ObstructionError> {
    fundamental_cycle(x, n)?;
    let sd = BarycentricSubdivision::new(x.clone());
    pair_check_with(&sd, &label_derived_chains(&sd), n, s)
}

/// [`poincare_pair_check`] for every simplex, sharing one subdivision.
pub fn poincare_pair_checks(x: &Arc<SimplicialComplex>, n: usize) -> Result<BTreeMap<Simplex, PairCheck>, ObstructionError> {
    fundamental_cycle(x, n)?;
    let sd = BarycentricSubdivision::new(x.clone());
    let labelled = label_derived_chains(&sd);
    let simplices: Vec<&Simplex> = x.all_simplices().collect();
    simplices
        .into_par_iter()
        .map(|s| pair_check_with(&sd, &labelled, n, s).map(|c| (s.clone(), c)))
        .collect()
}

fn pair_check_with(
    sd: &BarycentricSubdivision,
    labelled: &ZXComplex,
    n: usize,
    s: &Simplex,
) -> Result<PairCheck, ObstructionError> {
    let relative_homology = labelled.local_complex(s)?.homology()?;
    let cell = sd.dual_cell(s)?.cell;
    let m = n as i64 - s.dim() as i64;
    // dualize(0) puts H^k in degree -k; move it to degree m - k.
    let dual_cohomology = cell.chain_complex().dualize(0).homology()?.shifted(m);
    Ok(PairCheck { simplex: s.clone(), relative_homology, dual_cohomology })
}

/// Homology of the cone of the duality map, globally and per simplex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionReport {
    pub n: usize,
    pub global_homology: HomologySummary,
    /// Simplices whose local cone has nonzero homology.
    pub local_defects: BTreeMap<Simplex, HomologySummary>,
    pub globally_acyclic: bool,
    pub locally_acyclic: bool,
}

impl ObstructionReport {
    pub fn to_json(&self) -> Value {
        let defects: Vec<Value> = self
            .local_defects
            .iter()
            .map(|(s, h)| json!({ "simplex": simplex_json(s), "homology": h.to_json() }))
            .collect();
        json!({
            "n": self.n,
            "global_homology": self.global_homology.to_json(),
            "local_defects": defects,
            "globally_acyclic": self.globally_acyclic,
            "locally_acyclic": self.locally_acyclic,
        })
    }
}

/// The labelled cone of `Φ`, shifted down by one, and its report.
pub fn obstruction_complex(
    x: &Arc<SimplicialComplex>,
    n: usize,
    orientation: Orientation,
) -> Result<(ZXComplex, ObstructionReport), ObstructionError> {
    let package = duality_map(x, n, orientation)?;
    let cone = package.phi.mapping_cone().shift(1);
    let global_homology = cone.assemble().homology()?;
    let local = package.phi.is_local_equivalence()?;
    let local_defects: BTreeMap<Simplex, HomologySummary> =
        local.defects.into_iter().map(|(s, h)| (s, h.shifted(-1))).collect();
    let report = ObstructionReport {
        n,
        globally_acyclic: global_homology.is_zero(),
        locally_acyclic: local_defects.is_empty(),
        global_homology,
        local_defects,
    };
    if report.locally_acyclic && !report.globally_acyclic {
        return Err(ObstructionError::LocalWithoutGlobal);
    }
    Ok((cone, report))
}

/// One row of a [`StructureDefectReport`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureDefectEntry {
    /// `H_*(N(σ), ∂N(σ))`.
    pub preimage_relative: HomologySummary,
    /// `H_*(D(σ,K), ∂D(σ,K))`.
    pub cell_relative: HomologySummary,
    /// Homology of the local cone, shifted down by one.
    pub cone: HomologySummary,
}

impl StructureDefectEntry {
    pub fn is_defect(&self) -> bool {
        !self.cone.is_zero()
    }

    pub fn relative_match(&self) -> bool {
        self.preimage_relative == self.cell_relative
    }
}

/// Per-simplex comparison of the preimage dissection of `N` with the dual
/// cells of `K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureDefectReport {
    pub entries: BTreeMap<Simplex, StructureDefectEntry>,
    pub global_homology: HomologySummary,
}

impl StructureDefectReport {
    pub fn defects(&self) -> impl Iterator<Item = (&Simplex, &StructureDefectEntry)> {
        self.entries.iter().filter(|(_, e)| e.is_defect())
    }

    pub fn is_defect_free(&self) -> bool {
        self.defects().next().is_none()
    }

    pub fn globally_acyclic(&self) -> bool {
        self.global_homology.is_zero()
    }

    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = self
            .entries
            .iter()
            .map(|(s, e)| {
                let mut m = Map::new();
                m.insert("simplex".into(), simplex_json(s));
                m.insert("preimage_relative_homology".into(), e.preimage_relative.to_json());
                m.insert("cell_relative_homology".into(), e.cell_relative.to_json());
                m.insert("cone_homology".into(), e.cone.to_json());
                m.insert("relative_match".into(), json!(e.relative_match()));
                m.insert("defect".into(), json!(e.is_defect()));
                Value::Object(m)
            })
            .collect();
        json!({
            "entries": entries,
            "global_homology": self.global_homology.to_json(),
            "globally_acyclic": self.globally_acyclic(),
            "defect_free": self.is_defect_free(),
        })
    }
}

/// Measures how far the point inverses of `h: N → K'` are from acyclic.
///
/// Each simplex of `N` is labelled by the least entry of its image flag, which
/// dissects `N` into `N(σ) = h⁻¹D(σ,K)`. The labelled cone of the induced map
/// `C(N) → C(K')` is compared label by label.
pub fn structure_defect(h: &SimplicialMap, k: &Arc<SimplicialComplex>) -> Result<StructureDefectReport, ObstructionError> {
    let sd = BarycentricSubdivision::new(k.clone());
    if **sd.derived() != **h.target() {
        return Err(ObstructionError::NotIntoSubdivision(k.name().to_string()));
    }
    let n_complex = h.source();
    let induced = h.chain_map();
    let chain = induced.source().clone();
    let labels = chain
        .degrees()
        .map(|r| {
            let ls = n_complex
                .simplices(r as usize)
                .iter()
                .map(|s| h.image(s).vertices()[0] as usize)
                .collect();
            (r, ls)
        })
        .collect();
    let source = ZXComplex::new(k.clone(), chain, labels)?;
    let target = label_derived_chains(&sd);
    let morphism = ZXMorphism::new(source.clone(), target.clone(), induced.components().clone())?;
    let global_homology = morphism.mapping_cone().shift(1).assemble().homology()?;
    let simplices: Vec<&Simplex> = k.all_simplices().collect();
    let entries = simplices
        .into_par_iter()
        .map(|s| {
            let local = morphism.local_component(s)?;
            let entry = StructureDefectEntry {
                preimage_relative: local.source().homology()?,
                cell_relative: local.target().homology()?,
                cone: local.cone_homology()?.shifted(-1),
            };
            Ok((s.clone(), entry))
        })
        .collect::<Result<BTreeMap<_, _>, ObstructionError>>()?;
    Ok(StructureDefectReport { entries, global_homology })
}
