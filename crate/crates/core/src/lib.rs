//! Integral chain complexes over simplicial complexes, assembly and duality.

pub mod chain;
pub mod complex;
pub mod duality;
pub mod fixtures;
pub mod linv;
pub mod matrix;
pub mod obstruction;
pub mod snf;
pub mod zx;

pub use chain::{ChainMap, HomologyGroup, HomologySummary, IntChainComplex};
pub use complex::{BarycentricSubdivision, DualCell, Simplex, SimplicialComplex, SimplicialMap};
pub use matrix::{IntMatrix, SparseMatrix};

/// Any error raised by this crate.
#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Complex(#[from] complex::ComplexError),
    #[error(transparent)]
    Chain(#[from] chain::ChainError),
    #[error(transparent)]
    Zx(#[from] zx::ZxError),
    #[error(transparent)]
    Duality(#[from] duality::DualityError),
    #[error(transparent)]
    Obstruction(#[from] obstruction::ObstructionError),
    #[error(transparent)]
    Form(#[from] linv::FormError),
}
