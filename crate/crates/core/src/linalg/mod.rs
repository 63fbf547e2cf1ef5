//! Dense exact linear algebra over [`Cyclotomic`].

mod matrix;
mod subspace;
mod symplectic;

use thiserror::Error;

pub use matrix::{ExactMatrix, ExactVector, Rref};
pub use subspace::Subspace;
pub use symplectic::{
    averaging_projector, find_invariant_lagrangian, fixed_space, multiplicative_order, restrict, spin, symplectic_basis,
    LagrangianSearch, Restriction, SymplecticSpace,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("subspace is not invariant under generator {0}")]
    NotInvariant(usize),
    #[error("bilinear form is degenerate")]
    DegenerateForm,
    #[error("form is not antisymmetric")]
    NotAntisymmetric,
    #[error("empty input")]
    Empty,
    #[error("ragged rows")]
    Ragged,
}

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<(), LinalgError> {
    if expected == found {
        Ok(())
    } else {
        Err(LinalgError::DimensionMismatch { expected, found })
    }
}
