//! Error types for the exact-arithmetic core.

use thiserror::Error;

/// Errors produced by core linear algebra and lattice operations.
#[derive(Debug, Error)]
pub enum CoreError {
    /// Matrix dimensions do not fit the requested operation.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// A Gram matrix was expected to be symmetric but is not.
    #[error("matrix is not symmetric")]
    NotSymmetric,

    /// The operation requires a non-degenerate lattice.
    #[error("lattice is degenerate (determinant zero)")]
    Degenerate,

    /// A matrix expected to be invertible is singular.
    #[error("matrix is singular")]
    Singular,

    /// Supplied generators do not lie in the lattice.
    #[error("vector is not an element of the lattice: {0}")]
    NotInLattice(String),

    /// Malformed JSON input.
    #[error("malformed lattice JSON: {0}")]
    Json(String),
}

/// Convenience alias for results in this crate.
pub type CoreResult<T> = Result<T, CoreError>;
