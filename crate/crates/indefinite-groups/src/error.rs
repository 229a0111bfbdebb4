//! Error type for isometry-group computations on indefinite lattices.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum GroupError {
    /// A matrix that should be an isometry of the given Gram matrix is not.
    #[error("matrix is not an isometry: {0}")]
    NotIsometry(String),

    /// A matrix that should preserve a lattice does not.
    #[error("matrix does not preserve the lattice: {0}")]
    NotPreserving(String),

    /// A precondition on the inputs fails (dimensions, signature, parity…).
    #[error("domain error: {0}")]
    Domain(String),

    /// An orbit walk exceeded its node budget; the partial state is reported
    /// so the caller can raise the cap and resume.
    #[error("orbit budget exceeded: {0}")]
    OrbitBudget(String),

    /// The reflective hull of the lattice did not close up within the
    /// candidate budget, so the lattice is (as far as the search can tell)
    /// not reflective and the polyhedral base case does not apply.
    #[error("reflective chamber did not close: {0}")]
    NotReflective(String),

    /// No splitting norm admitted a usable orthogonal decomposition within
    /// the search bound.
    #[error("no splitting vector found: {0}")]
    NoSplitting(String),

    /// The requested subspace is not totally isotropic and saturated.
    #[error("not a saturated totally isotropic subspace: {0}")]
    NotIsotropic(String),

    /// Structural failure while assembling the block basis for an
    /// isotropic-subspace computation.
    #[error("block decomposition failed: {0}")]
    BlockStructure(String),

    /// The operation is outside the supported range of signatures or ranks.
    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error(transparent)]
    Core(#[from] exact_core::CoreError),

    #[error(transparent)]
    Enum(#[from] definite_enum::EnumError),

    #[error(transparent)]
    Chamber(#[from] hyperbolic_chamber::ChamberError),
}

pub type GroupResult<T> = Result<T, GroupError>;
