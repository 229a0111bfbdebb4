//! Error type for chamber computations.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum ChamberError {
    /// The lattice does not have signature (1, n−1).
    #[error("lattice is not hyperbolic: {0}")]
    NotHyperbolic(String),

    /// The controlling vector is unusable (wrong length, nonpositive norm).
    #[error("bad controlling vector: {0}")]
    BadControl(String),

    /// The vector lies in the opposite cone; negating it is the usual fix.
    #[error("vector lies outside the positive cone: {0}")]
    WrongCone(String),

    /// A precondition on the inputs fails.
    #[error("domain error: {0}")]
    Domain(String),

    /// The input vector is not reduced into the chamber.
    #[error("vector is not reduced: {0}")]
    NotReduced(String),

    /// The root search exceeded its tier budget without closing a chamber.
    #[error("chamber construction did not terminate: {0}")]
    NonTerminating(String),

    /// No integral vector pairs to 1 with every simple root.
    #[error("no Weyl vector: {0}")]
    NoWeylVector(String),

    #[error(transparent)]
    Core(#[from] exact_core::CoreError),

    #[error(transparent)]
    Enum(#[from] definite_enum::EnumError),
}

pub type ChamberResult<T> = Result<T, ChamberError>;
