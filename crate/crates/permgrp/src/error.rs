//! Error type for the permutation-group engine.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum PermError {
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("not a permutation: {0}")]
    NotPermutation(String),
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("search budget exhausted: {0}")]
    Budget(String),
    #[error("action is not XOR-linear: {0}")]
    NotLinear(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("JSON error: {0}")]
    Json(String),
}

pub type PermResult<T> = Result<T, PermError>;
