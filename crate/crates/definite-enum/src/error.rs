use exact_core::error::CoreError;
use permgrp::PermError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum EnumError {
    #[error("form is not definite: {0}")]
    NotDefinite(String),
    #[error("bad norm argument: {0}")]
    BadNorm(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("search budget exhausted: {0}")]
    Budget(String),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error(transparent)]
    Perm(#[from] PermError),
}

pub type EnumResult<T> = Result<T, EnumError>;
