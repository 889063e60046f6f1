use thiserror::Error;

use crate::pip::Violation;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown element id `{0}`")]
    UnknownElement(String),

    #[error("duplicate element id `{0}`")]
    DuplicateElement(String),

    #[error("invalid PIP: {0}")]
    InvalidPip(Violation),

    #[error("not a consistent order ideal: {0}")]
    NotAnIdeal(String),

    #[error("{what} cap of {cap} exceeded")]
    CapExceeded { what: &'static str, cap: usize },

    #[error("invalid cube complex: {0}")]
    InvalidComplex(String),

    #[error("invalid reconfigurable system: {0}")]
    InvalidSystem(String),

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("state complex is not CAT(0): {0}")]
    NotCat0(String),

    #[error("unsupported metric: {0}")]
    UnsupportedMetric(String),

    #[error("plan verification failed: {0}")]
    PlanRejected(String),

    #[error("count mismatch: {0}")]
    CountMismatch(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
