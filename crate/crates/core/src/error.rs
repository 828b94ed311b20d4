use thiserror::Error;

use crate::code::ValidationReport;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid code: {0}")]
    Invalid(ValidationReport),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("budget exceeded: {what} needs {needed}, limit is {limit}")]
    Budget {
        what: &'static str,
        needed: u64,
        limit: u64,
    },
    #[error("move not applicable: {0}")]
    Precondition(String),
    #[error("forbidden move {0} not allowed")]
    Policy(String),
    #[error("malformed diagram: {0}")]
    Structure(String),
    #[error("structure mismatch: {0}")]
    Mismatch(String),
    #[error("normalization undefined for the zero polynomial")]
    ZeroNormalization,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
