use binomdiv_oracle::OracleError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("resource limit: {0}")]
    ResourceLimit(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("arithmetic overflow: {0}")]
    Overflow(String),
    #[error("unknown {kind} `{name}` (available: {available})")]
    UnknownStrategy {
        kind: &'static str,
        name: String,
        available: String,
    },
    #[error("parse error: {0}")]
    Parse(String),
    /// A statement that is a proved theorem came out false. Always a bug.
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

impl Error {
    /// Errors caused by the inputs or environment rather than the mathematics.
    pub fn is_usage(&self) -> bool {
        !matches!(
            self,
            Error::TheoremViolation(_) | Error::Oracle(OracleError::IntegrityViolation { .. })
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
