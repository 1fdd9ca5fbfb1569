use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("enumeration budget exceeded: {0}")]
    Budget(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid gluing: {0}")]
    Gluing(String),
    #[error("realization failed: {0}")]
    Realization(String),
}

pub type Result<T> = std::result::Result<T, Error>;
