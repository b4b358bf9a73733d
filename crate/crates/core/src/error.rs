use thiserror::Error;

/// Errors raised by the library. Variants are grouped by the kind of
/// precondition that failed so front ends can map them to exit codes.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("malformed simplicial data: {0}")]
    Malformed(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("insufficient stored range: {0}")]
    InsufficientRange(String),

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("truncation too small: {0}")]
    Truncation(String),

    #[error("invalid group data: {0}")]
    Group(String),

    #[error("invalid character table: {0}")]
    CharacterTable(String),

    #[error("not a representation: {0}")]
    NotRepresentation(String),

    #[error("action does not commute with the differential: {0}")]
    ActionNotChainMap(String),

    #[error("coefficient model invalid: {0}")]
    Coefficients(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("resource limit exceeded: {0}")]
    Resource(String),
}

pub type Result<T> = std::result::Result<T, Error>;
