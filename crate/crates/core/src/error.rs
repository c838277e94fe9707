use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unknown unit tag `{0}`")]
    UnknownUnit(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// An argument outside the region where an operation is defined or reliable.
    #[error("domain error: {0}")]
    Domain(String),

    /// A special-function evaluation left the range of finite doubles.
    #[error("overflow while evaluating {0}")]
    Overflow(&'static str),

    #[error("analysis failed: {0}")]
    Analysis(String),

    /// An oracle configuration violates one of its guards.
    #[error("oracle configuration rejected: {reason} (suggestion: {suggestion})")]
    OracleConfig { reason: String, suggestion: String },

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("grid mismatch: {0}")]
    GridMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
