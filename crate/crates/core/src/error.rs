use thiserror::Error;

/// Errors shared by every operation in the crate.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    /// Malformed input text; `line` is 1-based.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// An argument violates a documented precondition.
    #[error("invalid parameter: {0}")]
    InvalidParam(String),

    /// An exact-enumeration routine would exceed its documented cap.
    #[error("enumeration cap exceeded: {0}")]
    CapExceeded(String),

    /// Degenerate input (e.g. a fractional cover putting mass >= 1 on the empty set).
    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// A contract inequality required by the caller does not hold; the
    /// message names the failed inequality.
    #[error("contract violation: {0}")]
    Contract(String),
}

pub type Result<T> = std::result::Result<T, Error>;
