use thiserror::Error;

/// Errors reported by every fallible operation in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed line in a graph or decomposition file.
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    /// Malformed formula text.
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    /// Unbound or wrongly sorted variable.
    #[error("scope error: {0}")]
    Scope(String),
    /// Well-formed input that violates a semantic rule.
    #[error("{0}")]
    Semantic(String),
    /// The input exceeds the documented size envelope of an exact routine.
    #[error("envelope exceeded: {0}")]
    Envelope(String),
    /// A documented precondition does not hold.
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// A checked postcondition or oracle comparison failed.
    #[error("contract violated: {0}")]
    Contract(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn semantic<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Semantic(msg.into()))
}

pub(crate) fn envelope<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Envelope(msg.into()))
}

pub(crate) fn precondition<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Precondition(msg.into()))
}

pub(crate) fn contract<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Contract(msg.into()))
}
