use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Input outside the domain where a formula or routine applies.
    #[error("domain error: {0}")]
    Domain(String),
    /// Malformed request (mismatched levels, inverted ranges, bad flags).
    #[error("usage error: {0}")]
    Usage(String),
    /// A factored depth is too large for exact evaluation.
    #[error("depth {base}^{exp} exceeds the exact-evaluation threshold; use gs_eval_bounded")]
    OversizedDepth { base: u64, exp: u32 },
    /// An internal consistency check failed. Always a bug or a corrupted input.
    #[error("internal consistency failure: {0}")]
    Internal(String),
    /// A serialized certificate does not replay to its recorded contents.
    #[error("replay mismatch: {0}")]
    Replay(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn internal(msg: impl Into<String>) -> Error {
    Error::Internal(msg.into())
}
