use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MstdError {
    /// Input violates an operation's precondition (empty set, non-increasing
    /// sequence, malformed tuple, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// A dense kernel would need more bits than the configured diameter cap.
    #[error("capacity error: extent {extent} exceeds diameter cap {cap}")]
    Capacity { extent: u64, cap: u64 },

    #[error("parse error: {0}")]
    Parse(String),
}

impl MstdError {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        MstdError::Domain(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, MstdError>;
