use thiserror::Error;

/// Errors produced by the library.
///
/// `InvalidInput` covers precondition violations on caller-supplied data
/// (exit code 1 territory for the CLI); `ContractViolation` marks an internal
/// invariant that a verification pass found broken (exit code 2 territory).
#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {v} out of range for graph on {n} vertices")]
    InvalidVertex { v: usize, n: usize },

    #[error("duplicate edge ({i},{j}) in graph description")]
    DuplicateEdge { i: usize, j: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("resource cap exceeded in {what} (cap {cap})")]
    CapExceeded { what: &'static str, cap: u64 },

    #[error("contract violation: {0}")]
    ContractViolation(String),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn contract(msg: impl Into<String>) -> Self {
        Error::ContractViolation(msg.into())
    }
}
