use thiserror::Error;

/// Errors surfaced by the exact pipeline.
#[derive(Debug, Error)]
pub enum Error {
    /// The requested domain is empty (e.g. a prime table below 2).
    #[error("empty domain: {0}")]
    EmptyDomain(String),

    /// An input sequence does not cover the indices an operation needs.
    #[error("incomplete input: {0}")]
    IncompleteInput(String),

    /// A matrix family was paired with a sequence of the wrong role.
    #[error("sequence role mismatch: {0}")]
    RoleMismatch(String),

    /// Exhaustive subset enumeration refused above the configured bound.
    #[error("order {order} exceeds the exhaustive-enumeration bound {bound}")]
    TooLarge { order: usize, bound: usize },

    /// A serialized artifact failed to parse.
    #[error("malformed data: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
