use thiserror::Error;

/// Errors raised by the engines.
#[derive(Debug, Error)]
pub enum Error {
    /// A configured resource cap was exceeded. The computation is incomplete,
    /// no partial result is produced.
    #[error("resource limit exceeded: {what} ({observed} > {limit})")]
    ResourceLimit {
        what: String,
        observed: usize,
        limit: usize,
    },

    /// `pushforward_point` received a term that still mixes the last point
    /// with other indices.
    #[error("term {0} is not normalized for its last point")]
    NotNormalized(String),

    /// An exact linear system had no unique solution.
    #[error("singular linear system: {0}")]
    Singular(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
