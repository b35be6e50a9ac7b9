use thiserror::Error;

/// Errors raised while building, reading or transforming complexes.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown vertex {0}")]
    UnknownVertex(u64),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid complex: {0}")]
    Invariant(String),

    #[error("complex is disconnected")]
    Disconnected,

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("interval is not flat: vertex {vertex} has {rho} neighbours closer to the basepoint")]
    NonFlatInterval { vertex: u64, rho: usize },

    #[error("invalid disk spec: {0}")]
    InvalidSpec(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
