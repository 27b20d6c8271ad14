use std::path::PathBuf;

/// Errors produced anywhere in the hashing, retrieval and evaluation pipeline.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Malformed arguments to a geometric or code operation.
    #[error("invalid input: {0}")]
    Input(String),

    /// Parameter combination that cannot be satisfied (e.g. more prototypes than trajectories).
    #[error("invalid configuration: {0}")]
    Config(String),

    /// Corrupt, truncated or version-mismatched artifact bytes.
    #[error("persistence error: {0}")]
    Persistence(String),

    #[error("evaluation error: {0}")]
    Evaluation(String),

    /// A value that can only be produced by a corrupted codebook or index.
    #[error("internal error: {0}")]
    Internal(String),

    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
