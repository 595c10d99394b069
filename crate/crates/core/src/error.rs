use thiserror::Error;

/// Errors produced by the core library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("time series must contain at least one value")]
    EmptySeries,

    #[error("non-finite value {value} at position {index}")]
    NonFinite { index: usize, value: f64 },

    #[error("invalid weights: {0}")]
    InvalidWeights(String),

    #[error("invalid policy: {0}")]
    InvalidPolicy(String),

    #[error("barycenter subset must not be empty")]
    EmptySubset,

    #[error("dataset must contain at least one instance")]
    EmptyDataset,

    #[error("unknown class label `{0}`")]
    UnknownLabel(String),

    #[error("index {index} out of range for {len} elements")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("probability matrix mismatch: {0}")]
    ShapeMismatch(String),

    #[error("invalid probability matrix: {0}")]
    InvalidProbabilities(String),

    #[error("I/O error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
