use thiserror::Error;

/// Errors shared by all engine layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(String, String),
    #[error("index {index} is not valid in dimension {dim}")]
    InvalidIndex { index: usize, dim: String },
    #[error("jet order exceeded: {0}")]
    JetOrder(String),
    #[error("function is not a Fourier polynomial in time: {0}")]
    NonPeriodic(String),
    #[error("parity error: {0}")]
    Parity(String),
    #[error("tensor rank mismatch: {0}")]
    RankMismatch(String),
    #[error("tensor is not graded symmetric: {0}")]
    NotSymmetric(String),
    #[error("{line}:{column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("unknown builtin: {0}")]
    UnknownSpec(String),
    #[error("mode algebra lacks generator {0}")]
    MissingGenerator(String),
    #[error("insufficient margin: {0}")]
    InsufficientMargin(String),
    #[error("wrong dimension: {0}")]
    WrongDimension(String),
    #[error("auxiliary realization unavailable: {0}")]
    AuxMissing(String),
    #[error("family does not close: {0}")]
    NonClosure(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn parse(line: usize, column: usize, message: impl Into<String>) -> Error {
        Error::Parse { line, column, message: message.into() }
    }
}
