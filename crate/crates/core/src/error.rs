use thiserror::Error;

/// Errors raised by the toolkit's constructors and checks.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GimError {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix size mismatch: {left:?} vs {right:?}")]
    SizeMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("index ({i}, {j}) out of range for size {size}")]
    IndexOutOfRange { size: usize, i: usize, j: usize },

    #[error("rank parameter n = {n} out of range (need n >= {min})")]
    RankOutOfRange { n: usize, min: usize },

    #[error("parameter must be nonzero")]
    ZeroParameter,

    #[error("forbidden parameter value {value}: {reason}")]
    ForbiddenParameter { value: String, reason: String },

    #[error("tuple constraint violated: {0}")]
    TupleConstraint(String),

    #[error("wrong Chevalley family: expected {expected}, got {found}")]
    WrongFamily { expected: char, found: char },

    #[error("invalid rational literal {0:?}")]
    ParseRational(String),

    #[error("repeated root {0} in quotient polynomial")]
    RepeatedRoot(String),

    #[error("central coefficient must vanish, found {0}")]
    NonzeroCentral(String),

    #[error("coefficient matrices must have trace zero")]
    NonzeroTrace,

    #[error("invalid job: {0}")]
    InvalidJob(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, GimError>;

impl From<std::io::Error> for GimError {
    fn from(e: std::io::Error) -> Self {
        GimError::Io(e.to_string())
    }
}

impl From<serde_json::Error> for GimError {
    fn from(e: serde_json::Error) -> Self {
        GimError::Io(e.to_string())
    }
}
