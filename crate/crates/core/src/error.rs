use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("root {index} is the zero vector")]
    ZeroRoot { index: usize },

    /// Indices are 1-based, matching the usual alpha_1..alpha_n numbering.
    #[error("roots {0} and {1} are not orthogonal")]
    NotOrthogonal(usize, usize),

    #[error("expected {expected} multiplicities, found {found}")]
    MultiplicityCount { expected: usize, found: usize },

    #[error("{roots} pairwise orthogonal roots cannot live in dimension {dim}")]
    TooManyRoots { roots: usize, dim: usize },

    #[error("exact division by linear form left a nonzero remainder (arithmetic bug)")]
    InexactDivision,

    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("gamma function pole at argument {0}")]
    GammaPole(String),

    #[error("series did not converge within {0} terms")]
    NonConvergence(usize),

    #[error("quadrature failure: {0}")]
    Quadrature(String),

    #[error("point {point} is outside the numeric domain of {function}")]
    Domain { function: String, point: String },

    #[error("{function} does not provide derivative order {order}")]
    DerivativeOrder { function: String, order: usize },

    #[error("operators belong to different subsystems or multiplicities")]
    SubsystemMismatch,

    #[error("verification failure: {0}")]
    Verification(String),
}

impl Error {
    pub(crate) fn parse(column: usize, message: impl Into<String>) -> Self {
        Error::Parse { column, message: message.into() }
    }

    pub(crate) fn invalid(message: impl Into<String>) -> Self {
        Error::InvalidParameter(message.into())
    }
}

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
