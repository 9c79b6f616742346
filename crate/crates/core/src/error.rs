use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("{what} cap of {cap} exceeded (estimate or partial count: {reached})")]
    CapExceeded { what: &'static str, cap: u64, reached: String },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("field mismatch: q = {left} vs q = {right}")]
    FieldMismatch { left: u64, right: u64 },

    #[error("inverse of zero")]
    ZeroInverse,

    #[error("{root} is not a root: remainder {remainder}")]
    NotARoot { root: String, remainder: String },

    #[error("duplicate abscissa {0}")]
    DuplicateAbscissa(String),

    #[error("subspace is not an element of the geometry")]
    NotInLattice,

    #[error("missing lower Whitney number w_i(q,{0},d)")]
    MissingLowerWhitney(usize),

    #[error("insufficient samples: need {needed}, got {got}")]
    InsufficientSamples { needed: usize, got: usize },

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
