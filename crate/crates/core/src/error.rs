use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ambient dimensions differ ({0} vs {1})")]
    IncompatibleDimension(usize, usize),
    #[error("lattice has rank zero")]
    RankZero,
    #[error("expected rank {expected}, got {got}")]
    WrongRank { expected: usize, got: usize },
    #[error("basis vectors are linearly dependent")]
    DependentBasis,
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error("lattice is not well-rounded")]
    NotWellRounded,
    #[error("lattice is not cyclic")]
    NotCyclic,
    #[error("Galois group is not cyclic")]
    NonCyclicGalois,
    #[error("entries live in different quadratic fields (sqrt({0}) and sqrt({1}))")]
    MixedFields(i64, i64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("scale limit exceeded: {0}")]
    ScaleLimit(String),
    #[error("interval enclosure too wide after {0} bits of precision")]
    EnclosureTooWide(u32),
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
