use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("zero has no odd part")]
    ZeroOddPart,
    #[error("weights do not sum to one")]
    WeightSum,
    #[error("empty input")]
    Empty,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("point does not lie in the subspace")]
    NotInSubspace,
    #[error("singular or non-dyadic map: {0}")]
    Singular(String),
    #[error("point limit of {0} exceeded")]
    PointLimit(usize),
    #[error("no representative found within search depth {0}")]
    SearchExhausted(u32),
}

pub type Result<T> = std::result::Result<T, Error>;
