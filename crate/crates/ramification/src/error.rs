use exact_algebra::AlgebraError;
use group_rep::GroupError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RamificationError {
    #[error("invalid local datum: {0}")]
    InvalidDatum(String),
    #[error("ramification filtration is missing or too short")]
    MissingFiltration,
    #[error("invalid ramification filtration: {0}")]
    BadFiltration(String),
    #[error("stalk exponent {n} violates n ≡ -1 mod {wild_order}")]
    EwViolation { n: i64, wild_order: usize },
    #[error("Néron exponent {r} outside 0..{inertia_order}")]
    NeronOutOfRange { r: i64, inertia_order: usize },
    #[error("expected {expected} flags, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

pub type Result<T> = std::result::Result<T, RamificationError>;
