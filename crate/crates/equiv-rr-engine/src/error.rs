use exact_algebra::AlgebraError;
use group_rep::GroupError;
use ramification::RamificationError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error("invalid cover: {0}")]
    InvalidCover(String),
    #[error("place {0} is not weakly ramified")]
    NotWeaklyRamified(usize),
    #[error("place {place}: stalk of rank {got}, bundle has rank {expected}")]
    RankMismatch {
        place: usize,
        expected: usize,
        got: usize,
    },
    #[error("expected stalks for {expected} places, got {got}")]
    StalkCount { expected: usize, got: usize },
    #[error("place {place}: stalk exponent {n} violates n ≡ -1 mod {wild_order}")]
    EwViolation {
        place: usize,
        n: i64,
        wild_order: usize,
    },
    #[error("ramified place {0} is missing from Z")]
    MissingRamifiedPlace(usize),
    #[error("expected an integer: {0}")]
    NotIntegral(String),
    #[error(transparent)]
    Ramification(#[from] RamificationError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

pub type Result<T> = std::result::Result<T, EngineError>;
