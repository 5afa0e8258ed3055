use exact_algebra::AlgebraError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("group of order at least {0} exceeds the supported size of 512")]
    TooLarge(usize),
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("objects belong to different groups")]
    GroupMismatch,
    #[error("characteristics differ: {0} vs {1}")]
    CharacteristicMismatch(u32, u32),
    #[error("invalid module: {0}")]
    BadModule(String),
    #[error("unsupported group structure: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

pub type Result<T> = std::result::Result<T, GroupError>;
