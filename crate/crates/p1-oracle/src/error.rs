use equiv_rr_engine::EngineError;
use exact_algebra::AlgebraError;
use group_rep::GroupError;
use ramification::RamificationError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("generated group has order at least {0}, above the supported 512")]
    GroupTooLarge(usize),
    #[error("invalid affine map: {0}")]
    InvalidMap(String),
    #[error("invalid closed point: {0}")]
    InvalidPoint(String),
    #[error("divisor is not G-stable: coefficient {coefficient} at {point} but {image_coefficient} at its image {image}")]
    NotStable {
        point: String,
        coefficient: i64,
        image: String,
        image_coefficient: i64,
    },
    #[error("{0} is not a ramified point of the cover")]
    NotRamified(String),
    #[error("local expansion did not determine the ramification index at precision {0}")]
    Precision(usize),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Ramification(#[from] RamificationError),
    #[error(transparent)]
    Group(GroupError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

impl From<GroupError> for OracleError {
    fn from(e: GroupError) -> Self {
        match e {
            GroupError::TooLarge(n) => OracleError::GroupTooLarge(n),
            e => OracleError::Group(e),
        }
    }
}

pub type Result<T> = std::result::Result<T, OracleError>;
