use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PsiError {
    #[error("invalid character: {0}")]
    InvalidPsi(String),
    #[error("eigenspace multiplicity at θ^{s} is {value}, not a non-negative integer")]
    NonIntegralMultiplicity { s: usize, value: String },
    #[error("{0} is not an integer; the cover or bundle violates weak ramification or the stalk condition")]
    NotIntegral(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error(transparent)]
    Engine(#[from] equiv_rr_engine::EngineError),
    #[error(transparent)]
    Ramification(#[from] ramification::RamificationError),
    #[error(transparent)]
    Group(#[from] group_rep::GroupError),
    #[error(transparent)]
    Algebra(#[from] exact_algebra::AlgebraError),
}

pub type Result<T> = std::result::Result<T, PsiError>;
