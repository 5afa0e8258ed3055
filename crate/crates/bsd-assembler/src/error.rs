use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BsdError {
    #[error("deg Δ = {0} is not divisible by 12")]
    DiscriminantNotDivisible(i64),
    #[error("{0} is not a power of {1}")]
    NotPPower(u64, u32),
    #[error("regulator Gram matrix is singular")]
    SingularGram,
    #[error("regulator Gram matrix has shape {rows}×{cols}, expected {expected}×{expected}")]
    GramShape {
        rows: usize,
        cols: usize,
        expected: usize,
    },
    #[error("{0} must be non-negative")]
    Negative(&'static str),
    #[error("hypothesis '{assumption}' fails: {detail}")]
    Hypothesis {
        assumption: &'static str,
        detail: String,
    },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error(transparent)]
    Psi(#[from] psi_part::PsiError),
    #[error(transparent)]
    Engine(#[from] equiv_rr_engine::EngineError),
    #[error(transparent)]
    Oracle(#[from] p1_oracle::OracleError),
    #[error(transparent)]
    Algebra(#[from] exact_algebra::AlgebraError),
}

pub type Result<T> = std::result::Result<T, BsdError>;

impl BsdError {
    pub fn hypothesis(assumption: &'static str, detail: impl Into<String>) -> Self {
        BsdError::Hypothesis {
            assumption,
            detail: detail.into(),
        }
    }
}
