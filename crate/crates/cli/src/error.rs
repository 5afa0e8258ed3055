use bsd_assembler::BsdError;
use equiv_rr_engine::EngineError;
use p1_oracle::OracleError;
use psi_part::PsiError;
use thiserror::Error;

pub const EXIT_OK: u8 = 0;
pub const EXIT_INPUT: u8 = 1;
pub const EXIT_HYPOTHESIS: u8 = 2;
pub const EXIT_MISMATCH: u8 = 3;

const STALK_CONDITION: &str = "stalk condition n ≡ -1 mod |P_w|";
const WEAK_RAMIFICATION: &str = "weak ramification";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot access {path}: {message}")]
    Io { path: String, message: String },
    #[error("{file}: schema error at `{location}` (line {line}, column {column}): {message}")]
    Schema {
        file: String,
        location: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{0}")]
    Invalid(String),
    #[error("hypothesis violated ({assumption}): {detail}")]
    Hypothesis { assumption: String, detail: String },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Hypothesis { .. } => EXIT_HYPOTHESIS,
            _ => EXIT_INPUT,
        }
    }

    fn hypothesis(assumption: &str, detail: impl ToString) -> Self {
        CliError::Hypothesis {
            assumption: assumption.to_string(),
            detail: detail.to_string(),
        }
    }
}

impl From<EngineError> for CliError {
    fn from(e: EngineError) -> Self {
        match e {
            EngineError::EwViolation { .. } => CliError::hypothesis(STALK_CONDITION, e),
            EngineError::NotWeaklyRamified(_) => CliError::hypothesis(WEAK_RAMIFICATION, e),
            e => CliError::Invalid(e.to_string()),
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::HypothesisViolated(d) => CliError::hypothesis(STALK_CONDITION, d),
            OracleError::Engine(e) => e.into(),
            e => CliError::Invalid(e.to_string()),
        }
    }
}

impl From<PsiError> for CliError {
    fn from(e: PsiError) -> Self {
        match e {
            PsiError::HypothesisViolated(d) => CliError::hypothesis("closed-form shape", d),
            PsiError::NotIntegral(_) => CliError::hypothesis(WEAK_RAMIFICATION, e),
            PsiError::Engine(e) => e.into(),
            e => CliError::Invalid(e.to_string()),
        }
    }
}

impl From<BsdError> for CliError {
    fn from(e: BsdError) -> Self {
        match e {
            BsdError::Hypothesis { assumption, detail } => CliError::hypothesis(assumption, detail),
            BsdError::Psi(e) => e.into(),
            BsdError::Engine(e) => e.into(),
            BsdError::Oracle(e) => e.into(),
            e => CliError::Invalid(e.to_string()),
        }
    }
}

impl From<group_rep::GroupError> for CliError {
    fn from(e: group_rep::GroupError) -> Self {
        CliError::Invalid(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nested_hypotheses_reach_exit_two() {
        let e: CliError =
            BsdError::Oracle(OracleError::Engine(EngineError::NotWeaklyRamified(0))).into();
        assert_eq!(e.exit_code(), EXIT_HYPOTHESIS);
        assert!(e.to_string().contains(WEAK_RAMIFICATION));
        let e: CliError = PsiError::Engine(EngineError::EwViolation {
            place: 1,
            n: 0,
            wild_order: 3,
        })
        .into();
        assert_eq!(e.exit_code(), EXIT_HYPOTHESIS);
        let e: CliError = BsdError::hypothesis("finiteness of Sha", "unknown").into();
        assert!(e.to_string().contains("finiteness of Sha"));
        let e: CliError = EngineError::InvalidCover("x".into()).into();
        assert_eq!(e.exit_code(), EXIT_INPUT);
    }
}
