use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field of order {p}^{n} exceeds the supported table size")]
    FieldTooLarge { p: u32, n: u32 },
    #[error("modulus must be monic of degree {expected}, got degree {got}")]
    BadModulus { expected: usize, got: usize },
    #[error("modulus is reducible over F_{0}")]
    ReducibleModulus(u32),
    #[error("extension degree must be positive")]
    ZeroDegree,
    #[error("zero has no multiplicative inverse or logarithm")]
    ZeroElement,
    #[error("element of order {order} does not divide conductor {conductor}")]
    OrderDoesNotDivide { order: u64, conductor: u64 },
    #[error("characteristic {p} divides conductor {conductor}")]
    CharacteristicDividesConductor { p: u32, conductor: u64 },
    #[error("the zero polynomial cannot be factored")]
    ZeroPolynomial,
    #[error("F_{{{p}^{small}}} is not a subfield of F_{{{p}^{big}}}")]
    NotASubfield { p: u32, small: u32, big: u32 },
    #[error("fields differ: {0}")]
    FieldMismatch(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error("value {0} is not an integer")]
    NotIntegral(String),
    #[error("unsupported valuation: {0}")]
    UnsupportedValuation(String),
    #[error("cannot parse rational '{0}'")]
    ParseRational(String),
}

pub type Result<T> = std::result::Result<T, AlgebraError>;
