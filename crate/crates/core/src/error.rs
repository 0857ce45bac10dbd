use thiserror::Error;

/// Failure modes shared by every module of the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by a non-unit: {0}")]
    DivisionByNonUnit(String),
    #[error("truncation underflow: {0}")]
    TruncationUnderflow(String),
    #[error("bad constant term: {0}")]
    BadConstantTerm(String),
    #[error("resultant is not a unit: {0}")]
    NonUnitResultant(String),
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("denominator not invertible in the quotient ring: {0}")]
    NonInvertibleDenominator(String),
    #[error("singular jacobian: {0}")]
    SingularJacobian(String),
    #[error("unsupported genus: {0}")]
    UnsupportedGenus(String),
    #[error("unsupported exponent pattern: {0}")]
    UnsupportedPattern(String),
    #[error("jet cap {cap} of variable `{var}` is below the requested order {need}")]
    InsufficientJetCap { var: String, need: u32, cap: u32 },
    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),
    #[error("pole at evaluation point: {0}")]
    PoleAtEvalPoint(String),
    #[error("insufficient data: need {need} coefficients, have {have}")]
    InsufficientData { need: usize, have: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
