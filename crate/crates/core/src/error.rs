use thiserror::Error;

/// Every failure the library can report.
///
/// Variants are grouped loosely by the layer that raises them. The CLI maps
/// all of them to exit status 2 and prints [`Error::code`] alongside the
/// message.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("interval too wide: only {digits_obtained} digits could be certified")]
    PrecisionExhausted { digits_obtained: usize },

    #[error("digit source exhausted before reaching order {order}")]
    StreamExhausted { order: i64 },

    #[error("insufficient data: need {needed} coefficients, have {available}")]
    InsufficientData { needed: usize, available: usize },

    #[error("stage {stage}: no index found within a budget of {budget} coefficients")]
    SearchBudgetExceeded { stage: usize, budget: usize },

    #[error("q = {re}{im:+}i lies outside region D")]
    OutsideRegion { re: f64, im: f64 },

    #[error("q lies outside the disk |q| < 2 - sqrt(3)")]
    OutsideDisk,

    #[error("q lies outside the interval (-R*, 0)")]
    OutsideInterval,

    #[error("tolerance {tol:e} unreachable (best error {achieved:e})")]
    ToleranceUnreachable { tol: f64, achieved: f64 },

    #[error("no geometric decay detected after {terms} terms")]
    NoDecayDetected { terms: usize },

    #[error("lower bound violated at step {step}: |a_N| = {value:e} < {bound:e}")]
    BoundViolation { step: usize, value: f64, bound: f64 },

    #[error("enumeration budget of {budget} words exceeded")]
    EnumerationBudget { budget: usize },

    #[error("bisection bracket [{lo}, {hi}] does not change sign")]
    BracketingFailure { lo: f64, hi: f64 },

    #[error("parameter hits a pole of the q-Pochhammer symbol at index {index}")]
    PoleParameter { index: usize },

    #[error("denominator vanishes")]
    ZeroDenominator,

    #[error("argument is a pole")]
    Pole,

    #[error("argument cannot be reached by the available transformations")]
    UnreachableArgument,

    #[error("theta series converge too slowly (Im tau = {im_tau})")]
    ConvergenceTooSlow { im_tau: f64 },

    #[error("lambda lies within {distance:e} of a branch cut")]
    BranchAmbiguity { distance: f64 },

    #[error("evaluation failed: {0}")]
    EvaluationFailure(String),
}

impl Error {
    /// Stable machine-readable tag.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Domain(_) => "DomainError",
            Error::DivisionByZero => "DivisionByZero",
            Error::PrecisionExhausted { .. } => "PrecisionExhausted",
            Error::StreamExhausted { .. } => "StreamExhausted",
            Error::InsufficientData { .. } => "InsufficientData",
            Error::SearchBudgetExceeded { .. } => "SearchBudgetExceeded",
            Error::OutsideRegion { .. } => "OutsideRegion",
            Error::OutsideDisk => "OutsideDisk",
            Error::OutsideInterval => "OutsideInterval",
            Error::ToleranceUnreachable { .. } => "ToleranceUnreachable",
            Error::NoDecayDetected { .. } => "NoDecayDetected",
            Error::BoundViolation { .. } => "BoundViolation",
            Error::EnumerationBudget { .. } => "EnumerationBudget",
            Error::BracketingFailure { .. } => "BracketingFailure",
            Error::PoleParameter { .. } => "PoleParameter",
            Error::ZeroDenominator => "ZeroDenominator",
            Error::Pole => "PoleError",
            Error::UnreachableArgument => "UnreachableArgument",
            Error::ConvergenceTooSlow { .. } => "ConvergenceTooSlow",
            Error::BranchAmbiguity { .. } => "BranchAmbiguity",
            Error::EvaluationFailure(_) => "EvaluationFailure",
        }
    }

    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
