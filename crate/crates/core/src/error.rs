use thiserror::Error;

/// Errors raised by the library.
///
/// [`Error::name`] gives a stable identifier for each variant; the CLI prints
/// it on the diagnostic stream.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("part {0} appears in more than one of R, S, I")]
    DisjointnessViolation(i64),

    #[error("part {0} is not a positive integer")]
    NonPositivePart(i64),

    #[error("R and S must both be nonempty")]
    EmptyRS,

    #[error("gcd of R and S is {0}, expected 1")]
    GcdHypothesisViolated(u64),

    #[error("zero denominator: {0}")]
    DegenerateDenominator(String),

    #[error("enumeration budget of {limit} exceeded")]
    BudgetExceeded { limit: u64 },

    #[error("inconsistent input: {0}")]
    InconsistentInput(String),

    #[error("quadrature did not converge after {evaluations} evaluations (error estimate {estimate:e})")]
    QuadratureNotConverged { evaluations: usize, estimate: f64 },

    #[error("invalid progression: {0}")]
    InvalidProgression(String),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn name(&self) -> &'static str {
        match self {
            Error::DisjointnessViolation(_) => "DisjointnessViolation",
            Error::NonPositivePart(_) => "NonPositivePart",
            Error::EmptyRS => "EmptyRS",
            Error::GcdHypothesisViolated(_) => "GcdHypothesisViolated",
            Error::DegenerateDenominator(_) => "DegenerateDenominator",
            Error::BudgetExceeded { .. } => "BudgetExceeded",
            Error::InconsistentInput(_) => "InconsistentInput",
            Error::QuadratureNotConverged { .. } => "QuadratureNotConverged",
            Error::InvalidProgression(_) => "InvalidProgression",
            Error::PreconditionViolated(_) => "PreconditionViolated",
            Error::Parse(_) => "Parse",
        }
    }

    /// True for errors caused by hitting a work limit rather than bad input.
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            Error::BudgetExceeded { .. } | Error::QuadratureNotConverged { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
