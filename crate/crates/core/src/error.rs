use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of an operation.
    #[error("domain error in {op}: {detail}")]
    Domain { op: &'static str, detail: String },

    /// A user-facing parameter combination failed validation.
    #[error("invalid parameters: {0}")]
    Validation(String),

    /// An infinite product or series could not be truncated within the term cap.
    #[error(
        "tolerance {requested:e} not reached after {terms} terms (achieved bound {achieved:e})"
    )]
    ToleranceNotReached {
        requested: f64,
        achieved: f64,
        terms: usize,
    },

    #[error("{op} did not converge after {iterations} iterations")]
    NonConvergence { op: &'static str, iterations: usize },

    #[error("adaptive quadrature failed: error estimate {estimate:e} exceeds target {target:e}")]
    Quadrature { estimate: f64, target: f64 },

    #[error("work budget exceeded: {requested} scalar draws requested, budget is {budget}")]
    WorkBudget { requested: u128, budget: u64 },

    #[error("overflow while normalizing raw statistic {raw}; the regime is likely mis-specified")]
    Overflow { raw: f64 },

    #[error("empty sample batch")]
    EmptyBatch,

    #[error("reference cdf decreases by {drop:e} between {left} and {right}")]
    NonMonotoneReference { left: f64, right: f64, drop: f64 },
}

impl Error {
    pub(crate) fn domain(op: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            op,
            detail: detail.into(),
        }
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Domain { .. }
            | Error::Validation(_)
            | Error::EmptyBatch
            | Error::NonMonotoneReference { .. } => 2,
            Error::WorkBudget { .. } => 3,
            Error::ToleranceNotReached { .. }
            | Error::NonConvergence { .. }
            | Error::Quadrature { .. }
            | Error::Overflow { .. } => 4,
        }
    }
}
