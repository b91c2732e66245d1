use thiserror::Error;

/// Errors reported by the library.
///
/// Enumeration limits are explicit errors, never silent truncation. A
/// [`Error::Invariant`] means a mathematical identity the code relies on
/// failed to hold; it indicates a bug, not bad input.
#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot parse group spec `{0}` (expected e.g. \"Z4\", \"S3\", \"A4\", \"GL(2,3)\", \"SL(3,2)\")")]
    ParseGroupSpec(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{what} needs {needed} {unit} but the budget is {budget}")]
    BudgetExceeded {
        what: String,
        needed: u128,
        budget: u128,
        unit: &'static str,
    },

    #[error("time budget of {budget_secs} s exceeded while {what}")]
    TimeBudgetExceeded { what: String, budget_secs: u64 },

    #[error("{what} supports {param} <= {max}, got {got}")]
    SizeGuard {
        what: &'static str,
        param: &'static str,
        max: u64,
        got: u64,
    },

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for budget errors (element, point or time limits).
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            Error::BudgetExceeded { .. } | Error::TimeBudgetExceeded { .. }
        )
    }
}
