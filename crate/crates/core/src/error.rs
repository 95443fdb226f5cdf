use num_bigint::BigUint;
use thiserror::Error;

use crate::evaluator::SeriesId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("{op}: {reason}")]
    Domain { op: &'static str, reason: String },

    /// Exact rational summation was asked for more terms than the exact backend allows.
    #[error("exact summation is capped at {cap} terms (asked for {requested}); use the fixed-point backend")]
    ExactCapExceeded { requested: u64, cap: u64 },

    /// Reaching the requested digits would need more terms than the configured budget.
    #[error("{series} series needs {required} terms for {digits} digits, over the budget of {budget} terms")]
    BudgetExceeded {
        series: SeriesId,
        digits: u32,
        required: BigUint,
        budget: u64,
    },

    /// The interval produced by a computation was too wide for the digits asked for.
    #[error("could only certify {achieved} of {requested} digits")]
    Uncertified { requested: u32, achieved: u32 },
}

pub(crate) fn domain(op: &'static str, reason: impl Into<String>) -> Error {
    Error::Domain {
        op,
        reason: reason.into(),
    }
}
