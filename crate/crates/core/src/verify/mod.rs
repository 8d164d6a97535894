//! Executable checks of the convergence rates and two-sided bounds.

mod inequality;
mod rate;

pub use inequality::{
    check_double, check_landau_monotone, check_lebesgue_monotone, check_monotone, check_theorem2,
    check_theorem4, CheckOptions, DoubleInequality, InequalityReport, PointResult, Verdict,
};
pub use rate::{rate_fit, rate_fit_report, RateFit, DEFAULT_SCHEDULE};

use crate::correction::DeriveError;
use crate::numeric::NumericError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum VerifyError {
    #[error("schedule: {0}")]
    Schedule(String),
    #[error("enclosures too wide: only {usable} samples below 1% relative width (first rejected n = {n})")]
    EnclosuresTooWide { n: u64, usable: usize },
    #[error(transparent)]
    Derive(#[from] DeriveError),
    #[error(transparent)]
    Numeric(#[from] NumericError),
}
