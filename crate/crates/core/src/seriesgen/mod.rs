//! Family-specific generators: Brouncker truncations, Bernoulli numbers, the
//! Lebesgue expansion coefficients and the exact difference series that feed
//! the correction engine.

mod bernoulli;
mod brouncker;
mod family;
mod lebesgue;

pub use bernoulli::bernoulli;
pub use brouncker::{
    brouncker_qk_series, brouncker_qk_value, brouncker_series_auto, qk_certified_order, qk_series_raw,
};
pub use family::{difference_series, euler_difference, landau_difference, Family, ParseFamilyError, Template};
pub use lebesgue::{lebesgue_aj, lebesgue_w_difference};

use crate::exactmath::SeriesError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeriesGenError {
    #[error("division by zero in continued fraction")]
    ZeroDenominator,
    #[error("order {requested} exceeds residual guarantee (certified through {certified})")]
    BudgetExceeded { requested: i64, certified: i64 },
    #[error(transparent)]
    Series(#[from] SeriesError),
}
