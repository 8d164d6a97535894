//! Exact scalar and series arithmetic: ℚ, the field ℚ(π) and truncated
//! power series in `x = 1/n`.

mod intpoly;
mod logseries;
mod mpoly;
mod piratio;
mod rational;
mod ring;
mod series;
mod solve;

pub use intpoly::IntPoly;
pub use logseries::log_shift_series;
pub use mpoly::{MPoly, Monomial};
pub use piratio::{ParsePiRatioError, PiRatio};
pub use rational::{ParseRationalError, Rational};
pub use ring::{Field, Ring};
pub use series::{PiSeries, SeriesError, TruncSeries};
pub use solve::{solve_affine, solve_leading, SolveError};
