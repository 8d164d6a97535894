//! The multiple-correction engine: fixes each continued-fraction level by
//! forcing the leading coefficients of `E_k(n) − E_k(n+1)` to vanish.

mod cfapprox;
mod derive;

pub use cfapprox::{cf_difference_series, cf_evaluate_exact, cf_series, CFApprox};
pub use derive::{derive, derive_with, DerivationReport, DeriveError, DeriveOptions};
