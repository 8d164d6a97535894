//! Arbitrary-precision interval evaluation: the constants γ, c₀, c₁, exact
//! `G(n)` and `H_n`, Lebesgue values, and the correction errors `E_k(n)`.

pub mod constants;
mod enclosure;
mod error;
pub mod lebesgue;

pub use constants::{c1_direct_bracket, const_c0, const_c1, gamma_em, gamma_reference, harmonic, C1Mode};
pub use enclosure::{eval_piratio, parse_decimal, BigFloat, Enclosure};
pub use error::{cf_enclosure, error_term, landau_g, lebesgue_error, LebesgueSource};
pub use lebesgue::{lebesgue_enclosure, lebesgue_quadrature, lebesgue_w_bracket};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum NumericError {
    #[error("tail bound unavailable at the requested precision")]
    TailBoundUnavailable,
    #[error("division by an interval containing zero")]
    ZeroDivisor,
    #[error("quadrature tolerance not reached (error estimate {0:e})")]
    ToleranceNotReached(f64),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("inconsistent enclosures: {0}")]
    Inconsistent(String),
}
