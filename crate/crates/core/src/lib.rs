//! Multiple-correction continued-fraction approximations for the Landau,
//! Lebesgue and Euler–Mascheroni constants: exact coefficient derivation,
//! certified interval evaluation and verification of the error bounds.

pub mod exactmath;
pub mod seriesgen;
pub mod correction;
pub mod numeric;
pub mod verify;
pub mod json;
pub mod cache;
