use std::fmt;

use super::Rational;

/// Commutative ring with unity over ℚ, the coefficient domain of every series.
///
/// Methods take references so generic code never has to clone operands
/// just to combine them.
pub trait Ring: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_rational(r: &Rational) -> Self;

    /// Multiplicative inverse, or `None` if `self` is not a unit.
    fn try_inv(&self) -> Option<Self>;

    fn mul_rational(&self, r: &Rational) -> Self {
        self.mul(&Self::from_rational(r))
    }

    fn from_int(n: i64) -> Self {
        Self::from_rational(&Rational::from(n))
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

/// A [`Ring`] in which every nonzero element is a unit.
pub trait Field: Ring {
    /// # Panics
    /// Panics on zero.
    fn inv(&self) -> Self {
        self.try_inv().expect("inverse of zero")
    }

    fn div(&self, rhs: &Self) -> Self {
        self.mul(&rhs.inv())
    }
}
