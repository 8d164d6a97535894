//! Truncated power series in `x = 1/n` with explicit validity tracking.
//!
//! A [`TruncSeries`] stores the coefficients of `x^min_order ..= x^valid_order`.
//! Every coefficient it reports is exact; anything past `valid_order` is
//! unknown, and asking for it is an error rather than a silent zero.

use std::fmt;

use rug::Integer;

use super::ring::Ring;
use super::{PiRatio, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    #[error("non-invertible series: {0}")]
    NonInvertible(String),
    #[error("coefficient of x^{order} requested but series is only valid through x^{valid}")]
    BeyondValidity { order: i64, valid: i64 },
    #[error("result would need negative powers of x (minimum order {0}); Laurent series not permitted here")]
    LaurentNotPermitted(i64),
}

/// Power series `Σ cᵢ x^(min_order+i)`, exact through `x^valid_order`.
#[derive(Clone, PartialEq)]
pub struct TruncSeries<C> {
    min_order: i64,
    coeffs: Vec<C>,
}

/// Series with coefficients in ℚ(π).
pub type PiSeries = TruncSeries<PiRatio>;

impl<C: Ring> TruncSeries<C> {
    /// Series with coefficients of `x^min_order, x^(min_order+1), …`; valid
    /// through the last supplied coefficient.
    pub fn new(min_order: i64, coeffs: Vec<C>) -> Self {
        TruncSeries { min_order, coeffs }
    }

    /// The zero series, known through `valid_order`.
    pub fn zero(valid_order: i64) -> Self {
        Self::from_fn(0, valid_order, |_| C::zero())
    }

    pub fn constant(c: C, valid_order: i64) -> Self {
        Self::from_fn(0, valid_order, |i| if i == 0 { c.clone() } else { C::zero() })
    }

    /// `c · x^k`, known through `valid_order`.
    pub fn monomial(c: C, k: i64, valid_order: i64) -> Self {
        Self::from_fn(k, valid_order.max(k - 1), |i| if i == k { c.clone() } else { C::zero() })
    }

    /// Coefficients of `x^min ..= x^valid` from a function of the exponent.
    pub fn from_fn(min_order: i64, valid_order: i64, f: impl Fn(i64) -> C) -> Self {
        let coeffs = (min_order..=valid_order).map(f).collect();
        TruncSeries { min_order, coeffs }
    }

    /// Series of the polynomial `Σ cᵢ xⁱ`, known through `valid_order`.
    pub fn from_poly(coeffs: &[C], valid_order: i64) -> Self {
        Self::from_fn(0, valid_order, |i| {
            coeffs.get(i as usize).cloned().unwrap_or_else(C::zero)
        })
    }

    pub fn min_order(&self) -> i64 {
        self.min_order
    }

    /// Largest exponent whose coefficient is trusted.
    pub fn valid_order(&self) -> i64 {
        self.min_order + self.coeffs.len() as i64 - 1
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    /// Coefficient of `x^order`; zero below `min_order`, an error past `valid_order`.
    pub fn coeff(&self, order: i64) -> Result<C, SeriesError> {
        if order > self.valid_order() {
            return Err(SeriesError::BeyondValidity {
                order,
                valid: self.valid_order(),
            });
        }
        if order < self.min_order {
            return Ok(C::zero());
        }
        Ok(self.coeffs[(order - self.min_order) as usize].clone())
    }

    /// Exponent of the first nonzero coefficient, `None` if every known
    /// coefficient is zero.
    pub fn valuation(&self) -> Option<i64> {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .map(|i| self.min_order + i as i64)
    }

    /// Effective valuation for validity propagation: the true valuation, or
    /// one past the validity horizon for a series that is zero as far as known.
    fn val_or_horizon(&self) -> i64 {
        self.valuation().unwrap_or(self.valid_order() + 1)
    }

    /// Drops trusted coefficients beyond `order`.
    pub fn truncate(&self, order: i64) -> Self {
        if order >= self.valid_order() {
            return self.clone();
        }
        let keep = (order - self.min_order + 1).max(0) as usize;
        TruncSeries {
            min_order: self.min_order,
            coeffs: self.coeffs[..keep].to_vec(),
        }
    }

    /// Re-bases the storage to start at the valuation (trims leading zeros).
    pub fn normalized(&self) -> Self {
        match self.valuation() {
            Some(v) if v > self.min_order => TruncSeries {
                min_order: v,
                coeffs: self.coeffs[(v - self.min_order) as usize..].to_vec(),
            },
            _ => self.clone(),
        }
    }

    pub fn is_zero_through(&self, order: i64) -> Result<bool, SeriesError> {
        for k in self.min_order..=order {
            if !self.coeff(k)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn map<D: Ring>(&self, f: impl Fn(&C) -> D) -> TruncSeries<D> {
        TruncSeries {
            min_order: self.min_order,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let lo = self.min_order.min(rhs.min_order);
        let hi = self.valid_order().min(rhs.valid_order());
        Self::from_fn(lo, hi, |k| {
            self.coeff(k).unwrap().add(&rhs.coeff(k).unwrap())
        })
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let lo = self.min_order.min(rhs.min_order);
        let hi = self.valid_order().min(rhs.valid_order());
        Self::from_fn(lo, hi, |k| {
            self.coeff(k).unwrap().sub(&rhs.coeff(k).unwrap())
        })
    }

    pub fn neg(&self) -> Self {
        self.map(|c| c.neg())
    }

    pub fn scale(&self, c: &C) -> Self {
        self.map(|a| a.mul(c))
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        self.map(|a| a.mul_rational(r))
    }

    /// Multiplies by `x^k`.
    pub fn shift_exponent(&self, k: i64) -> Self {
        TruncSeries {
            min_order: self.min_order + k,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let a = self.normalized();
        let b = rhs.normalized();
        let valid = (self.valid_order() + rhs.val_or_horizon())
            .min(rhs.valid_order() + self.val_or_horizon());
        let lo = a.min_order + b.min_order;
        if valid < lo {
            return TruncSeries {
                min_order: valid + 1,
                coeffs: Vec::new(),
            };
        }
        let len = (valid - lo + 1) as usize;
        let mut coeffs = vec![C::zero(); len];
        for (i, ca) in a.coeffs.iter().enumerate() {
            if i >= len {
                break;
            }
            if ca.is_zero() {
                continue;
            }
            for (j, cb) in b.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                if cb.is_zero() {
                    continue;
                }
                coeffs[i + j] = coeffs[i + j].add(&ca.mul(cb));
            }
        }
        TruncSeries { min_order: lo, coeffs }
    }

    fn reciprocal_impl(&self, allow_laurent: bool) -> Result<Self, SeriesError> {
        let v = self.valuation().ok_or_else(|| {
            SeriesError::NonInvertible(format!(
                "all coefficients vanish through x^{}",
                self.valid_order()
            ))
        })?;
        if v > 0 && !allow_laurent {
            return Err(SeriesError::LaurentNotPermitted(-v));
        }
        let a = self.normalized();
        let inv0 = a.coeffs[0].try_inv().ok_or_else(|| {
            SeriesError::NonInvertible(format!("leading coefficient {} is not a unit", a.coeffs[0]))
        })?;
        // unit part is known through relative order valid - v
        let rel = (a.valid_order() - v) as usize;
        let mut out: Vec<C> = Vec::with_capacity(rel + 1);
        out.push(inv0.clone());
        for m in 1..=rel {
            let mut acc = C::zero();
            for i in 1..=m {
                let ai = &a.coeffs[i];
                if ai.is_zero() {
                    continue;
                }
                acc = acc.add(&ai.mul(&out[m - i]));
            }
            out.push(acc.mul(&inv0).neg());
        }
        Ok(TruncSeries {
            min_order: -v,
            coeffs: out,
        })
    }

    /// `1/self`. The lowest nonzero coefficient must be a unit and sit at `x⁰`.
    pub fn reciprocal(&self) -> Result<Self, SeriesError> {
        self.reciprocal_impl(false)
    }

    /// `1/self` allowing negative powers of `x` in the result.
    pub fn reciprocal_laurent(&self) -> Result<Self, SeriesError> {
        self.reciprocal_impl(true)
    }

    /// `self / rhs`. Fails if the quotient needs negative powers unless
    /// `allow_laurent` is set.
    pub fn div(&self, rhs: &Self, allow_laurent: bool) -> Result<Self, SeriesError> {
        let r = rhs.reciprocal_impl(true)?;
        let q = self.mul(&r);
        if !allow_laurent {
            if let Some(v) = q.valuation() {
                if v < 0 {
                    return Err(SeriesError::LaurentNotPermitted(v));
                }
            }
            if q.min_order < 0 {
                let q = q.normalized();
                if q.min_order < 0 {
                    return Ok(TruncSeries {
                        min_order: 0,
                        coeffs: q.coeffs[(-q.min_order) as usize..].to_vec(),
                    });
                }
                return Ok(q);
            }
        }
        Ok(q)
    }

    /// The series of `f(n+1)` given that `self` is `f(n)` in `x = 1/n`:
    /// the composition `self(x/(1+x))`, valid to the same order.
    pub fn shift_substitute(&self) -> Self {
        let lo = self.min_order;
        let hi = self.valid_order();
        let mut coeffs = vec![C::zero(); self.coeffs.len()];
        for (idx, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let i = lo + idx as i64;
            // (x/(1+x))^i = x^i (1+x)^(-i)
            for m in i..=hi {
                let j = (m - i) as u32;
                let b = binom_signed(-i, j);
                if b == 0 {
                    continue;
                }
                let slot = &mut coeffs[(m - lo) as usize];
                *slot = slot.add(&c.mul_rational(&Rational::from(b)));
            }
        }
        TruncSeries { min_order: lo, coeffs }
    }

    /// Composition with a series `g` of valuation ≥ 1 (Horner scheme); the
    /// receiver must be an ordinary power series.
    pub fn compose(&self, g: &Self) -> Result<Self, SeriesError> {
        if self.min_order < 0 {
            return Err(SeriesError::LaurentNotPermitted(self.min_order));
        }
        let gv = g.val_or_horizon();
        assert!(gv >= 1, "inner series must vanish at x = 0");
        let hi = self.valid_order();
        let g = g.truncate(hi);
        let mut acc = TruncSeries::zero(hi);
        for k in (0..=hi).rev() {
            acc = acc.mul(&g).truncate(hi);
            let c = self.coeff(k)?;
            if !c.is_zero() {
                acc = acc.add(&TruncSeries::constant(c, hi));
            }
            if acc.valid_order() < hi {
                acc = acc.add(&TruncSeries::zero(hi));
            }
        }
        Ok(acc.truncate(hi))
    }
}

/// Generalized binomial coefficient `C(a, j)` for integer `a`.
fn binom_signed(a: i64, j: u32) -> Integer {
    let mut num = Integer::from(1);
    for t in 0..j as i64 {
        num *= a - t;
    }
    let mut den = Integer::from(1);
    for t in 1..=j as i64 {
        den *= t;
    }
    num / den
}

impl<C: Ring> fmt::Display for TruncSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({c})*x^{}", self.min_order + i as i64)?;
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(x^{})", self.valid_order() + 1)
    }
}

impl<C: Ring> fmt::Debug for TruncSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type S = TruncSeries<Rational>;

    fn q(p: i64, d: i64) -> Rational {
        Rational::new(p, d)
    }

    fn s(min: i64, cs: &[(i64, i64)]) -> S {
        S::new(min, cs.iter().map(|&(p, d)| q(p, d)).collect())
    }

    #[test]
    fn monomial_product() {
        let x = S::monomial(q(1, 1), 1, 5);
        let p = x.mul(&x);
        assert_eq!(p.coeff(2).unwrap(), q(1, 1));
        assert!(p.coeff(3).unwrap().is_zero());
        assert_eq!(p.valid_order(), 6);
    }

    #[test]
    fn geometric_reciprocal() {
        let one_plus_x = s(0, &[(1, 1), (1, 1), (0, 1), (0, 1)]);
        let r = one_plus_x.reciprocal().unwrap();
        assert_eq!(r, s(0, &[(1, 1), (-1, 1), (1, 1), (-1, 1)]));
    }

    #[test]
    fn hand_multiplication() {
        // (x - x^2/2)(x + x^2) through x^3
        let a = s(1, &[(1, 1), (-1, 2), (0, 1)]);
        let b = s(1, &[(1, 1), (1, 1), (0, 1)]);
        let p = a.mul(&b).truncate(3);
        assert_eq!(p.coeff(2).unwrap(), q(1, 1));
        assert_eq!(p.coeff(3).unwrap(), q(1, 2));
        assert_eq!(p.valid_order(), 3);
    }

    #[test]
    fn shift_of_x_and_x_squared() {
        let x = S::monomial(q(1, 1), 1, 4);
        assert_eq!(
            x.shift_substitute(),
            s(1, &[(1, 1), (-1, 1), (1, 1), (-1, 1)])
        );
        let x2 = S::monomial(q(1, 1), 2, 4);
        assert_eq!(x2.shift_substitute(), s(2, &[(1, 1), (-2, 1), (3, 1)]));
        let c = S::constant(q(7, 3), 4);
        assert_eq!(c.shift_substitute(), c);
    }

    #[test]
    fn reading_past_validity_is_an_error() {
        let a = s(0, &[(1, 1), (2, 1)]);
        assert!(matches!(
            a.coeff(2),
            Err(SeriesError::BeyondValidity { order: 2, valid: 1 })
        ));
        assert!(a.coeff(-3).unwrap().is_zero());
    }

    #[test]
    fn reciprocal_of_zero_leading_term() {
        let a = s(0, &[(0, 1), (1, 1), (1, 1)]);
        assert!(matches!(
            a.reciprocal(),
            Err(SeriesError::LaurentNotPermitted(-1))
        ));
        let r = a.reciprocal_laurent().unwrap();
        assert_eq!(r.min_order(), -1);
        assert_eq!(r.coeff(-1).unwrap(), q(1, 1));
        let z = S::zero(3);
        assert!(matches!(z.reciprocal(), Err(SeriesError::NonInvertible(_))));
    }

    #[test]
    fn division_needing_laurent_terms() {
        let x = S::monomial(q(1, 1), 1, 4);
        let x2 = S::monomial(q(1, 1), 2, 4);
        assert!(x.div(&x2, false).is_err());
        let r = x.div(&x2, true).unwrap();
        assert_eq!(r.valuation(), Some(-1));
        let ok = x2.div(&x, false).unwrap();
        assert_eq!(ok.valuation(), Some(1));
    }

    #[test]
    fn shift_agrees_with_composition() {
        let a = s(0, &[(3, 1), (1, 2), (-2, 3), (5, 7), (1, 11), (-1, 3)]);
        let t = S::monomial(q(1, 1), 1, 5)
            .mul(&s(0, &[(1, 1), (1, 1), (0, 1), (0, 1), (0, 1), (0, 1)]).reciprocal().unwrap())
            .truncate(5);
        assert_eq!(a.shift_substitute(), a.compose(&t).unwrap());
    }
}
