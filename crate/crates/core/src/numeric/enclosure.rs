use std::cmp::Ordering;
use std::fmt;

use rug::ops::AssignRound;
use rug::float::{Constant, Round};
use rug::ops::Pow;
use rug::{Float, Integer};

use crate::exactmath::{IntPoly, PiRatio, Rational};

use super::NumericError;

/// Binary floating-point value at an explicit precision.
pub type BigFloat = Float;

/// Interval `[lo, hi]` certified to contain a real quantity.
///
/// Every constructor and operation rounds `lo` toward −∞ and `hi` toward +∞
/// (MPFR directed rounding), so containment survives each step.
#[derive(Clone, PartialEq)]
pub struct Enclosure {
    lo: Float,
    hi: Float,
}

fn down<T>(prec: u32, v: T) -> Float
where
    Float: AssignRound<T, Round = Round, Ordering = Ordering>,
{
    Float::with_val_round(prec, v, Round::Down).0
}

fn up<T>(prec: u32, v: T) -> Float
where
    Float: AssignRound<T, Round = Round, Ordering = Ordering>,
{
    Float::with_val_round(prec, v, Round::Up).0
}

impl Enclosure {
    /// # Panics
    /// Panics if `lo > hi` or either end is NaN.
    pub fn new(lo: Float, hi: Float) -> Self {
        assert!(lo <= hi, "enclosure with lo > hi");
        Enclosure { lo, hi }
    }

    pub fn from_rational(r: &Rational, prec: u32) -> Self {
        let q = r.as_rug();
        Enclosure {
            lo: down(prec, q),
            hi: up(prec, q),
        }
    }

    pub fn from_int(n: i64, prec: u32) -> Self {
        Enclosure::from_rational(&Rational::from(n), prec)
    }

    pub fn from_integer(n: &Integer, prec: u32) -> Self {
        Enclosure {
            lo: down(prec, n),
            hi: up(prec, n),
        }
    }

    /// The interval between two decimal literals, rounded outward.
    pub fn from_decimals(lo: &str, hi: &str, prec: u32) -> Result<Self, NumericError> {
        let parse = |s: &str| {
            parse_decimal(s).ok_or_else(|| NumericError::InvalidInput(format!("bad decimal {s:?}")))
        };
        let (a, b) = (parse(lo)?, parse(hi)?);
        if a > b {
            return Err(NumericError::InvalidInput("decimal bracket reversed".into()));
        }
        Ok(Enclosure {
            lo: down(prec, a.as_rug()),
            hi: up(prec, b.as_rug()),
        })
    }

    pub fn from_f64_bounds(lo: f64, hi: f64, prec: u32) -> Self {
        Enclosure::new(Float::with_val(prec.max(53), lo), Float::with_val(prec.max(53), hi))
    }

    pub fn pi(prec: u32) -> Self {
        Enclosure {
            lo: down(prec, Constant::Pi),
            hi: up(prec, Constant::Pi),
        }
    }

    /// `ln r` for a positive rational `r`.
    pub fn ln_rational(r: &Rational, prec: u32) -> Self {
        Enclosure::from_rational(r, prec + 8).ln().with_prec(prec)
    }

    pub fn lo(&self) -> &Float {
        &self.lo
    }

    pub fn hi(&self) -> &Float {
        &self.hi
    }

    pub fn prec(&self) -> u32 {
        self.lo.prec().max(self.hi.prec())
    }

    /// Re-rounds outward to `prec` bits.
    pub fn with_prec(&self, prec: u32) -> Self {
        Enclosure {
            lo: down(prec, &self.lo),
            hi: up(prec, &self.hi),
        }
    }

    /// `hi − lo`, rounded up.
    pub fn width(&self) -> Float {
        up(self.prec(), &self.hi - &self.lo)
    }

    pub fn mid(&self) -> Float {
        let p = self.prec();
        let s = Float::with_val(p + 1, &self.lo + &self.hi);
        s / 2u32
    }

    /// Larger of `|lo|`, `|hi|`.
    pub fn mag(&self) -> Float {
        let a = Float::with_val(self.prec(), self.lo.abs_ref());
        let b = Float::with_val(self.prec(), self.hi.abs_ref());
        if a > b {
            a
        } else {
            b
        }
    }

    /// Smaller of `|x|` over the interval (zero if it straddles zero).
    pub fn mig(&self) -> Float {
        if self.contains_zero() {
            return Float::new(self.prec());
        }
        let a = Float::with_val(self.prec(), self.lo.abs_ref());
        let b = Float::with_val(self.prec(), self.hi.abs_ref());
        if a < b {
            a
        } else {
            b
        }
    }

    /// Width relative to the smallest magnitude of the interval.
    pub fn relative_width(&self) -> f64 {
        let m = self.mig();
        if m.is_zero() {
            return f64::INFINITY;
        }
        (self.width() / m).to_f64()
    }

    pub fn contains_zero(&self) -> bool {
        self.lo <= 0 && self.hi >= 0
    }

    pub fn is_positive(&self) -> bool {
        self.lo > 0
    }

    pub fn is_negative(&self) -> bool {
        self.hi < 0
    }

    pub fn contains_rational(&self, r: &Rational) -> bool {
        self.lo <= *r.as_rug() && self.hi >= *r.as_rug()
    }

    /// Whether the decimal literal (read exactly) lies inside.
    pub fn contains_decimal(&self, s: &str) -> bool {
        parse_decimal(s).is_some_and(|r| self.contains_rational(&r))
    }

    pub fn contains(&self, other: &Enclosure) -> bool {
        self.lo <= other.lo && self.hi >= other.hi
    }

    pub fn intersects(&self, other: &Enclosure) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn intersect(&self, other: &Enclosure) -> Option<Enclosure> {
        if !self.intersects(other) {
            return None;
        }
        let lo = if self.lo > other.lo { &self.lo } else { &other.lo };
        let hi = if self.hi < other.hi { &self.hi } else { &other.hi };
        Some(Enclosure::new(lo.clone(), hi.clone()))
    }

    pub fn hull(&self, other: &Enclosure) -> Enclosure {
        let lo = if self.lo < other.lo { &self.lo } else { &other.lo };
        let hi = if self.hi > other.hi { &self.hi } else { &other.hi };
        Enclosure::new(lo.clone(), hi.clone())
    }

    /// Every point of `self` is below every point of `other`.
    pub fn certainly_lt(&self, other: &Enclosure) -> bool {
        self.hi < other.lo
    }

    pub fn add(&self, rhs: &Enclosure) -> Enclosure {
        let p = self.prec().max(rhs.prec());
        Enclosure {
            lo: down(p, &self.lo + &rhs.lo),
            hi: up(p, &self.hi + &rhs.hi),
        }
    }

    pub fn sub(&self, rhs: &Enclosure) -> Enclosure {
        let p = self.prec().max(rhs.prec());
        Enclosure {
            lo: down(p, &self.lo - &rhs.hi),
            hi: up(p, &self.hi - &rhs.lo),
        }
    }

    pub fn neg(&self) -> Enclosure {
        Enclosure {
            lo: Float::with_val(self.hi.prec(), -&self.hi),
            hi: Float::with_val(self.lo.prec(), -&self.lo),
        }
    }

    pub fn mul(&self, rhs: &Enclosure) -> Enclosure {
        let p = self.prec().max(rhs.prec());
        let pairs = [
            (&self.lo, &rhs.lo),
            (&self.lo, &rhs.hi),
            (&self.hi, &rhs.lo),
            (&self.hi, &rhs.hi),
        ];
        let mut lo: Option<Float> = None;
        let mut hi: Option<Float> = None;
        for (a, b) in pairs {
            let l = down(p, a * b);
            let h = up(p, a * b);
            if lo.as_ref().is_none_or(|x| l < *x) {
                lo = Some(l);
            }
            if hi.as_ref().is_none_or(|x| h > *x) {
                hi = Some(h);
            }
        }
        Enclosure {
            lo: lo.unwrap(),
            hi: hi.unwrap(),
        }
    }

    pub fn sqr(&self) -> Enclosure {
        let m = self.mul(self);
        if self.contains_zero() {
            Enclosure::new(Float::new(m.prec()), m.hi)
        } else {
            m
        }
    }

    pub fn powi(&self, e: u32) -> Enclosure {
        let mut acc = Enclosure::from_int(1, self.prec());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.sqr();
            }
        }
        acc
    }

    pub fn recip(&self) -> Result<Enclosure, NumericError> {
        if self.contains_zero() {
            return Err(NumericError::ZeroDivisor);
        }
        let p = self.prec();
        Ok(Enclosure {
            lo: down(p, 1 / &self.hi),
            hi: up(p, 1 / &self.lo),
        })
    }

    pub fn div(&self, rhs: &Enclosure) -> Result<Enclosure, NumericError> {
        Ok(self.mul(&rhs.recip()?))
    }

    pub fn mul_rational(&self, r: &Rational) -> Enclosure {
        self.mul(&Enclosure::from_rational(r, self.prec()))
    }

    pub fn add_rational(&self, r: &Rational) -> Enclosure {
        self.add(&Enclosure::from_rational(r, self.prec()))
    }

    /// Natural logarithm of a positive interval.
    ///
    /// # Panics
    /// Panics unless `lo > 0`.
    pub fn ln(&self) -> Enclosure {
        assert!(self.is_positive(), "logarithm of a non-positive interval");
        let mut lo = self.lo.clone();
        lo.ln_round(Round::Down);
        let mut hi = self.hi.clone();
        hi.ln_round(Round::Up);
        Enclosure { lo, hi }
    }

    pub fn sqrt(&self) -> Enclosure {
        assert!(self.lo >= 0, "square root of a negative interval");
        let mut lo = self.lo.clone();
        lo.sqrt_round(Round::Down);
        let mut hi = self.hi.clone();
        hi.sqrt_round(Round::Up);
        Enclosure { lo, hi }
    }

    /// Decimal rendering of the midpoint with `digits` significant digits.
    pub fn to_decimal(&self, digits: usize) -> String {
        self.mid().to_string_radix(10, Some(digits))
    }
}

impl Enclosure {
    /// Endpoints as decimal strings rounded outward, so the rendered
    /// interval still contains the value.
    pub fn bounds_decimal(&self, digits: usize) -> (String, String) {
        (
            self.lo.to_string_radix_round(10, Some(digits), Round::Down),
            self.hi.to_string_radix_round(10, Some(digits), Round::Up),
        )
    }
}

impl fmt::Display for Enclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = ((self.prec() as f64) * std::f64::consts::LOG10_2) as usize;
        let (lo, hi) = self.bounds_decimal(digits.clamp(3, 40));
        write!(f, "[{lo}, {hi}]")
    }
}

impl fmt::Debug for Enclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Exact value of a decimal literal such as `-1.0662758532089143543`.
pub fn parse_decimal(s: &str) -> Option<Rational> {
    let t = s.trim();
    let (neg, t) = match t.strip_prefix('-') {
        Some(r) => (true, r),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let (int, frac) = t.split_once('.').unwrap_or((t, ""));
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits: Integer = format!("{int}{frac}").parse().ok()?;
    let scale = Integer::from(10).pow(frac.len() as u32);
    let r = Rational::new(digits, scale);
    Some(if neg { -r } else { r })
}

fn eval_intpoly(p: &IntPoly, x: &Enclosure) -> Enclosure {
    let prec = x.prec();
    let mut acc = Enclosure::from_int(0, prec);
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(x).add(&Enclosure::from_integer(c, prec));
    }
    acc
}

/// Encloses a ℚ(π) element given an enclosure of π.
pub fn eval_piratio(v: &PiRatio, pi: &Enclosure) -> Result<Enclosure, NumericError> {
    eval_intpoly(v.num(), pi).div(&eval_intpoly(v.den(), pi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn third_is_enclosed() {
        let e = Enclosure::from_rational(&Rational::new(1, 3), 64);
        assert!(e.contains_rational(&Rational::new(1, 3)));
        assert!(e.lo() < e.hi());
    }

    #[test]
    fn product_of_mixed_signs() {
        let a = Enclosure::from_f64_bounds(-1.0, 2.0, 64);
        let b = Enclosure::from_f64_bounds(-3.0, 0.5, 64);
        let p = a.mul(&b);
        assert_eq!(p.lo().to_f64(), -6.0);
        assert_eq!(p.hi().to_f64(), 3.0);
    }

    #[test]
    fn decimal_parsing() {
        assert_eq!(parse_decimal("1.25"), Some(Rational::new(5, 4)));
        assert_eq!(parse_decimal("-0.5"), Some(Rational::new(-1, 2)));
        assert_eq!(parse_decimal("7"), Some(Rational::from(7)));
        assert_eq!(parse_decimal("1.2.3"), None);
        assert_eq!(parse_decimal("abc"), None);
    }

    #[test]
    fn pi_ratio_evaluation() {
        let rho: PiRatio = "(12 - pi^2)/(18*pi^2)".parse().unwrap();
        let e = eval_piratio(&rho, &Enclosure::pi(128)).unwrap();
        let v = (12.0 - std::f64::consts::PI.powi(2)) / (18.0 * std::f64::consts::PI.powi(2));
        assert!((e.mid().to_f64() - v).abs() < 1e-15);
        assert!(e.width() < 1e-30);
    }

    #[test]
    fn reciprocal_of_straddling_interval_fails() {
        let a = Enclosure::from_f64_bounds(-1.0, 1.0, 64);
        assert!(matches!(a.recip(), Err(NumericError::ZeroDivisor)));
    }
}
