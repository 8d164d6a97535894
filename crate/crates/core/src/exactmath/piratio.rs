//! Elements of ℚ(π), with π treated as a formal transcendental.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use rug::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::intpoly::IntPoly;
use super::ring::{Field, Ring};
use super::Rational;

/// `num(π) / den(π)` in canonical form: coprime over ℚ, integer coefficients
/// with joint content 1, and `den` with a positive leading coefficient.
///
/// Equality is structural on the canonical form, which makes it algebraic
/// equality in ℚ(π).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PiRatio {
    num: IntPoly,
    den: IntPoly,
}

impl PiRatio {
    /// # Panics
    /// Panics if `den` is the zero polynomial.
    pub fn new(num: IntPoly, den: IntPoly) -> Self {
        assert!(!den.is_zero(), "PiRatio with zero denominator");
        let g = num.gcd_primitive(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g), den.div_exact(&g))
        };
        Self::normalize_content(num, den)
    }

    /// Fixes content and sign of an already coprime pair.
    fn normalize_content(num: IntPoly, den: IntPoly) -> Self {
        if num.is_zero() {
            return PiRatio {
                num,
                den: IntPoly::constant(1),
            };
        }
        let mut c = num.content();
        c.gcd_mut(&den.content());
        if den.leading().unwrap().cmp0() == Ordering::Less {
            c = -c;
        }
        if c == 1 {
            PiRatio { num, den }
        } else {
            PiRatio {
                num: num.div_exact_scalar(&c),
                den: den.div_exact_scalar(&c),
            }
        }
    }

    pub fn pi() -> Self {
        PiRatio {
            num: IntPoly::monomial(1, 1),
            den: IntPoly::constant(1),
        }
    }

    /// `r · πᵏ` for any integer `k`.
    pub fn rational_times_pi_pow(r: &Rational, k: i32) -> Self {
        let p = r.numer().clone();
        let q = r.denom().clone();
        if k >= 0 {
            Self::normalize_content(IntPoly::monomial(p, k as usize), IntPoly::constant(q))
        } else {
            Self::normalize_content(IntPoly::constant(p), IntPoly::monomial(q, (-k) as usize))
        }
    }

    pub fn num(&self) -> &IntPoly {
        &self.num
    }

    pub fn den(&self) -> &IntPoly {
        &self.den
    }

    /// The rational value when π does not occur.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.num.is_constant() && self.den.is_constant() {
            let n = self.num.coeffs().first().cloned().unwrap_or_default();
            Some(Rational::new(n, self.den.coeffs()[0].clone()))
        } else {
            None
        }
    }

    /// `(deg num, deg den)`; a rational has π-degree `(0, 0)`.
    pub fn pi_degrees(&self) -> (usize, usize) {
        (self.num.degree().unwrap_or(0), self.den.degree().unwrap_or(0))
    }

    /// Exact value after substituting a rational for π (used by tests to
    /// check field operations against evaluation).
    pub fn eval_rational(&self, x: &Rational) -> Option<Rational> {
        let d = self.den.eval_rational(x.as_rug());
        if d.cmp0() == Ordering::Equal {
            return None;
        }
        Some(Rational::from(self.num.eval_rational(x.as_rug()) / d))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Bit size of the largest integer in the canonical form.
    pub fn max_bits(&self) -> u32 {
        self.num.max_bits().max(self.den.max_bits())
    }

    fn mul_impl(&self, rhs: &Self) -> Self {
        if self.num.is_zero() || rhs.num.is_zero() {
            return Self::zero();
        }
        let g1 = self.num.gcd_primitive(&rhs.den);
        let g2 = rhs.num.gcd_primitive(&self.den);
        let (a, d) = if g1.is_one() {
            (self.num.clone(), rhs.den.clone())
        } else {
            (self.num.div_exact(&g1), rhs.den.div_exact(&g1))
        };
        let (c, b) = if g2.is_one() {
            (rhs.num.clone(), self.den.clone())
        } else {
            (rhs.num.div_exact(&g2), self.den.div_exact(&g2))
        };
        Self::normalize_content(a.mul(&c), b.mul(&d))
    }

    fn add_impl(&self, rhs: &Self) -> Self {
        if self.num.is_zero() {
            return rhs.clone();
        }
        if rhs.num.is_zero() {
            return self.clone();
        }
        if self.den.is_constant() && rhs.den.is_constant() {
            let b = &self.den.coeffs()[0];
            let d = &rhs.den.coeffs()[0];
            let num = self.num.scale(d).add(&rhs.num.scale(b));
            return Self::normalize_content(num, IntPoly::constant(Integer::from(b * d)));
        }
        if self.den == rhs.den {
            let num = self.num.add(&rhs.num);
            return Self::new(num, self.den.clone());
        }
        let g = self.den.gcd_primitive(&rhs.den);
        let (bg, dg) = if g.is_one() {
            (self.den.clone(), rhs.den.clone())
        } else {
            (self.den.div_exact(&g), rhs.den.div_exact(&g))
        };
        let num = self.num.mul(&dg).add(&rhs.num.mul(&bg));
        let den = self.den.mul(&dg);
        if g.is_one() {
            Self::normalize_content(num, den)
        } else {
            let h = num.gcd_primitive(&g);
            if h.is_one() {
                Self::normalize_content(num, den)
            } else {
                Self::normalize_content(num.div_exact(&h), den.div_exact(&h))
            }
        }
    }

    /// Canonical polynomial string over the variable `pi`, e.g.
    /// `(12 - pi^2)/(18*pi^2)`.
    pub fn to_canonical_string(&self) -> String {
        let n = poly_string(&self.num);
        if self.den.is_one() {
            return n;
        }
        let n_wrapped = if self.num.coeffs().iter().filter(|c| **c != 0).count() > 1 {
            format!("({n})")
        } else {
            n
        };
        let d = poly_string(&self.den);
        let d_wrapped = if self.den.coeffs().iter().filter(|c| **c != 0).count() > 1
            || !self.den.is_constant()
        {
            format!("({d})")
        } else {
            d
        };
        format!("{n_wrapped}/{d_wrapped}")
    }
}

fn poly_string(p: &IntPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, c) in p.coeffs().iter().enumerate() {
        if *c == 0 {
            continue;
        }
        let neg = c.cmp0() == Ordering::Less;
        let mag = Integer::from(c.abs_ref());
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let var = match k {
            0 => String::new(),
            1 => "pi".to_string(),
            _ => format!("pi^{k}"),
        };
        if k == 0 {
            out.push_str(&mag.to_string());
        } else if mag == 1 {
            out.push_str(&var);
        } else {
            out.push_str(&format!("{mag}*{var}"));
        }
    }
    out
}

impl fmt::Display for PiRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical_string())
    }
}

impl fmt::Debug for PiRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical_string())
    }
}

impl From<Rational> for PiRatio {
    fn from(r: Rational) -> Self {
        PiRatio::rational_times_pi_pow(&r, 0)
    }
}

impl From<&Rational> for PiRatio {
    fn from(r: &Rational) -> Self {
        PiRatio::rational_times_pi_pow(r, 0)
    }
}

impl Ring for PiRatio {
    fn zero() -> Self {
        PiRatio {
            num: IntPoly::zero(),
            den: IntPoly::constant(1),
        }
    }
    fn one() -> Self {
        PiRatio {
            num: IntPoly::constant(1),
            den: IntPoly::constant(1),
        }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        self.add_impl(rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.add_impl(&Ring::neg(rhs))
    }
    fn mul(&self, rhs: &Self) -> Self {
        self.mul_impl(rhs)
    }
    fn neg(&self) -> Self {
        PiRatio {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
    fn from_rational(r: &Rational) -> Self {
        PiRatio::from(r)
    }
    fn try_inv(&self) -> Option<Self> {
        if self.num.is_zero() {
            return None;
        }
        Some(Self::normalize_content(self.den.clone(), self.num.clone()))
    }
    fn mul_rational(&self, r: &Rational) -> Self {
        if Ring::is_zero(r) || self.num.is_zero() {
            return Self::zero();
        }
        Self::normalize_content(self.num.scale(r.numer()), self.den.scale(r.denom()))
    }
}

impl Field for PiRatio {}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid pi-ratio literal {input:?}: {reason}")]
pub struct ParsePiRatioError {
    pub input: String,
    pub reason: String,
}

/// Recursive-descent parser for `+ - * / ^ ( )`, integers and `pi`.
struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<PiRatio, String> {
        let mut acc = self.term()?;
        while let Some(op) = self.peek() {
            match op {
                b'+' => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                b'-' => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<PiRatio, String> {
        let mut acc = self.unary()?;
        while let Some(op) = self.peek() {
            match op {
                b'*' => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary()?);
                }
                b'/' => {
                    self.pos += 1;
                    let d = self.unary()?;
                    acc = acc.mul(&d.try_inv().ok_or("division by zero")?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<PiRatio, String> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(Ring::neg(&self.unary()?))
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<PiRatio, String> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let e: u32 = std::str::from_utf8(&self.src[start..self.pos])
                .unwrap()
                .parse()
                .map_err(|_| "expected exponent")?;
            let mut acc = PiRatio::one();
            for _ in 0..e {
                acc = acc.mul(&base);
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<PiRatio, String> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err("expected ')'".into());
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let n: Integer = std::str::from_utf8(&self.src[start..self.pos])
                    .unwrap()
                    .parse()
                    .map_err(|_| "bad integer")?;
                Ok(PiRatio::from(Rational::from(n)))
            }
            Some(b'p') => {
                if self.src[self.pos..].starts_with(b"pi") {
                    self.pos += 2;
                    Ok(PiRatio::pi())
                } else {
                    Err("unknown identifier".into())
                }
            }
            Some(c) => Err(format!("unexpected character {:?}", c as char)),
            None => Err("unexpected end of input".into()),
        }
    }
}

impl FromStr for PiRatio {
    type Err = ParsePiRatioError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser {
            src: s.as_bytes(),
            pos: 0,
        };
        let err = |reason: String| ParsePiRatioError {
            input: s.to_string(),
            reason,
        };
        let v = p.expr().map_err(err)?;
        if p.peek().is_some() {
            return Err(err("trailing input".into()));
        }
        Ok(v)
    }
}

impl Serialize for PiRatio {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PiRatio {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rho1_prints_canonically() {
        let r: PiRatio = "(12 - pi^2)/(18*pi^2)".parse().unwrap();
        assert_eq!(r.to_string(), "(12 - pi^2)/(18*pi^2)");
        let same: PiRatio = "(24 - 2*pi^2)/(36*pi*pi)".parse().unwrap();
        assert_eq!(r, same);
    }

    #[test]
    fn cancels_common_polynomial_factor() {
        let a: PiRatio = "(pi^2 - 12)*(pi + 1)/((pi + 1)*(3*pi))".parse().unwrap();
        let b: PiRatio = "(pi^2 - 12)/(3*pi)".parse().unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "(-12 + pi^2)/(3*pi)");
    }

    #[test]
    fn denominator_sign_is_positive() {
        let a: PiRatio = "1/(12 - pi^2)".parse().unwrap();
        assert_eq!(a.to_string(), "-1/(-12 + pi^2)");
    }

    #[test]
    fn rational_round_trip() {
        let a = PiRatio::from(Rational::new(-11, 192));
        assert_eq!(a.to_string(), "-11/192");
        assert_eq!(a.as_rational(), Some(Rational::new(-11, 192)));
        let b = PiRatio::rational_times_pi_pow(&Rational::new(89684299, 18166579200i64), -1);
        assert_eq!(b.to_string(), "89684299/(18166579200*pi)");
        assert_eq!(b.to_string().parse::<PiRatio>().unwrap(), b);
    }

    #[test]
    fn field_identities() {
        let a: PiRatio = "(7*pi^4 - 3)/(pi^2 + 5)".parse().unwrap();
        let b: PiRatio = "(pi - 2)/(pi^3)".parse().unwrap();
        let s = a.add(&b).sub(&b);
        assert_eq!(s, a);
        let q = a.mul(&b).mul(&b.inv());
        assert_eq!(q, a);
        assert!(a.sub(&a).is_zero());
    }
}
