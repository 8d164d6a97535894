//! Dense univariate polynomials over ℤ, the building block of [`PiRatio`](super::PiRatio).

use std::cmp::Ordering;

use rug::{Assign, Integer};

/// Polynomial with integer coefficients, lowest degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct IntPoly {
    coeffs: Vec<Integer>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: impl Into<Integer>) -> Self {
        Self::from_coeffs(vec![c.into()])
    }

    /// `c · xᵏ`
    pub fn monomial(c: impl Into<Integer>, k: usize) -> Self {
        let mut coeffs = vec![Integer::new(); k + 1];
        coeffs[k] = c.into();
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<Integer>) -> Self {
        while coeffs.last().is_some_and(|c| *c == 0) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[Integer] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == 1
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Integer> {
        self.coeffs.last()
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| *c != 0)
    }

    pub fn is_monomial(&self) -> bool {
        match self.valuation() {
            Some(v) => v + 1 == self.coeffs.len(),
            None => false,
        }
    }

    pub fn content(&self) -> Integer {
        let mut g = Integer::new();
        for c in &self.coeffs {
            g.gcd_mut(c);
            if g == 1 {
                break;
            }
        }
        g
    }

    pub fn neg(&self) -> Self {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| Integer::from(-c)).collect(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += s;
        }
        Self::from_coeffs(coeffs)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(n, Integer::new());
        for (c, s) in coeffs.iter_mut().zip(&rhs.coeffs) {
            *c -= s;
        }
        Self::from_coeffs(coeffs)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        if self.coeffs.len() == 1 {
            return rhs.scale(&self.coeffs[0]);
        }
        if rhs.coeffs.len() == 1 {
            return self.scale(&rhs.coeffs[0]);
        }
        let mut coeffs = vec![Integer::new(); self.coeffs.len() + rhs.coeffs.len() - 1];
        let mut tmp = Integer::new();
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                tmp.assign(a * b);
                coeffs[i + j] += &tmp;
            }
        }
        Self::from_coeffs(coeffs)
    }

    pub fn scale(&self, k: &Integer) -> Self {
        if *k == 0 {
            return Self::zero();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| Integer::from(c * k)).collect(),
        }
    }

    /// Divides every coefficient by `k`, which must divide the content.
    pub fn div_exact_scalar(&self, k: &Integer) -> Self {
        if *k == 1 {
            return self.clone();
        }
        IntPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|c| Integer::from(c.div_exact_ref(k)))
                .collect(),
        }
    }

    /// Multiplies by `xᵏ`.
    pub fn shl(&self, k: usize) -> Self {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut coeffs = vec![Integer::new(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    /// Divides by `xᵏ`; the low `k` coefficients must be zero.
    pub fn shr(&self, k: usize) -> Self {
        debug_assert!(self.coeffs.iter().take(k).all(|c| *c == 0));
        IntPoly {
            coeffs: self.coeffs.iter().skip(k).cloned().collect(),
        }
    }

    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.leading().map(|l| l.cmp0()) == Some(Ordering::Less) {
            c = -c;
        }
        self.div_exact_scalar(&c)
    }

    /// Pseudo-remainder of `self` by `rhs`: `lc(rhs)^(deg self − deg rhs + 1) · self mod rhs`.
    fn pseudo_rem(&self, rhs: &Self) -> Self {
        let dr = rhs.degree().expect("pseudo-division by zero polynomial");
        let lc = rhs.leading().unwrap();
        let mut r = self.coeffs.clone();
        let mut tmp = Integer::new();
        while r.len() > dr && !r.is_empty() {
            let shift = r.len() - 1 - dr;
            let lead = r.last().unwrap().clone();
            for c in r.iter_mut() {
                *c *= lc;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                tmp.assign(&lead * b);
                r[shift + j] -= &tmp;
            }
            r.pop();
            while r.last().is_some_and(|c| *c == 0) {
                r.pop();
            }
        }
        Self::from_coeffs(r)
    }

    /// Exact quotient `self / rhs`; `rhs` must divide `self` in ℤ[x].
    pub fn div_exact(&self, rhs: &Self) -> Self {
        let dr = rhs.degree().expect("division by zero polynomial");
        if rhs.coeffs.len() == 1 {
            return self.div_exact_scalar(&rhs.coeffs[0]);
        }
        if self.is_zero() {
            return Self::zero();
        }
        let ds = self.degree().unwrap();
        assert!(ds >= dr, "inexact polynomial division");
        let lc = rhs.leading().unwrap();
        let mut r = self.coeffs.clone();
        let mut q = vec![Integer::new(); ds - dr + 1];
        let mut tmp = Integer::new();
        for k in (0..=ds - dr).rev() {
            let top = &r[k + dr];
            if *top == 0 {
                continue;
            }
            let qk = Integer::from(top.div_exact_ref(lc));
            for (j, b) in rhs.coeffs.iter().enumerate() {
                tmp.assign(&qk * b);
                r[k + j] -= &tmp;
            }
            q[k] = qk;
        }
        debug_assert!(r.iter().all(|c| *c == 0), "inexact polynomial division");
        Self::from_coeffs(q)
    }

    /// Primitive gcd with positive leading coefficient (integer content ignored).
    ///
    /// Returns the constant `1` when the inputs share no factor of positive degree.
    pub fn gcd_primitive(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.primitive_part();
        }
        if rhs.is_zero() {
            return self.primitive_part();
        }
        let va = self.valuation().unwrap();
        let vb = rhs.valuation().unwrap();
        let v = va.min(vb);
        let a = self.shr(va);
        let b = rhs.shr(vb);
        let g = if a.is_constant() || b.is_constant() {
            IntPoly::constant(1)
        } else {
            Self::prs_gcd(a, b)
        };
        g.shl(v)
    }

    fn prs_gcd(a: Self, b: Self) -> Self {
        let (mut a, mut b) = if a.degree() >= b.degree() {
            (a.primitive_part(), b.primitive_part())
        } else {
            (b.primitive_part(), a.primitive_part())
        };
        loop {
            if b.is_zero() {
                return a.primitive_part();
            }
            if b.is_constant() {
                return IntPoly::constant(1);
            }
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
    }

    pub fn eval_rational(&self, x: &rug::Rational) -> rug::Rational {
        let mut acc = rug::Rational::new();
        for c in self.coeffs.iter().rev() {
            acc *= x;
            acc += c;
        }
        acc
    }

    /// Largest coefficient bit length.
    pub fn max_bits(&self) -> u32 {
        self.coeffs.iter().map(|c| c.significant_bits()).max().unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> IntPoly {
        IntPoly::from_coeffs(cs.iter().map(|&c| Integer::from(c)).collect())
    }

    #[test]
    fn gcd_of_products() {
        // (x - 1)(x + 2) and (x - 1)(3x + 5)
        let a = p(&[-1, 1]).mul(&p(&[2, 1]));
        let b = p(&[-1, 1]).mul(&p(&[5, 3])).scale(&Integer::from(6));
        assert_eq!(a.gcd_primitive(&b), p(&[-1, 1]));
    }

    #[test]
    fn gcd_pulls_out_powers_of_x() {
        let a = p(&[0, 0, 4, 2]);
        let b = p(&[0, 6]);
        assert_eq!(a.gcd_primitive(&b), p(&[0, 1]));
    }

    #[test]
    fn exact_division_roundtrip() {
        let a = p(&[3, -1, 7]);
        let b = p(&[-12, 0, 1]);
        assert_eq!(a.mul(&b).div_exact(&b), a);
    }

    #[test]
    fn coprime_gcd_is_one() {
        assert!(p(&[1, 1]).gcd_primitive(&p(&[-1, 1])).is_one());
    }
}
