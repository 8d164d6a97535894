//! Polynomials in a handful of unknowns, used as series coefficients while
//! correction coefficients are still undetermined.

use std::collections::BTreeMap;
use std::fmt;

use super::ring::{Field, Ring};
use super::Rational;

/// Exponent vector with trailing zeros trimmed, so the constant monomial is empty.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn var(i: usize) -> Self {
        let mut e = vec![0; i + 1];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    fn mul(&self, rhs: &Self) -> Self {
        let n = self.0.len().max(rhs.0.len());
        let e = (0..n).map(|i| self.exponent(i) + rhs.exponent(i)).collect();
        Monomial(e)
    }

    fn without(&self, i: usize) -> Self {
        let mut e = self.0.clone();
        if i < e.len() {
            e[i] = 0;
        }
        while e.last() == Some(&0) {
            e.pop();
        }
        Monomial(e)
    }

    fn is_constant(&self) -> bool {
        self.0.is_empty()
    }
}

/// Sparse polynomial over `K` in the unknowns `u0, u1, …`.
#[derive(Clone, PartialEq)]
pub struct MPoly<K> {
    terms: BTreeMap<Monomial, K>,
}

impl<K: Field> MPoly<K> {
    pub fn constant(c: K) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::default(), c);
        }
        MPoly { terms }
    }

    pub fn var(i: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(i), K::one());
        MPoly { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &K)> {
        self.terms.iter()
    }

    /// The value when no unknown occurs.
    pub fn as_constant(&self) -> Option<K> {
        match self.terms.len() {
            0 => Some(K::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_constant().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.exponent(var)).max().unwrap_or(0)
    }

    /// Unknowns that occur with a nonzero coefficient.
    pub fn vars(&self) -> Vec<usize> {
        let mut out: Vec<usize> = Vec::new();
        for m in self.terms.keys() {
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 && !out.contains(&i) {
                    out.push(i);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Coefficient of `var^d`, a polynomial in the remaining unknowns.
    pub fn coeff_of(&self, var: usize, d: u32) -> Self {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            if m.exponent(var) == d {
                terms.insert(m.without(var), c.clone());
            }
        }
        MPoly { terms }
    }

    /// Substitutes `value` for unknown `var`.
    pub fn substitute(&self, var: usize, value: &K) -> Self {
        let mut out = MPoly::zero();
        let mut powers: Vec<K> = vec![K::one()];
        for (m, c) in &self.terms {
            let e = m.exponent(var) as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap().mul(value);
                powers.push(next);
            }
            let key = m.without(var);
            let term = c.mul(&powers[e]);
            out.add_term(key, term);
        }
        out
    }

    fn add_term(&mut self, m: Monomial, c: K) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let s = existing.add(&c);
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn map_coeffs(&self, f: impl Fn(&K) -> K) -> Self {
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }
}

impl<K: Field> Ring for MPoly<K> {
    fn zero() -> Self {
        MPoly {
            terms: BTreeMap::new(),
        }
    }
    fn one() -> Self {
        MPoly::constant(K::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
    fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.neg());
        }
        out
    }
    fn mul(&self, rhs: &Self) -> Self {
        let mut out = MPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca.mul(cb));
            }
        }
        out
    }
    fn neg(&self) -> Self {
        self.map_coeffs(|c| c.neg())
    }
    fn from_rational(r: &Rational) -> Self {
        MPoly::constant(K::from_rational(r))
    }
    fn try_inv(&self) -> Option<Self> {
        self.as_constant()
            .and_then(|c| c.try_inv())
            .map(MPoly::constant)
    }
    fn mul_rational(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return MPoly::zero();
        }
        self.map_coeffs(|c| c.mul_rational(r))
    }
}

impl<K: Field> fmt::Display for MPoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "*u{i}")?,
                    _ => write!(f, "*u{i}^{e}")?,
                }
            }
        }
        Ok(())
    }
}

impl<K: Field> fmt::Debug for MPoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type P = MPoly<Rational>;

    fn q(p: i64, d: i64) -> Rational {
        Rational::new(p, d)
    }

    #[test]
    fn substitute_and_collect() {
        let u = P::var(0);
        let w = P::var(1);
        // (1/2 + u) * (w - 3)
        let p = P::constant(q(1, 2)).add(&u).mul(&w.sub(&P::from_int(3)));
        assert_eq!(p.degree_in(0), 1);
        assert_eq!(p.vars(), vec![0, 1]);
        let at = p.substitute(0, &q(-1, 2));
        assert!(at.is_zero());
        let c = p.substitute(1, &q(5, 1));
        assert_eq!(c.coeff_of(0, 1).as_constant(), Some(q(2, 1)));
        assert_eq!(c.coeff_of(0, 0).as_constant(), Some(q(1, 1)));
    }

    #[test]
    fn only_constants_are_units() {
        assert!(P::var(0).try_inv().is_none());
        assert_eq!(
            P::from_int(4).try_inv().unwrap().as_constant(),
            Some(q(1, 4))
        );
    }
}
