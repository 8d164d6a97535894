use rug::Integer;

use crate::correction::CFApprox;
use crate::exactmath::Rational;
use crate::seriesgen::{Family, Template};

use super::constants::{const_c1, gamma_reference, harmonic, ln2, pi, C1Mode};
use super::enclosure::eval_piratio;
use super::lebesgue::{lebesgue_quadrature, lebesgue_w_bracket};
use super::{Enclosure, NumericError};

/// `G(n) = Σ_{k=0}^{n} (C(2k,k)/4^k)²`, via `t_k = t_{k−1}·((2k−1)/(2k))²`.
pub fn landau_g(n: u64) -> Rational {
    let mut t = Rational::from(1);
    let mut g = Rational::from(1);
    for k in 1..=n as i64 {
        let r = Rational::new(2 * k - 1, 2 * k);
        t = t * &r * &r;
        g = g + &t;
    }
    g
}

/// Where the Lebesgue value `L_{n/2}` comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LebesgueSource {
    /// Asymptotic bracket only.
    Bracket,
    /// Bracket intersected with the quadrature oracle.
    BracketAndQuadrature,
}

/// Enclosure of `MC_k(n)` including the outer scale.
pub fn cf_enclosure(cf: &CFApprox, n: u64, prec: u32) -> Result<Enclosure, NumericError> {
    let nq = Rational::from(Integer::from(n));
    if cf.rational_terms().is_some() {
        let v = cf
            .evaluate_unscaled(&nq, |c| c.as_rational().unwrap())
            .ok_or(NumericError::ZeroDivisor)?;
        let e = Enclosure::from_rational(&v, prec);
        return match cf.family() {
            Family::Landau => e.div(&pi(prec)),
            _ => Ok(e),
        };
    }
    let p = pi(prec);
    let shift = Enclosure::from_rational(&(&nq + &cf.family().shift()), prec);
    let base = match cf.family().template() {
        Template::QuadraticCF => shift.sqr(),
        Template::LinearCF => shift,
    };
    let mut tail = Enclosure::from_int(0, prec);
    for (num, den) in cf.terms().iter().rev() {
        let d = base.add(&eval_piratio(den, &p)?).add(&tail);
        tail = eval_piratio(num, &p)?.div(&d)?;
    }
    Ok(tail.mul(&eval_piratio(&cf.family().outer_scale(), &p)?))
}

/// Enclosure of the correction error `E_k(n) = v(n) − MC₀(n) − MC_k(n)`.
///
/// Landau uses exact `G(n)`; Euler uses exact `H_n` and the γ oracle;
/// Lebesgue uses the asymptotic bracket, falling back to quadrature when the
/// bracket alone is too wide, and `L₀ = 1` at `n = 0`.
pub fn error_term(family: Family, cf: &CFApprox, n: u64, prec: u32) -> Result<Enclosure, NumericError> {
    assert_eq!(cf.family(), family, "approximant belongs to another family");
    let w = prec + 32;
    let mc = cf_enclosure(cf, n, w)?;
    let e = match family {
        Family::Landau => {
            let g = Enclosure::from_rational(&landau_g(n), w);
            let l = Enclosure::ln_rational(&(Rational::from(Integer::from(n)) + Rational::new(3, 4)), w);
            let c0_pi = gamma_reference(w).add(&ln2(w).mul_rational(&Rational::from(4)));
            g.sub(&l.add(&c0_pi).div(&pi(w))?).sub(&mc)
        }
        Family::Euler => {
            if n == 0 {
                return Err(NumericError::InvalidInput("Euler error term needs n >= 1".into()));
            }
            let h = Enclosure::from_rational(&harmonic(n), w);
            let l = Enclosure::ln_rational(&Rational::from(Integer::from(n)), w);
            h.sub(&l).sub(&gamma_reference(w)).sub(&mc)
        }
        Family::Lebesgue => lebesgue_error(n, &mc, w, LebesgueSource::BracketAndQuadrature)?,
    };
    Ok(e.with_prec(prec))
}

/// `L_{n/2} − (4/π²) ln(n+1) − c₁ − MC_k(n)` given the enclosure of `MC_k(n)`.
pub fn lebesgue_error(n: u64, mc: &Enclosure, w: u32, source: LebesgueSource) -> Result<Enclosure, NumericError> {
    let log_part = || -> Result<Enclosure, NumericError> {
        let l = Enclosure::ln_rational(&Rational::from(Integer::from(n + 1)), w);
        Ok(l.mul_rational(&Rational::from(4))
            .div(&pi(w).sqr())?
            .add(&const_c1(w, C1Mode::Accelerated)?))
    };
    if n == 0 {
        return Ok(Enclosure::from_int(1, w).sub(&log_part()?).sub(mc));
    }
    let bracket = lebesgue_w_bracket(n, w).sub(mc);
    if source == LebesgueSource::Bracket || bracket.relative_width() < 1e-3 {
        return Ok(bracket);
    }
    let quad = lebesgue_quadrature(n, 1e-13)?;
    let from_quad = quad.with_prec(w).sub(&log_part()?).sub(mc);
    bracket
        .intersect(&from_quad)
        .ok_or_else(|| NumericError::Inconsistent(format!("bracket and quadrature disagree at n = {n}")))
}
