use crate::exactmath::{PiRatio, Rational, Ring, SeriesError, TruncSeries};
use crate::seriesgen::{Family, Template};

/// A correction function `MC_k`: `outer_scale · num₁/(den(n) + den₁ + num₂/(…))`,
/// where `den(n)` is `(n+shift)²` or `n` according to the family template.
#[derive(Debug, Clone, PartialEq)]
pub struct CFApprox {
    family: Family,
    terms: Vec<(PiRatio, PiRatio)>,
}

impl CFApprox {
    pub fn new(family: Family, terms: Vec<(PiRatio, PiRatio)>) -> Self {
        CFApprox { family, terms }
    }

    /// Depth-0 approximant: the empty fraction.
    pub fn empty(family: Family) -> Self {
        CFApprox::new(family, Vec::new())
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn depth(&self) -> usize {
        self.terms.len()
    }

    /// `(num_j, den_j)` for `j = 1..=depth`.
    pub fn terms(&self) -> &[(PiRatio, PiRatio)] {
        &self.terms
    }

    /// The first `k` levels.
    pub fn truncated(&self, k: usize) -> Self {
        CFApprox::new(self.family, self.terms[..k.min(self.terms.len())].to_vec())
    }

    /// Terms as rationals, when no coefficient involves π.
    pub fn rational_terms(&self) -> Option<Vec<(Rational, Rational)>> {
        self.terms
            .iter()
            .map(|(a, b)| Some((a.as_rational()?, b.as_rational()?)))
            .collect()
    }

    /// Value of the fraction at `n` without the outer scale; `None` on a zero denominator.
    pub fn evaluate_unscaled<C: Ring>(&self, n: &C, coeff: impl Fn(&PiRatio) -> C) -> Option<C> {
        let shift = C::from_rational(&self.family.shift());
        let base = match self.family.template() {
            Template::QuadraticCF => {
                let s = n.add(&shift);
                s.mul(&s)
            }
            Template::LinearCF => n.add(&shift),
        };
        let mut tail = C::zero();
        for (num, den) in self.terms.iter().rev() {
            let d = base.add(&coeff(den)).add(&tail);
            tail = coeff(num).mul(&d.try_inv()?);
        }
        Some(tail)
    }
}

/// Exact `MC_k(n)` in ℚ(π).
pub fn cf_evaluate_exact(cf: &CFApprox, n: &Rational) -> Option<PiRatio> {
    let v = match cf.rational_terms() {
        Some(_) => cf
            .evaluate_unscaled(n, |c| c.as_rational().unwrap())
            .map(PiRatio::from)?,
        None => cf.evaluate_unscaled(&PiRatio::from(n), |c| c.clone())?,
    };
    Some(v.mul(&cf.family().outer_scale()))
}

/// Series of the fraction in `x = 1/n` through `x^order`, for coefficients
/// in any ring (used with symbolic unknowns during derivation).
///
/// Level `j` is expanded only as far as it can influence `x^order`.
pub fn cf_series<C: Ring>(
    template: Template,
    shift: &Rational,
    terms: &[(C, C)],
    order: i64,
) -> Result<TruncSeries<C>, SeriesError> {
    let step = match template {
        Template::QuadraticCF => 4,
        Template::LinearCF => 2,
    };
    let s = C::from_rational(shift);
    let mut tail: Option<TruncSeries<C>> = None;
    for (j, (num, den)) in terms.iter().enumerate().rev() {
        let ord = order - step * j as i64;
        let d = match template {
            Template::QuadraticCF => {
                // (n+s)² + d = x⁻²[(1+sx)² + d x²]
                let poly = [C::one(), s.add(&s), s.mul(&s).add(den)];
                let mut d = TruncSeries::from_poly(&poly, ord);
                if let Some(t) = &tail {
                    d = d.add(&t.shift_exponent(2));
                }
                d
            }
            Template::LinearCF => {
                // n + s + d = x⁻¹[1 + (s+d) x]
                let poly = [C::one(), s.add(den)];
                let mut d = TruncSeries::from_poly(&poly, ord);
                if let Some(t) = &tail {
                    d = d.add(&t.shift_exponent(1));
                }
                d
            }
        };
        let lift = match template {
            Template::QuadraticCF => 2,
            Template::LinearCF => 1,
        };
        let r = d.truncate(ord - lift).reciprocal()?;
        tail = Some(r.scale(num).shift_exponent(lift).truncate(ord));
    }
    Ok(tail.unwrap_or_else(|| TruncSeries::zero(order)))
}

/// `MC_k(n) − MC_k(n+1)` in `x = 1/n` through `x^order`, without the outer scale.
pub fn cf_difference_series(cf: &CFApprox, order: i64) -> Result<TruncSeries<PiRatio>, SeriesError> {
    let f = cf.family();
    let s = cf_series(f.template(), &f.shift(), cf.terms(), order)?;
    Ok(s.sub(&s.shift_substitute()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pr(p: i64, d: i64) -> PiRatio {
        PiRatio::from(Rational::new(p, d))
    }

    #[test]
    fn euler_first_level_value() {
        let cf = CFApprox::new(Family::Euler, vec![(pr(1, 2), pr(1, 6))]);
        assert_eq!(cf_evaluate_exact(&cf, &Rational::from(1)).unwrap(), pr(3, 7));
    }

    #[test]
    fn empty_fraction_is_zero() {
        for f in Family::ALL {
            let cf = CFApprox::empty(f);
            assert!(cf_evaluate_exact(&cf, &Rational::from(3)).unwrap().is_zero());
            let d = cf_difference_series(&cf, 6).unwrap();
            assert!(d.is_zero_through(6).unwrap());
        }
    }

    #[test]
    fn series_agrees_with_direct_expansion() {
        // a/(n + b) = a x/(1 + b x)
        let cf = CFApprox::new(Family::Euler, vec![(pr(1, 2), pr(1, 6))]);
        let s = cf_series(Template::LinearCF, &Rational::from(0), cf.terms(), 3).unwrap();
        assert_eq!(s.coeff(1).unwrap(), pr(1, 2));
        assert_eq!(s.coeff(2).unwrap(), pr(-1, 12));
        assert_eq!(s.coeff(3).unwrap(), pr(1, 72));
        assert_eq!(s.valid_order(), 3);
    }
}
