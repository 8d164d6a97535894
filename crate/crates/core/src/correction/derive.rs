use crate::exactmath::{
    solve_affine, Field, MPoly, PiRatio, Rational, Ring, SeriesError, SolveError, TruncSeries,
};
use crate::seriesgen::{
    brouncker_series_auto, euler_difference, lebesgue_w_difference, Family, SeriesGenError, Template,
};
use crate::exactmath::log_shift_series;

use super::cfapprox::{cf_series, CFApprox};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DeriveError {
    #[error("depth {depth} exceeds the certified limit {limit} for {family}; pass the uncertified flag to go further")]
    DepthLimit { family: Family, depth: usize, limit: usize },
    #[error("level {level}, order {order}: {source}")]
    Solve {
        level: usize,
        order: i64,
        #[source]
        source: SolveError,
    },
    #[error("auto-vanish violated at level {level}: coefficient of x^{order} is {value}")]
    AutoVanish { level: usize, order: i64, value: String },
    #[error("first surviving coefficient (x^{order}) vanishes")]
    ZeroSurvivor { order: i64 },
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    SeriesGen(#[from] SeriesGenError),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DeriveOptions {
    /// Allow depths beyond [`Family::certified_depth`].
    pub uncertified: bool,
}

/// Result of [`derive`]: the fitted approximant together with the
/// asymptotic constant of its error, `E_k(n) ~ C_k n^{−s}`.
#[derive(Debug, Clone, PartialEq)]
pub struct DerivationReport {
    pub cf: CFApprox,
    /// `C_k`, including the family's outer scale.
    pub limit_constant: PiRatio,
    /// `s`: `4k+2` for quadratic families, `2k+1` for Euler.
    pub limit_exponent: i64,
    /// First surviving terms of `E_k(n) − E_k(n+1)` (outer scale not applied),
    /// starting at `x^{s+1}`.
    pub residual: TruncSeries<PiRatio>,
    /// Brouncker truncation used for Landau.
    pub brouncker_k: Option<usize>,
    /// Number of expansion terms `M` used for Lebesgue.
    pub lebesgue_terms: Option<usize>,
}

/// Orders of the conditions fixing level `k`: (numerator, denominator),
/// the orders that must vanish on their own, and the survivor.
struct LevelPlan {
    num_order: i64,
    den_order: i64,
    auto: Vec<i64>,
}

fn plan(template: Template, k: i64) -> LevelPlan {
    match template {
        Template::QuadraticCF => LevelPlan {
            num_order: 4 * k - 1,
            den_order: 4 * k + 1,
            auto: vec![4 * k, 4 * k + 2],
        },
        Template::LinearCF => LevelPlan {
            num_order: 2 * k,
            den_order: 2 * k + 1,
            auto: vec![],
        },
    }
}

/// Runs the multiple-correction recursion on a difference series `diff`.
fn derive_levels<K: Field>(
    template: Template,
    shift: &Rational,
    diff: &TruncSeries<K>,
    depth: usize,
) -> Result<Vec<(K, K)>, DeriveError> {
    let mut known: Vec<(K, K)> = Vec::with_capacity(depth);
    let lift = |c: &K| MPoly::constant(c.clone());
    for level in 1..=depth {
        let p = plan(template, level as i64);
        let top = p.den_order.max(p.auto.iter().copied().max().unwrap_or(0));
        let mut terms: Vec<(MPoly<K>, MPoly<K>)> =
            known.iter().map(|(a, b)| (lift(a), lift(b))).collect();
        terms.push((MPoly::var(0), MPoly::var(1)));
        let cf = cf_series(template, shift, &terms, top)?;
        let full = diff.map(lift).sub(&cf.sub(&cf.shift_substitute()));

        let err = |order: i64| move |source| DeriveError::Solve { level, order, source };
        let num = solve_affine(&full.coeff(p.num_order)?, 0).map_err(err(p.num_order))?;
        let after_num = full.map(|c| c.substitute(0, &num));
        let check = |series: &TruncSeries<MPoly<K>>, order: i64| -> Result<(), DeriveError> {
            let c = series.coeff(order)?;
            if c.is_zero() {
                Ok(())
            } else {
                Err(DeriveError::AutoVanish {
                    level,
                    order,
                    value: c.to_string(),
                })
            }
        };
        for &o in p.auto.iter().filter(|&&o| o < p.den_order) {
            check(&after_num, o)?;
        }
        let den = solve_affine(&after_num.coeff(p.den_order)?, 1).map_err(err(p.den_order))?;
        let after_den = after_num.map(|c| c.substitute(1, &den));
        for &o in p.auto.iter().filter(|&&o| o > p.den_order) {
            check(&after_den, o)?;
        }
        known.push((num, den));
    }
    Ok(known)
}

/// `E_k(n) − E_k(n+1)` for fixed coefficients, through `x^order`.
fn full_difference<K: Field>(
    template: Template,
    shift: &Rational,
    diff: &TruncSeries<K>,
    terms: &[(K, K)],
    order: i64,
) -> Result<TruncSeries<K>, SeriesError> {
    let cf = cf_series(template, shift, terms, order)?;
    Ok(diff.truncate(order).sub(&cf.sub(&cf.shift_substitute())))
}

fn finish<K: Field + Into<PiRatio>>(
    family: Family,
    depth: usize,
    diff: &TruncSeries<K>,
) -> Result<(CFApprox, PiRatio, i64, TruncSeries<PiRatio>), DeriveError> {
    let template = family.template();
    let shift = family.shift();
    let terms = derive_levels(template, &shift, diff, depth)?;
    let s = family.limit_exponent(depth);
    let top = diff.valid_order();
    let full = full_difference(template, &shift, diff, &terms, top)?;
    for o in 0..=s {
        let c = full.coeff(o)?;
        if !c.is_zero() {
            return Err(DeriveError::AutoVanish {
                level: depth,
                order: o,
                value: c.to_string(),
            });
        }
    }
    let lead = full.coeff(s + 1)?;
    if lead.is_zero() {
        return Err(DeriveError::ZeroSurvivor { order: s + 1 });
    }
    let lead: PiRatio = lead.into();
    let c = lead
        .mul_rational(&Rational::new(1, s))
        .mul(&family.outer_scale());
    let residual = TruncSeries::from_fn(s + 1, top, |o| full.coeff(o).unwrap().into());
    let cf = CFApprox::new(
        family,
        terms.into_iter().map(|(a, b)| (a.into(), b.into())).collect(),
    );
    Ok((cf, c, s, residual))
}

/// Fixes the coefficients of `MC_depth` for `family` level by level.
pub fn derive(family: Family, depth: usize) -> Result<DerivationReport, DeriveError> {
    derive_with(family, depth, DeriveOptions::default())
}

pub fn derive_with(family: Family, depth: usize, opts: DeriveOptions) -> Result<DerivationReport, DeriveError> {
    let limit = family.certified_depth();
    if depth > limit && !opts.uncertified {
        return Err(DeriveError::DepthLimit { family, depth, limit });
    }
    // two orders past the survivor go into the residual
    let top = family.limit_exponent(depth) + 3;
    let mut brouncker_k = None;
    let mut lebesgue_terms = None;
    let (cf, limit_constant, limit_exponent, residual) = match family {
        Family::Landau => {
            let (k, q) = brouncker_series_auto(top);
            brouncker_k = Some(k);
            let d: TruncSeries<Rational> =
                log_shift_series(&Rational::new(3, 4), &Rational::new(7, 4), top).sub(&q);
            finish(family, depth, &d)?
        }
        Family::Euler => finish(family, depth, &euler_difference(top))?,
        Family::Lebesgue => {
            let m = Family::lebesgue_terms(depth);
            lebesgue_terms = Some(m);
            finish(family, depth, &lebesgue_w_difference(m))?
        }
    };
    Ok(DerivationReport {
        cf,
        limit_constant,
        limit_exponent,
        residual,
        brouncker_k,
        lebesgue_terms,
    })
}
