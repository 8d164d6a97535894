use std::fmt::Write as _;

use rayon::prelude::*;
use rug::Integer;
use serde_json::{json, Value};

use crate::correction::{derive, CFApprox, DeriveError};
use crate::exactmath::{PiRatio, Rational};
use crate::numeric::constants::pi;
use crate::numeric::{error_term, eval_piratio, Enclosure, NumericError};
use crate::seriesgen::Family;

use crate::json::SCHEMA_VERSION;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    CertifiedTrue,
    Inconclusive,
    CertifiedFalse,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::CertifiedTrue => "certified-true",
            Verdict::Inconclusive => "inconclusive",
            Verdict::CertifiedFalse => "certified-false",
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Starting precision and how many times it may be doubled for a point
/// that comes out inconclusive.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckOptions {
    pub precision: u32,
    pub max_doublings: u32,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions { precision: 192, max_doublings: 4 }
    }
}

impl CheckOptions {
    pub fn with_precision(precision: u32) -> Self {
        CheckOptions { precision, ..Default::default() }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PointResult {
    pub n: u64,
    pub verdict: Verdict,
    /// Precision of the evaluation that settled the verdict (or the last one tried).
    pub precision: u32,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct InequalityReport {
    pub theorem: String,
    pub n_min: u64,
    pub n_max: u64,
    pub precision: u32,
    pub points: Vec<PointResult>,
}

impl InequalityReport {
    /// Certified-false if any point is, else inconclusive if any point is.
    pub fn verdict(&self) -> Verdict {
        if self.count(Verdict::CertifiedFalse) > 0 {
            Verdict::CertifiedFalse
        } else if self.count(Verdict::Inconclusive) > 0 {
            Verdict::Inconclusive
        } else {
            Verdict::CertifiedTrue
        }
    }

    pub fn count(&self, v: Verdict) -> usize {
        self.points.iter().filter(|p| p.verdict == v).count()
    }

    pub fn first(&self, v: Verdict) -> Option<&PointResult> {
        self.points.iter().find(|p| p.verdict == v)
    }

    pub fn max_precision_used(&self) -> u32 {
        self.points.iter().map(|p| p.precision).max().unwrap_or(self.precision)
    }

    pub fn to_json(&self) -> Value {
        let points: Vec<Value> = self
            .points
            .iter()
            .map(|p| {
                json!({
                    "n": p.n,
                    "verdict": p.verdict.as_str(),
                    "precision": p.precision,
                    "note": p.note,
                })
            })
            .collect();
        json!({
            "schema_version": SCHEMA_VERSION,
            "kind": "inequality",
            "theorem": self.theorem,
            "n_min": self.n_min,
            "n_max": self.n_max,
            "precision": self.precision,
            "max_precision_used": self.max_precision_used(),
            "verdict": self.verdict().as_str(),
            "counts": {
                "certified-true": self.count(Verdict::CertifiedTrue),
                "inconclusive": self.count(Verdict::Inconclusive),
                "certified-false": self.count(Verdict::CertifiedFalse),
            },
            "points": points,
        })
    }

    pub fn to_table(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "{}  n = {}..={}  precision {} bits (max used {})",
            self.theorem,
            self.n_min,
            self.n_max,
            self.precision,
            self.max_precision_used()
        );
        let _ = writeln!(
            s,
            "certified-true {}  inconclusive {}  certified-false {}  => {}",
            self.count(Verdict::CertifiedTrue),
            self.count(Verdict::Inconclusive),
            self.count(Verdict::CertifiedFalse),
            self.verdict()
        );
        let _ = writeln!(s, "{:>8}  {:<16} {:>6}  note", "n", "verdict", "bits");
        for p in &self.points {
            let _ = writeln!(
                s,
                "{:>8}  {:<16} {:>6}  {}",
                p.n,
                p.verdict.as_str(),
                p.precision,
                p.note.as_deref().unwrap_or("")
            );
        }
        s
    }
}

/// `C/(n+shift)^exponent < E(n) < C'/(n+shift')^exponent`.
#[derive(Debug, Clone, PartialEq)]
pub struct DoubleInequality {
    pub tag: String,
    pub cf: CFApprox,
    pub lower_constant: PiRatio,
    pub lower_shift: Rational,
    pub upper_constant: PiRatio,
    pub upper_shift: Rational,
    pub exponent: u32,
}

impl DoubleInequality {
    /// Landau, second correction: shifts 7/4 and 3/4, power 10.
    pub fn theorem2() -> Result<Self, DeriveError> {
        let r = derive(Family::Landau, 2)?;
        Ok(DoubleInequality {
            tag: "landau-thm2".into(),
            cf: r.cf,
            lower_constant: r.limit_constant.clone(),
            lower_shift: Rational::new(7, 4),
            upper_constant: r.limit_constant,
            upper_shift: Rational::new(3, 4),
            exponent: 10,
        })
    }

    /// Lebesgue, first correction: shifts 13/8 and 5/8, power 6.
    pub fn theorem4() -> Result<Self, DeriveError> {
        let r = derive(Family::Lebesgue, 1)?;
        Ok(DoubleInequality {
            tag: "lebesgue-thm4".into(),
            cf: r.cf,
            lower_constant: r.limit_constant.clone(),
            lower_shift: Rational::new(13, 8),
            upper_constant: r.limit_constant,
            upper_shift: Rational::new(5, 8),
            exponent: 6,
        })
    }

    fn bound(&self, c: &PiRatio, shift: &Rational, n: u64, prec: u32) -> Result<Enclosure, NumericError> {
        let base = Rational::from(Integer::from(n)) + shift;
        let den = Enclosure::from_rational(&base.pow(self.exponent as i32), prec);
        eval_piratio(c, &pi(prec))?.div(&den)
    }

    fn check_point(&self, n: u64, prec: u32) -> Result<(Verdict, Option<String>), NumericError> {
        let e = error_term(self.cf.family(), &self.cf, n, prec)?;
        let lo = self.bound(&self.lower_constant, &self.lower_shift, n, prec)?;
        let hi = self.bound(&self.upper_constant, &self.upper_shift, n, prec)?;
        if lo.certainly_lt(&e) && e.certainly_lt(&hi) {
            return Ok((Verdict::CertifiedTrue, None));
        }
        if e.hi() <= lo.lo() {
            return Ok((Verdict::CertifiedFalse, Some(format!("lower bound fails: E = {e}, bound = {lo}"))));
        }
        if e.lo() >= hi.hi() {
            return Ok((Verdict::CertifiedFalse, Some(format!("upper bound fails: E = {e}, bound = {hi}"))));
        }
        Ok((Verdict::Inconclusive, Some(format!("overlap: E = {e}"))))
    }
}

/// Re-runs `f` at doubled precision while it stays inconclusive.
fn escalate(
    n: u64,
    opts: CheckOptions,
    f: impl Fn(u32) -> Result<(Verdict, Option<String>), NumericError>,
) -> PointResult {
    let mut prec = opts.precision;
    let mut doublings = 0;
    loop {
        let (verdict, note) = match f(prec) {
            Ok(v) => v,
            Err(e) => (Verdict::Inconclusive, Some(e.to_string())),
        };
        if verdict != Verdict::Inconclusive || doublings == opts.max_doublings {
            return PointResult { n, verdict, precision: prec, note };
        }
        prec *= 2;
        doublings += 1;
    }
}

/// Checks the double inequality for every `n` in `0..=n_max`.
pub fn check_double(ineq: &DoubleInequality, n_max: u64, opts: CheckOptions) -> InequalityReport {
    let points = (0..=n_max)
        .into_par_iter()
        .map(|n| escalate(n, opts, |p| ineq.check_point(n, p)))
        .collect();
    InequalityReport {
        theorem: ineq.tag.clone(),
        n_min: 0,
        n_max,
        precision: opts.precision,
        points,
    }
}

pub fn check_theorem2(n_max: u64, opts: CheckOptions) -> Result<InequalityReport, DeriveError> {
    Ok(check_double(&DoubleInequality::theorem2()?, n_max, opts))
}

pub fn check_theorem4(n_max: u64, opts: CheckOptions) -> Result<InequalityReport, DeriveError> {
    Ok(check_double(&DoubleInequality::theorem4()?, n_max, opts))
}

/// Certifies `E(n+1) < E(n)` for consecutive `n` in `n_min..=n_max`.
/// A range with a single point has nothing to compare and is certified.
pub fn check_monotone(tag: &str, cf: &CFApprox, n_min: u64, n_max: u64, opts: CheckOptions) -> InequalityReport {
    let family = cf.family();
    let points = (n_min..n_max)
        .into_par_iter()
        .map(|n| {
            escalate(n, opts, |p| {
                let a = error_term(family, cf, n, p)?;
                let b = error_term(family, cf, n + 1, p)?;
                Ok(if b.certainly_lt(&a) {
                    (Verdict::CertifiedTrue, None)
                } else if b.lo() >= a.hi() {
                    (Verdict::CertifiedFalse, Some(format!("E({}) = {b} >= E({n}) = {a}", n + 1)))
                } else {
                    (Verdict::Inconclusive, Some(format!("overlap: E({n}) = {a}, E({}) = {b}", n + 1)))
                })
            })
        })
        .collect();
    InequalityReport {
        theorem: tag.to_string(),
        n_min,
        n_max,
        precision: opts.precision,
        points,
    }
}

pub fn check_landau_monotone(n_max: u64, opts: CheckOptions) -> Result<InequalityReport, DeriveError> {
    let r = derive(Family::Landau, 2)?;
    Ok(check_monotone("landau-monotone", &r.cf, 0, n_max, opts))
}

pub fn check_lebesgue_monotone(n_max: u64, opts: CheckOptions) -> Result<InequalityReport, DeriveError> {
    let r = derive(Family::Lebesgue, 1)?;
    Ok(check_monotone("lebesgue-monotone", &r.cf, 0, n_max, opts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::Ring;

    #[test]
    fn theorem2_holds_at_zero() {
        let r = check_theorem2(0, CheckOptions::default()).unwrap();
        assert_eq!(r.points.len(), 1);
        assert_eq!(r.verdict(), Verdict::CertifiedTrue);
        assert_eq!(r.points[0].precision, 192);
    }

    #[test]
    fn single_point_monotone_is_vacuous() {
        let r = check_landau_monotone(0, CheckOptions::default()).unwrap();
        assert!(r.points.is_empty());
        assert_eq!(r.verdict(), Verdict::CertifiedTrue);
    }

    #[test]
    fn doubled_lower_constant_is_caught() {
        let mut ineq = DoubleInequality::theorem2().unwrap();
        ineq.lower_constant = ineq.lower_constant.mul_rational(&Rational::from(2));
        let r = check_double(&ineq, 40, CheckOptions::default());
        assert_eq!(r.verdict(), Verdict::CertifiedFalse);
        assert_eq!(r.points[40].verdict, Verdict::CertifiedFalse);
    }
}
