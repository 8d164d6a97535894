use std::fmt::Write as _;

use rayon::prelude::*;
use rug::Integer;
use serde_json::{json, Value};

use crate::correction::{derive, DerivationReport};
use crate::exactmath::{PiRatio, Rational};
use crate::json::SCHEMA_VERSION;
use crate::numeric::constants::pi;
use crate::numeric::{error_term, eval_piratio, BigFloat, Enclosure};
use crate::seriesgen::Family;

use super::VerifyError;

pub const DEFAULT_SCHEDULE: [u64; 6] = [32, 64, 128, 256, 512, 1024];

/// A sample is used only below this relative width.
const MAX_RELATIVE_WIDTH: f64 = 0.01;

/// Empirical decay rate of `E_k(n)` against the derived values.
#[derive(Debug, Clone, PartialEq)]
pub struct RateFit {
    pub family: Family,
    pub depth: usize,
    pub precision: u32,
    pub samples: Vec<(u64, Enclosure)>,
    /// `(n_i, s_i)` with `s_i = ln(E(n_i)/E(n_{i+1})) / ln(n_{i+1}/n_i)`.
    pub exponent_sequence: Vec<(u64, Enclosure)>,
    /// Last term of the ratio sequence.
    pub fitted_exponent: BigFloat,
    /// Least-squares slope of `ln|E|` against `ln n`, as a cross-check.
    pub loglog_exponent: f64,
    /// `n^s·E(n)` at the largest usable sample, `s` the target exponent.
    pub raw_constant: Enclosure,
    /// Richardson extrapolation of `n^s·E(n)` over the last two usable samples,
    /// removing the `1/n` correction.
    pub fitted_constant: Enclosure,
    pub target_exponent: i64,
    pub target_constant: PiRatio,
}

impl RateFit {
    pub fn exponent_error(&self) -> f64 {
        (self.fitted_exponent.to_f64() - self.target_exponent as f64).abs()
    }

    pub fn target_constant_enclosure(&self, prec: u32) -> Enclosure {
        eval_piratio(&self.target_constant, &pi(prec)).expect("limit constant has a nonzero denominator")
    }

    pub fn target_constant_decimal(&self, digits: usize) -> String {
        let bits = (digits as f64 * std::f64::consts::LOG2_10) as u32 + 64;
        self.target_constant_enclosure(bits).to_decimal(digits)
    }

    /// `|fitted − C|/|C|` using midpoints.
    pub fn constant_relative_error(&self) -> f64 {
        let c = self.target_constant_enclosure(self.precision).mid().to_f64();
        (self.fitted_constant.mid().to_f64() - c).abs() / c.abs()
    }

    /// Whether `|s_i − s|` never increases along the sequence.
    pub fn converges_monotonically(&self) -> bool {
        let d: Vec<f64> = self
            .exponent_sequence
            .iter()
            .map(|(_, e)| (e.mid().to_f64() - self.target_exponent as f64).abs())
            .collect();
        d.windows(2).all(|w| w[1] <= w[0])
    }

    pub fn to_json(&self) -> Value {
        let digits = 20;
        let samples: Vec<Value> = self
            .samples
            .iter()
            .map(|(n, e)| json!({ "n": n, "error": e.to_decimal(digits), "relative_width": format!("{:.3e}", e.relative_width()) }))
            .collect();
        let seq: Vec<Value> = self
            .exponent_sequence
            .iter()
            .map(|(n, e)| json!({ "n": n, "exponent": e.to_decimal(digits) }))
            .collect();
        json!({
            "schema_version": SCHEMA_VERSION,
            "kind": "rate",
            "family": self.family.name(),
            "depth": self.depth,
            "precision": self.precision,
            "samples": samples,
            "exponent_sequence": seq,
            "fitted_exponent": self.fitted_exponent.to_string_radix(10, Some(digits)),
            "loglog_exponent": format!("{:.12}", self.loglog_exponent),
            "raw_constant": self.raw_constant.to_decimal(digits),
            "fitted_constant": self.fitted_constant.to_decimal(digits),
            "target_exponent": self.target_exponent,
            "target_constant": {
                "exact": self.target_constant.to_string(),
                "decimal": self.target_constant_decimal(digits),
            },
        })
    }

    pub fn to_table(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{} depth {}  precision {} bits", self.family, self.depth, self.precision);
        let _ = writeln!(s, "{:>8}  {:<28} {:>10}", "n", "E(n)", "rel.width");
        for (n, e) in &self.samples {
            let _ = writeln!(s, "{:>8}  {:<28} {:>10.2e}", n, e.to_decimal(16), e.relative_width());
        }
        for (n, e) in &self.exponent_sequence {
            let _ = writeln!(s, "exponent from n = {n:>6}: {}", e.to_decimal(10));
        }
        let _ = writeln!(
            s,
            "fitted exponent {} (log-log {:.6}), target {}",
            self.fitted_exponent.to_string_radix(10, Some(10)),
            self.loglog_exponent,
            self.target_exponent
        );
        let _ = writeln!(
            s,
            "fitted constant {} (raw {}), target {} = {}",
            self.fitted_constant.to_decimal(12),
            self.raw_constant.to_decimal(12),
            self.target_constant,
            self.target_constant_decimal(20)
        );
        s
    }
}

fn check_schedule(schedule: &[u64]) -> Result<(), VerifyError> {
    let err = |m: &str| Err(VerifyError::Schedule(m.into()));
    if schedule.len() < 4 {
        return err("at least 4 points are needed");
    }
    if schedule[0] == 0 {
        return err("n must be positive");
    }
    if schedule.windows(2).any(|w| w[1] <= w[0]) {
        return err("points must be strictly increasing");
    }
    let geometric = schedule
        .windows(3)
        .all(|w| w[0] as u128 * w[2] as u128 == w[1] as u128 * w[1] as u128);
    if !geometric {
        return err("points must form a geometric progression");
    }
    Ok(())
}

pub fn rate_fit(family: Family, depth: usize, schedule: &[u64], prec: u32) -> Result<RateFit, VerifyError> {
    rate_fit_report(&derive(family, depth)?, schedule, prec)
}

/// Fits using an existing derivation (for instance from the cache).
pub fn rate_fit_report(report: &DerivationReport, schedule: &[u64], prec: u32) -> Result<RateFit, VerifyError> {
    check_schedule(schedule)?;
    let cf = &report.cf;
    let family = cf.family();
    let samples = schedule
        .par_iter()
        .map(|&n| error_term(family, cf, n, prec).map(|e| (n, e)))
        .collect::<Result<Vec<_>, _>>()?;
    let usable: Vec<&(u64, Enclosure)> = samples
        .iter()
        .filter(|(_, e)| !e.contains_zero() && e.relative_width() < MAX_RELATIVE_WIDTH)
        .collect();
    if usable.len() < 2 {
        let n = samples
            .iter()
            .find(|(_, e)| e.contains_zero() || e.relative_width() >= MAX_RELATIVE_WIDTH)
            .map_or(0, |s| s.0);
        return Err(VerifyError::EnclosuresTooWide { n, usable: usable.len() });
    }
    let ratio_of = |a: u64, b: u64| Rational::new(Integer::from(b), Integer::from(a));

    let mut exponent_sequence = Vec::new();
    for w in usable.windows(2) {
        let (n0, e0) = w[0];
        let (n1, e1) = w[1];
        let q = e0.div(e1)?;
        if !q.is_positive() {
            continue;
        }
        let s = q.ln().div(&Enclosure::ln_rational(&ratio_of(*n0, *n1), prec))?;
        exponent_sequence.push((*n0, s));
    }
    let fitted_exponent = exponent_sequence
        .last()
        .map(|(_, s)| s.mid())
        .ok_or(VerifyError::EnclosuresTooWide { n: usable[0].0, usable: usable.len() })?;

    let (xs, ys): (Vec<f64>, Vec<f64>) = usable
        .iter()
        .map(|(n, e)| ((*n as f64).ln(), e.mid().to_f64().abs().ln()))
        .unzip();
    let mx = xs.iter().sum::<f64>() / xs.len() as f64;
    let my = ys.iter().sum::<f64>() / ys.len() as f64;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let loglog_exponent = -sxy / sxx;

    let s = report.limit_exponent;
    let scaled = |(n, e): &(u64, Enclosure)| {
        e.mul_rational(&Rational::from(Integer::from(*n)).pow(s as i32))
    };
    let last = usable[usable.len() - 1];
    let prev = usable[usable.len() - 2];
    let raw_constant = scaled(last);
    let r = ratio_of(prev.0, last.0);
    let fitted_constant = raw_constant
        .mul_rational(&r)
        .sub(&scaled(prev))
        .mul_rational(&(r - Rational::from(1)).recip());

    Ok(RateFit {
        family,
        depth: cf.depth(),
        precision: prec,
        samples,
        exponent_sequence,
        fitted_exponent,
        loglog_exponent,
        raw_constant,
        fitted_constant,
        target_exponent: s,
        target_constant: report.limit_constant.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schedule_rules() {
        assert!(check_schedule(&[1, 2, 4]).is_err());
        assert!(check_schedule(&[1, 2, 5, 10]).is_err());
        assert!(check_schedule(&[0, 0, 0, 0]).is_err());
        assert!(check_schedule(&[3, 9, 27, 81]).is_ok());
    }

    #[test]
    fn euler_first_correction() {
        let f = rate_fit(Family::Euler, 1, &[64, 128, 256, 512, 1024], 192).unwrap();
        assert!(f.exponent_error() < 0.05);
        assert!(f.constant_relative_error() < 0.01);
        assert!((f.loglog_exponent - 3.0).abs() < 0.1);
        assert!(f.converges_monotonically());
    }
}
