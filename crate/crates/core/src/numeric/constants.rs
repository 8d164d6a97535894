//! Certified enclosures of π, ln 2, γ, c₀ and c₁.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use rayon::prelude::*;
use rug::ops::Pow;
use rug::Integer;

use crate::exactmath::Rational;
use crate::seriesgen::bernoulli;

use super::{Enclosure, NumericError};

/// Extra working bits carried internally before rounding results to the requested precision.
const GUARD: u32 = 32;

type Memo = Mutex<HashMap<u32, Enclosure>>;

fn memo(cell: &'static OnceLock<Memo>, prec: u32, f: impl FnOnce() -> Result<Enclosure, NumericError>) -> Result<Enclosure, NumericError> {
    let m = cell.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(e) = m.lock().unwrap().get(&prec) {
        return Ok(e.clone());
    }
    let e = f()?;
    m.lock().unwrap().insert(prec, e.clone());
    Ok(e)
}

pub fn pi(prec: u32) -> Enclosure {
    Enclosure::pi(prec)
}

pub fn ln2(prec: u32) -> Enclosure {
    Enclosure::ln_rational(&Rational::from(2), prec)
}

/// `H_n = 1 + 1/2 + … + 1/n`.
pub fn harmonic(n: u64) -> Rational {
    // sum as p/q with a running common denominator: far cheaper than
    // normalising a Rational at every step
    let mut p = Integer::new();
    let mut q = Integer::from(1);
    for k in 1..=n {
        // p/q + 1/k = (p*k + q)/(q*k)
        p *= k;
        p += &q;
        q *= k;
    }
    Rational::new(p, q)
}

/// Euler's constant by Euler–Maclaurin summation of the harmonic series:
/// `γ = H_N − ln N − 1/(2N) + Σ_{k≤K} B_{2k}/(2k N^{2k}) + R`, where `|R|`
/// is at most the first omitted term.
pub fn gamma_reference(prec: u32) -> Enclosure {
    static CELL: OnceLock<Memo> = OnceLock::new();
    memo(&CELL, prec, || Ok(gamma_em(prec, (prec as u64).max(32)))).unwrap()
}

/// [`gamma_reference`] with an explicit summation cutoff `N` (for self-consistency checks).
pub fn gamma_em(prec: u32, n: u64) -> Enclosure {
    let w = prec + GUARD;
    let nq = Rational::from(Integer::from(n));
    let tiny = Rational::new(1, Integer::from(1) << (prec + 16));
    let mut sum = harmonic(n) - Rational::new(1, Integer::from(2 * n));
    let n2 = &nq * &nq;
    let mut npow = n2.clone();
    let mut k = 1usize;
    let omitted = loop {
        let term = bernoulli(2 * k) / (Rational::from(2 * k as i64) * &npow);
        if term.abs() < tiny || k > 4 * prec as usize {
            break term.abs();
        }
        sum = sum + term;
        npow = npow * &n2;
        k += 1;
    };
    let ln_n = Enclosure::ln_rational(&nq, w);
    let slack = Enclosure::from_rational(&omitted, w);
    let r = Enclosure::from_rational(&sum, w).sub(&ln_n);
    r.sub(&slack).hull(&r.add(&slack)).with_prec(prec)
}

/// `c₀ = (γ + 4 ln 2)/π`.
pub fn const_c0(prec: u32) -> Enclosure {
    let w = prec + GUARD;
    let g = gamma_reference(w);
    let num = g.add(&ln2(w).mul_rational(&Rational::from(4)));
    num.div(&pi(w)).unwrap().with_prec(prec)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum C1Mode {
    /// Euler–Maclaurin tail on `Σ ln k/(4k²−1)` after an exact-interval partial sum.
    Accelerated,
    /// The 20-digit reference value ±1 in the last digit, checked against a direct sum.
    Literal,
}

/// Reference value of c₁ widened by one unit in the last digit.
pub const C1_LITERAL: (&str, &str) = ("0.98943127383114695173", "0.98943127383114695175");

/// Cutoff of the exact partial sum in accelerated mode.
const C1_CUTOFF: u64 = 10_000;

/// `c₁ = (8/π²) Σ_{k≥2} ln k/(4k²−1) + (4/π²)(γ + 2 ln 2)`.
pub fn const_c1(prec: u32, mode: C1Mode) -> Result<Enclosure, NumericError> {
    match mode {
        C1Mode::Accelerated => {
            static CELL: OnceLock<Memo> = OnceLock::new();
            memo(&CELL, prec, || {
                let w = prec + GUARD;
                let s = log_series_partial(C1_CUTOFF - 1, w).add(&log_series_tail(C1_CUTOFF, w)?);
                Ok(c1_from_sum(&s, w).with_prec(prec))
            })
        }
        C1Mode::Literal => {
            static CHECK: OnceLock<Result<(), NumericError>> = OnceLock::new();
            let lit = Enclosure::from_decimals(C1_LITERAL.0, C1_LITERAL.1, prec.max(80))?;
            CHECK
                .get_or_init(|| {
                    let direct = c1_direct_bracket(100_000, 128);
                    if direct.intersects(&lit) {
                        Ok(())
                    } else {
                        Err(NumericError::Inconsistent(format!(
                            "literal c1 {lit} disagrees with direct sum {direct}"
                        )))
                    }
                })
                .clone()?;
            Ok(lit)
        }
    }
}

fn c1_from_sum(s: &Enclosure, w: u32) -> Enclosure {
    let p = pi(w);
    let p2 = p.sqr();
    let g = gamma_reference(w);
    let a = s.mul_rational(&Rational::from(8));
    let b = g.add(&ln2(w).mul_rational(&Rational::from(2))).mul_rational(&Rational::from(4));
    a.add(&b).div(&p2).unwrap()
}

/// Enclosures of `ln k` for `k ≤ n`, built from logarithms of primes only.
fn log_table(n: u64, w: u32) -> Vec<Enclosure> {
    let n = n as usize;
    let mut spf = vec![0u32; n + 1];
    for i in 2..=n {
        if spf[i] == 0 {
            let mut j = i;
            while j <= n {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
                j += i;
            }
        }
    }
    let primes: Vec<usize> = (2..=n).filter(|&i| spf[i] as usize == i).collect();
    let prime_logs: Vec<Enclosure> = primes
        .par_iter()
        .map(|&p| Enclosure::ln_rational(&Rational::from(p as i64), w))
        .collect();
    let mut table = vec![Enclosure::from_int(0, w); n + 1];
    for (p, l) in primes.iter().zip(prime_logs) {
        table[*p] = l;
    }
    for i in 2..=n {
        let p = spf[i] as usize;
        if p != i {
            table[i] = table[p].add(&table[i / p]);
        }
    }
    table
}

/// `Σ_{k=2}^{n} ln k/(4k²−1)` as an interval.
fn log_series_partial(n: u64, w: u32) -> Enclosure {
    let logs = log_table(n, w);
    (2..=n as usize)
        .into_par_iter()
        .map(|k| {
            let d = 4 * (k as i64) * (k as i64) - 1;
            logs[k].mul_rational(&Rational::new(1, d))
        })
        .reduce(|| Enclosure::from_int(0, w), |a, b| a.add(&b))
}

/// `∫_K^∞ ln x/(4x²−1) dx = Σ_{i≥1} 4^{−i} [ln K/((2i−1)K^{2i−1}) + 1/((2i−1)² K^{2i−1})]`,
/// returned as rational coefficients `(α, β, bound)` of `α ln K + β ± bound`.
fn log_integral_parts(k: u64, w: u32) -> (Rational, Rational, Rational) {
    let kq = Rational::from(Integer::from(k));
    let tiny = Rational::new(1, Integer::from(1) << (w + 8));
    let mut alpha = Rational::default();
    let mut beta = Rational::default();
    let mut i = 1i64;
    let ln_bound = Rational::from(64);
    loop {
        let e = (2 * i - 1) as i32;
        let base = Rational::new(1, Integer::from(4).pow(i as u32)) / kq.pow(e);
        let a = &base / &Rational::from(2 * i - 1);
        let b = &base / &Rational::from((2 * i - 1) * (2 * i - 1));
        // terms are positive and shrink by at least 4K² per step
        if &(&a * &ln_bound) + &b < tiny {
            let bound = (&(&a * &ln_bound) + &b) * Rational::from(2);
            return (alpha, beta, bound);
        }
        alpha = alpha + a;
        beta = beta + b;
        i += 1;
    }
}

/// Derivative `f^{(m)}(K)` of `f(x) = ln x/(4x²−1)` as `α ln K + β`.
fn log_rational_derivative(k: &Rational, m: usize) -> (Rational, Rational) {
    // g(x) = 1/(4x²−1) = ½[(2x−1)^{−1} − (2x+1)^{−1}]
    let gd = |j: usize| -> Rational {
        let mut f = Integer::from(1);
        for t in 1..=j as u64 {
            f *= t;
        }
        let two = Rational::from(2);
        let e = -(j as i32) - 1;
        let diff = (&(k * &two) - &Rational::from(1)).pow(e) - (&(k * &two) + &Rational::from(1)).pow(e);
        let mut v = Rational::from(f) * two.pow(j as i32) * diff / Rational::from(2);
        if j % 2 == 1 {
            v = -v;
        }
        v
    };
    let alpha = gd(m);
    let mut beta = Rational::default();
    let mut binom = Integer::from(1);
    let mut fact = Integer::from(1); // (i−1)!
    for i in 1..=m {
        binom *= (m + 1 - i) as u64;
        binom /= i as u64;
        if i > 1 {
            fact *= (i - 1) as u64;
        }
        // (ln x)^{(i)} = (−1)^{i−1} (i−1)!/x^i
        let mut l = Rational::from(fact.clone()) / k.pow(i as i32);
        if i % 2 == 0 {
            l = -l;
        }
        beta = beta + Rational::from(binom.clone()) * l * gd(m - i);
    }
    (alpha, beta)
}

/// `Σ_{k≥K} ln k/(4k²−1)` by Euler–Maclaurin:
/// `∫_K^∞ f + f(K)/2 − Σ_{j≤M} B_{2j}/(2j)! f^{(2j−1)}(K) + R` with `|R| ≤ 2|last term|`.
///
/// The bound needs `f^{(2M)}` of one sign on `[K, ∞)`, which holds while
/// `H_{2M} < ln K`; past that the tail is reported unavailable.
fn log_series_tail(k: u64, w: u32) -> Result<Enclosure, NumericError> {
    let kq = Rational::from(Integer::from(k));
    let (mut alpha, mut beta, ibound) = log_integral_parts(k, w);
    let (a0, b0) = log_rational_derivative(&kq, 0);
    alpha = alpha + &a0 / &Rational::from(2);
    beta = beta + &b0 / &Rational::from(2);
    let ln_k_hi = Rational::from(Integer::from(k).significant_bits() as i64) * Rational::new(7, 10);
    let tiny = Rational::new(1, Integer::from(1) << (w + 8));
    let mut fact = Integer::from(1);
    let mut j = 1usize;
    let last = loop {
        fact *= (2 * j - 1) as u64;
        fact *= (2 * j) as u64;
        let c = bernoulli(2 * j) / Rational::from(fact.clone());
        let (a, b) = log_rational_derivative(&kq, 2 * j - 1);
        let ta = &c * &a;
        let tb = &c * &b;
        alpha = alpha - &ta;
        beta = beta - &tb;
        let mag = &(ta.abs() * &ln_k_hi) + &tb.abs();
        if mag < tiny {
            break mag;
        }
        j += 1;
        let h = crate::numeric::constants::harmonic(2 * j as u64).to_f64();
        if h >= (k as f64).ln() {
            return Err(NumericError::TailBoundUnavailable);
        }
    };
    let ln_k = Enclosure::ln_rational(&kq, w);
    let core = ln_k.mul_rational(&alpha).add_rational(&beta);
    let slack = Enclosure::from_rational(&(last * Rational::from(2) + ibound), w);
    Ok(core.sub(&slack).hull(&core.add(&slack)))
}

/// Brute-force bracket for c₁: the first `n` terms summed directly, and the
/// remainder `Σ_{k>n} f(k)` trapped between `∫_{n+1}^∞ f` and `∫_n^∞ f`
/// (`f` decreases for `k ≥ 2`).
pub fn c1_direct_bracket(n: u64, prec: u32) -> Enclosure {
    let w = prec + GUARD;
    let partial = log_series_partial(n, w);
    let integral = |a: u64| {
        let (alpha, beta, bound) = log_integral_parts(a, w);
        let core = Enclosure::ln_rational(&Rational::from(Integer::from(a)), w)
            .mul_rational(&alpha)
            .add_rational(&beta);
        let slack = Enclosure::from_rational(&bound, w);
        core.sub(&slack).hull(&core.add(&slack))
    };
    let lo = integral(n + 1);
    let hi = integral(n);
    let tail = lo.hull(&hi);
    c1_from_sum(&partial.add(&tail), w).with_prec(prec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harmonic_small() {
        assert_eq!(harmonic(1), Rational::from(1));
        assert_eq!(harmonic(3), Rational::new(11, 6));
    }

    #[test]
    fn gamma_digits() {
        let g = gamma_reference(128);
        assert!(g.contains_decimal("0.5772156649015328606065120900824024310421"));
        assert!(g.width() < rug::Float::with_val(64, rug::Float::i_exp(1, -120)));
    }

    #[test]
    fn derivative_formula_matches_difference_quotient() {
        // f'(K) against a symmetric difference at K = 10
        let k = Rational::from(10);
        let (a, b) = log_rational_derivative(&k, 1);
        let d = a.to_f64() * 10f64.ln() + b.to_f64();
        let f = |x: f64| x.ln() / (4.0 * x * x - 1.0);
        let h = 1e-5;
        let num = (f(10.0 + h) - f(10.0 - h)) / (2.0 * h);
        assert!((d - num).abs() < 1e-9, "{d} vs {num}");
    }
}
