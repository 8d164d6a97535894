//! Lebesgue constants `L_{n/2}`: asymptotic two-sided bounds and a quadrature oracle.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Mutex, OnceLock};

use rug::Integer;

use crate::exactmath::Rational;
use crate::seriesgen::bernoulli;

use super::constants::{const_c1, pi, C1Mode};
use super::{Enclosure, NumericError};

/// Most expansion coefficients ever used in a bracket.
const MAX_TERMS: usize = 80;

/// Enclosures of `a_1, …, a_MAX_TERMS` at `prec` bits.
///
/// Evaluated from the closed form with an enclosed π rather than through
/// exact ℚ(π) arithmetic, which would be needlessly slow at high index.
pub fn lebesgue_aj_enclosures(prec: u32) -> Vec<Enclosure> {
    static CELL: OnceLock<Mutex<HashMap<u32, Vec<Enclosure>>>> = OnceLock::new();
    let m = CELL.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = m.lock().unwrap().get(&prec) {
        return v.clone();
    }
    // the bracketed sum loses about 2 bits per index to cancellation
    let w = prec + 2 * MAX_TERMS as u32 + 32;
    let p = pi(w);
    let p2 = p.sqr();
    let mut bracket = Enclosure::from_int(1, w);
    let mut fact = Integer::from(1);
    let mut p2k = Enclosure::from_int(1, w);
    let mut out = Vec::with_capacity(MAX_TERMS);
    for j in 1..=MAX_TERMS {
        fact *= (2 * j - 1) as u64;
        fact *= (2 * j) as u64;
        p2k = p2k.mul(&p2);
        let mut c = bernoulli(2 * j) / Rational::from(fact.clone());
        if j % 2 == 1 {
            c = -c;
        }
        bracket = bracket.add(&p2k.mul_rational(&c));
        let pow2 = Integer::from(1) << (2 * j - 1) as u32;
        let scalar = Rational::from(8) * bernoulli(2 * j) / Rational::from(2 * j as i64)
            * Rational::from(pow2 - 1u32);
        let a = bracket.mul_rational(&scalar).div(&p2).unwrap();
        out.push(a.with_prec(prec));
    }
    m.lock().unwrap().insert(prec, out.clone());
    out
}

/// Partial sums `W_M(n) = Σ_{j≤M} a_j/(n+1)^{2j}` for `M = 1..=max`.
fn w_partial_sums(n: u64, max: usize, prec: u32) -> Vec<Enclosure> {
    let a = lebesgue_aj_enclosures(prec);
    let m = Rational::from(Integer::from(n + 1));
    let t = Enclosure::from_rational(&(&m * &m).recip(), prec + 16);
    let mut pow = Enclosure::from_int(1, prec + 16);
    let mut acc = Enclosure::from_int(0, prec + 16);
    let mut out = Vec::with_capacity(max);
    for aj in a.iter().take(max) {
        pow = pow.mul(&t);
        acc = acc.add(&aj.mul(&pow));
        out.push(acc.clone());
    }
    out
}

/// Enclosure of `L_{n/2} − (4/π²) ln(n+1) − c₁` from the two-sided bounds
/// `W_{2N}(n) < · < W_{2N+1}(n)`, intersected over all usable `N`.
pub fn lebesgue_w_bracket(n: u64, prec: u32) -> Enclosure {
    let sums = w_partial_sums(n, MAX_TERMS, prec);
    let mut best: Option<Enclosure> = None;
    for nn in 1..MAX_TERMS / 2 {
        let lo = &sums[2 * nn - 1];
        let hi = &sums[2 * nn];
        let b = Enclosure::new(lo.lo().clone(), hi.hi().clone());
        best = Some(match best {
            None => b,
            Some(prev) => prev.intersect(&b).unwrap_or(prev),
        });
    }
    best.unwrap().with_prec(prec)
}

/// `(4/π²) ln(n+1) + c₁` at `prec` bits.
pub fn lebesgue_log_part(n: u64, prec: u32) -> Result<Enclosure, NumericError> {
    let w = prec + 16;
    let p2 = pi(w).sqr();
    let l = Enclosure::ln_rational(&Rational::from(Integer::from(n + 1)), w);
    Ok(l.mul_rational(&Rational::from(4))
        .div(&p2)?
        .add(&const_c1(w, C1Mode::Accelerated)?))
}

/// Enclosure of `L_{n/2}` from the bounds with `2N` (lower) and `2N+1`
/// (upper) expansion terms.
pub fn lebesgue_enclosure(n: u64, n_terms: usize, prec: u32) -> Result<Enclosure, NumericError> {
    if n_terms == 0 || 2 * n_terms + 1 > MAX_TERMS {
        return Err(NumericError::InvalidInput(format!(
            "N must lie in 1..={}",
            (MAX_TERMS - 1) / 2
        )));
    }
    let sums = w_partial_sums(n, 2 * n_terms + 1, prec);
    let base = lebesgue_log_part(n, prec)?;
    let lo = base.add(&sums[2 * n_terms - 1]);
    let hi = base.add(&sums[2 * n_terms]);
    Ok(Enclosure::new(lo.lo().clone(), hi.hi().clone()).with_prec(prec))
}

/// `L_{n/2} = (1/π) ∫₀^π |sin((n+1)t/2) / sin(t/2)| dt` by adaptive Simpson
/// quadrature on the panels between consecutive zeros of the integrand.
///
/// The half-width is four times the summed Richardson error estimates plus
/// a floating-point roundoff allowance.
pub fn lebesgue_quadrature(n: u64, tol: f64) -> Result<Enclosure, NumericError> {
    if n == 0 {
        return Ok(Enclosure::from_int(1, 64));
    }
    let m = (n + 1) as f64;
    let f = move |t: f64| {
        if t == 0.0 {
            return m;
        }
        ((m * t / 2.0).sin() / (t / 2.0).sin()).abs()
    };
    let step = 2.0 * PI / m;
    let mut edges: Vec<f64> = (0..).map(|j| j as f64 * step).take_while(|&t| t < PI).collect();
    edges.push(PI);
    let panels = edges.len() - 1;
    let panel_tol = tol / (8.0 * panels as f64);
    let mut panel_sums = Vec::with_capacity(panels);
    let mut err = 0.0;
    for w in edges.windows(2) {
        let (s, e) = simpson_panel(&f, w[0], w[1], panel_tol)?;
        panel_sums.push(s);
        err += e;
    }
    let value = neumaier_sum(&panel_sums) / PI;
    // integrand values carry a few ulps each and all weights are positive
    let roundoff = 64.0 * f64::EPSILON * value;
    let half = (4.0 * err) / PI + roundoff;
    if half > tol {
        return Err(NumericError::ToleranceNotReached(half));
    }
    Ok(Enclosure::from_f64_bounds(value - half, value + half, 64))
}

fn simpson(fa: f64, fm: f64, fb: f64, h: f64) -> f64 {
    h / 6.0 * (fa + 4.0 * fm + fb)
}

/// Compensated summation.
fn neumaier_sum(xs: &[f64]) -> f64 {
    let mut s = 0.0f64;
    let mut c = 0.0f64;
    for &x in xs {
        let t = s + x;
        if s.abs() >= x.abs() {
            c += (s - t) + x;
        } else {
            c += (x - t) + s;
        }
        s = t;
    }
    s + c
}

/// Integral over one panel and its error estimate.
fn simpson_panel(f: &impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> Result<(f64, f64), NumericError> {
    const MAX_DEPTH: u32 = 40;
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = simpson(fa, fm, fb, b - a);
    let mut stack = vec![(a, b, fa, fm, fb, whole, tol, 0u32)];
    let mut leaves = Vec::new();
    let mut err = 0.0;
    while let Some((a, b, fa, fm, fb, whole, tol, depth)) = stack.pop() {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = simpson(fa, flm, fm, m - a);
        let right = simpson(fm, frm, fb, b - m);
        let delta = left + right - whole;
        if delta.abs() <= 15.0 * tol || depth >= MAX_DEPTH {
            if depth >= MAX_DEPTH && delta.abs() > 15.0 * tol {
                return Err(NumericError::ToleranceNotReached(delta.abs() / 15.0));
            }
            leaves.push(left + right + delta / 15.0);
            err += delta.abs() / 15.0;
        } else {
            stack.push((a, m, fa, flm, fm, left, tol / 2.0, depth + 1));
            stack.push((m, b, fm, frm, fb, right, tol / 2.0, depth + 1));
        }
    }
    Ok((neumaier_sum(&leaves), err))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadrature_at_zero_is_one() {
        let e = lebesgue_quadrature(0, 1e-12).unwrap();
        assert!(e.contains_rational(&Rational::from(1)));
    }

    #[test]
    fn first_coefficient_enclosure() {
        let a = lebesgue_aj_enclosures(128);
        let v = (12.0 - PI * PI) / (18.0 * PI * PI);
        assert!((a[0].mid().to_f64() - v).abs() < 1e-15);
        assert!(a[0].is_positive() && a[1].is_negative() && a[2].is_positive());
    }
}
