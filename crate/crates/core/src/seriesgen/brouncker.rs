//! Truncations `q_k` of Brouncker's continued fraction
//! `4/(1+4n + 1²/(2+8n + 3²/(2+8n + …)))`.

use crate::exactmath::{Rational, Ring, TruncSeries};

use super::SeriesGenError;

/// Exact `q_k(n)`, evaluated innermost-first.
pub fn brouncker_qk_value(k: usize, n: &Rational) -> Result<Rational, SeriesGenError> {
    assert!(k >= 1, "q_k needs k >= 1");
    let eight_n = n * &Rational::from(8);
    let d = &eight_n + &Rational::from(2);
    let mut tail = Rational::default();
    for j in (1..k).rev() {
        let den = &d + &tail;
        if den.is_zero() {
            return Err(SeriesGenError::ZeroDenominator);
        }
        let num = Rational::from(((2 * j - 1) * (2 * j - 1)) as i64);
        tail = num / den;
    }
    let head = n * &Rational::from(4) + Rational::from(1) + tail;
    if head.is_zero() {
        return Err(SeriesGenError::ZeroDenominator);
    }
    Ok(Rational::from(4) / head)
}

/// Series of `q_k(n)` in `x = 1/n` through `x^order`, without any
/// certification against the infinite fraction.
pub fn qk_series_raw(k: usize, order: i64) -> TruncSeries<Rational> {
    assert!(k >= 1, "q_k needs k >= 1");
    let x = TruncSeries::monomial(Rational::from(1), 1, order);
    // 2 + 8n = (8 + 2x)/x and 1 + 4n = (4 + x)/x
    let eight = TruncSeries::from_poly(&[Rational::from(8), Rational::from(2)], order);
    let mut tail = TruncSeries::zero(order);
    for j in (1..k).rev() {
        let num = Rational::from(((2 * j - 1) * (2 * j - 1)) as i64);
        let den = eight.add(&x.mul(&tail));
        tail = x
            .scale_rational(&num)
            .mul(&den.reciprocal().expect("unit constant term"))
            .truncate(order);
    }
    let head = TruncSeries::from_poly(&[Rational::from(4), Rational::from(1)], order).add(&x.mul(&tail));
    x.scale_rational(&Rational::from(4))
        .mul(&head.reciprocal().expect("unit constant term"))
        .truncate(order)
}

/// Series of `q_k(n+1)` in `x = 1/n` through `x^order`.
///
/// Certified only when `q_{k+1} − q_k` vanishes through `x^order`: the
/// infinite fraction lies between consecutive truncations, so it then shares
/// these coefficients with `q_k`.
pub fn brouncker_qk_series(k: usize, order: i64) -> Result<TruncSeries<Rational>, SeriesGenError> {
    let certified = qk_certified_order(k, order);
    if certified < order {
        return Err(SeriesGenError::BudgetExceeded {
            requested: order,
            certified,
        });
    }
    Ok(qk_series_raw(k, order).shift_substitute())
}

/// Highest order (capped at `cap`) through which `q_{k+1} − q_k` vanishes.
pub fn qk_certified_order(k: usize, cap: i64) -> i64 {
    let gap = qk_series_raw(k + 1, cap).sub(&qk_series_raw(k, cap));
    match gap.valuation() {
        Some(v) => v - 1,
        None => cap,
    }
}

/// Smallest even `k ≥ 8` whose truncation is certified through `order`,
/// together with the series of `q_k(n+1)`.
pub fn brouncker_series_auto(order: i64) -> (usize, TruncSeries<Rational>) {
    let mut k = 8;
    loop {
        if let Ok(s) = brouncker_qk_series(k, order) {
            return (k, s);
        }
        k += 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(brouncker_qk_value(1, &Rational::from(0)).unwrap(), Rational::from(4));
        assert_eq!(brouncker_qk_value(1, &Rational::from(1)).unwrap(), Rational::new(4, 5));
        assert_eq!(brouncker_qk_value(2, &Rational::from(1)).unwrap(), Rational::new(40, 51));
    }

    #[test]
    fn pole_is_reported() {
        assert!(matches!(
            brouncker_qk_value(1, &Rational::new(-1, 4)),
            Err(SeriesGenError::ZeroDenominator)
        ));
    }

    #[test]
    fn series_matches_values() {
        // 4/(4n+5) = x - 5/4 x^2 + ...
        let s = qk_series_raw(1, 3).shift_substitute();
        assert_eq!(s.coeff(1).unwrap(), Rational::from(1));
        assert_eq!(s.coeff(2).unwrap(), Rational::new(-5, 4));
    }

    #[test]
    fn budget_refusal() {
        assert!(matches!(
            brouncker_qk_series(2, 12),
            Err(SeriesGenError::BudgetExceeded { requested: 12, .. })
        ));
    }
}
