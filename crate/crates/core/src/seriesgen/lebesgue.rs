use rug::Integer;

use crate::exactmath::{PiRatio, Rational, Ring, TruncSeries};

use super::bernoulli;

/// Coefficient `a_j` of the asymptotic expansion
/// `L_{n/2} ~ (4/π²) ln(n+1) + c₁ + Σ a_j/(n+1)^{2j}`.
pub fn lebesgue_aj(j: usize) -> PiRatio {
    assert!(j >= 1, "a_j needs j >= 1");
    let mut bracket = PiRatio::one();
    let mut fact = Integer::from(1);
    for k in 1..=j {
        fact *= (2 * k - 1) as u64;
        fact *= (2 * k) as u64;
        let mut c = bernoulli(2 * k) / Rational::from(fact.clone());
        if k % 2 == 1 {
            c = -c;
        }
        bracket = bracket.add(&PiRatio::rational_times_pi_pow(&c, 2 * k as i32));
    }
    let pow2 = Integer::from(1) << (2 * j - 1) as u32;
    let scalar = Rational::from(8) * bernoulli(2 * j) / Rational::from(2 * j as i64)
        * Rational::from(pow2 - 1u32);
    bracket.mul(&PiRatio::rational_times_pi_pow(&scalar, -2))
}

/// Series of `W_M(n) − W_M(n+1)` with `W_M(n) = Σ_{j≤M} a_j/(n+1)^{2j}`.
///
/// Truncating after `M` terms perturbs `L_{n/2}` by `O(n^{−2M−2})`, so the
/// difference is trusted through `x^{2M+2}`.
pub fn lebesgue_w_difference(m: usize) -> TruncSeries<PiRatio> {
    let order = 2 * m as i64 + 2;
    // 1/(n+1) = x/(1+x)
    let t = TruncSeries::monomial(PiRatio::one(), 1, order)
        .mul(
            &TruncSeries::from_poly(&[PiRatio::one(), PiRatio::one()], order)
                .reciprocal()
                .expect("unit constant term"),
        )
        .truncate(order);
    let t2 = t.mul(&t).truncate(order);
    let mut w = TruncSeries::zero(order);
    let mut pow = TruncSeries::constant(PiRatio::one(), order);
    for j in 1..=m {
        pow = pow.mul(&t2).truncate(order);
        w = w.add(&pow.scale(&lebesgue_aj(j)));
    }
    w.sub(&w.shift_substitute())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_coefficient() {
        let expect: PiRatio = "(12 - pi^2)/(18*pi^2)".parse().unwrap();
        assert_eq!(lebesgue_aj(1), expect);
    }
}
