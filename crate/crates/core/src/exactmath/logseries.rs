use super::{Rational, Ring, TruncSeries};

/// Series of `ln(n+b) − ln(n+a)` in `x = 1/n` through `x^order`.
///
/// The coefficient of `x^m` is `(−1)^(m+1) (b^m − a^m) / m`.
pub fn log_shift_series<C: Ring>(a: &Rational, b: &Rational, order: i64) -> TruncSeries<C> {
    TruncSeries::from_fn(0, order, |m| {
        if m == 0 {
            return C::zero();
        }
        let e = m as i32;
        let mut c = (&b.pow(e) - &a.pow(e)) / Rational::from(m);
        if m % 2 == 0 {
            c = -c;
        }
        C::from_rational(&c)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_to_two() {
        let s: TruncSeries<Rational> = log_shift_series(&Rational::from(1), &Rational::from(2), 2);
        assert_eq!(s.coeff(1).unwrap(), Rational::from(1));
        assert_eq!(s.coeff(2).unwrap(), Rational::new(-3, 2));
    }

    #[test]
    fn equal_arguments_vanish() {
        let c = Rational::new(5, 3);
        let s: TruncSeries<Rational> = log_shift_series(&c, &c, 6);
        assert!(s.is_zero_through(6).unwrap());
    }
}
