use proptest::prelude::*;
use rug::Integer;

use mcfrac::exactmath::{log_shift_series, IntPoly, PiRatio, Rational, Ring, TruncSeries};
use mcfrac::numeric::constants::pi;
use mcfrac::numeric::eval_piratio;
use mcfrac::seriesgen::bernoulli;

fn rational() -> impl Strategy<Value = Rational> {
    (-500i64..500, 1i64..60).prop_map(|(p, q)| Rational::new(p, q))
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    rational().prop_filter("nonzero", |r| !Ring::is_zero(r))
}

fn pi_ratio() -> impl Strategy<Value = PiRatio> {
    (prop::collection::vec(-30i64..30, 1..4), prop::collection::vec(-30i64..30, 1..3))
        .prop_filter_map("nonzero denominator", |(n, d)| {
            let num = IntPoly::from_coeffs(n.into_iter().map(Integer::from).collect());
            let den = IntPoly::from_coeffs(d.into_iter().map(Integer::from).collect());
            if den.is_zero() {
                None
            } else {
                Some(PiRatio::new(num, den))
            }
        })
}

fn series(valid: i64) -> impl Strategy<Value = TruncSeries<Rational>> {
    prop::collection::vec(rational(), 1..6).prop_map(move |c| TruncSeries::from_poly(&c, valid))
}

fn unit_series(valid: i64) -> impl Strategy<Value = TruncSeries<Rational>> {
    (nonzero_rational(), prop::collection::vec(rational(), 0..5)).prop_map(move |(c0, rest)| {
        let mut c = vec![c0];
        c.extend(rest);
        TruncSeries::from_poly(&c, valid)
    })
}

fn same<C: Ring>(a: &TruncSeries<C>, b: &TruncSeries<C>) -> bool {
    let v = a.valid_order().min(b.valid_order());
    a.sub(b).is_zero_through(v).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pi_ratio_ring_axioms(a in pi_ratio(), b in pi_ratio(), c in pi_ratio()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.add(&PiRatio::zero()), a.clone());
        prop_assert_eq!(a.mul(&PiRatio::one()), a.clone());
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn pi_ratio_round_trips_through_text(a in pi_ratio()) {
        let back: PiRatio = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn pi_ratio_matches_interval_evaluation(a in pi_ratio(), b in pi_ratio()) {
        let p = pi(200);
        let exact = a.mul(&b).add(&a);
        if let (Ok(ea), Ok(eb), Ok(e)) = (eval_piratio(&a, &p), eval_piratio(&b, &p), eval_piratio(&exact, &p)) {
            let direct = ea.mul(&eb).add(&ea);
            prop_assert!(e.intersects(&direct));
        }
    }

    #[test]
    fn series_ring_axioms(a in series(6), b in series(6), c in series(6)) {
        prop_assert!(same(&a.add(&b), &b.add(&a)));
        prop_assert!(same(&a.mul(&b), &b.mul(&a)));
        prop_assert!(same(&a.mul(&b).mul(&c), &a.mul(&b.mul(&c))));
        prop_assert!(same(&a.mul(&b.add(&c)), &a.mul(&b).add(&a.mul(&c))));
    }

    #[test]
    fn shift_is_a_ring_homomorphism(a in series(7), b in series(7)) {
        let lhs = a.mul(&b).shift_substitute();
        let rhs = a.shift_substitute().mul(&b.shift_substitute());
        prop_assert!(same(&lhs, &rhs));
        prop_assert!(same(&a.add(&b).shift_substitute(), &a.shift_substitute().add(&b.shift_substitute())));
    }

    #[test]
    fn reciprocal_inverts(s in unit_series(8)) {
        let r = s.reciprocal().unwrap();
        let one = TruncSeries::constant(Rational::from(1), 8);
        prop_assert!(same(&s.mul(&r), &one));
    }

    #[test]
    fn log_differences_add(a in rational(), b in rational(), c in rational()) {
        let ab: TruncSeries<Rational> = log_shift_series(&a, &b, 8);
        let bc: TruncSeries<Rational> = log_shift_series(&b, &c, 8);
        let ac: TruncSeries<Rational> = log_shift_series(&a, &c, 8);
        prop_assert!(same(&ab.add(&bc), &ac));
    }

    #[test]
    fn bernoulli_recurrence(m in 1usize..40) {
        // Σ_{j=0}^{m} C(m+1, j) B_j = 0
        let mut acc = Rational::from(0);
        for j in 0..=m {
            let c = Integer::from(Integer::binomial_u((m + 1) as u32, j as u32));
            acc = acc + Rational::from(c) * bernoulli(j);
        }
        prop_assert_eq!(acc, Rational::from(0));
    }
}

#[test]
fn reading_past_validity_is_an_error() {
    let s: TruncSeries<Rational> = TruncSeries::from_poly(&[Rational::from(1)], 3);
    assert!(s.coeff(3).is_ok());
    assert!(s.coeff(4).is_err());
}
