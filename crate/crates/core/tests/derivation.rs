use mcfrac::correction::{cf_evaluate_exact, derive, derive_with, DeriveError, DeriveOptions};
use mcfrac::exactmath::{PiRatio, Rational, Ring};
use mcfrac::seriesgen::Family;

#[test]
fn euler_first_levels() {
    let r = derive(Family::Euler, 3).unwrap();
    let t = r.cf.rational_terms().unwrap();
    assert_eq!(t[0], (Rational::new(1, 2), Rational::new(1, 6)));
    assert_eq!(t[1], (Rational::new(1, 36), Rational::new(13, 30)));
    assert_eq!(t[2], (Rational::new(9, 25), Rational::new(17, 630)));
    assert_eq!(r.limit_exponent, 7);
}

#[test]
fn deeper_derivations_extend_shallower_ones() {
    for family in Family::ALL {
        let k = family.certified_depth().min(4);
        let deep = derive(family, k).unwrap();
        for j in 0..k {
            assert_eq!(derive(family, j).unwrap().cf.terms(), &deep.cf.terms()[..j], "{family} {j}");
        }
    }
}

#[test]
fn zero_depth_leaves_only_the_leading_constant() {
    let leb = derive(Family::Lebesgue, 0).unwrap();
    assert!(leb.cf.terms().is_empty());
    assert_eq!(leb.limit_constant, "(12 - pi^2)/(18*pi^2)".parse::<PiRatio>().unwrap());
    let lan = derive(Family::Landau, 0).unwrap();
    assert_eq!(lan.limit_constant, "11/(192*pi)".parse::<PiRatio>().unwrap());
}

#[test]
fn residual_starts_with_the_limit_constant() {
    // E(n) − E(n+1) ~ s·C·n^{−s−1}
    for (family, k) in [(Family::Euler, 4), (Family::Landau, 2), (Family::Lebesgue, 1)] {
        let r = derive(family, k).unwrap();
        let s = r.limit_exponent;
        let lead = r.residual.coeff(s + 1).unwrap();
        let c = lead
            .mul(&family.outer_scale())
            .mul(&PiRatio::from(Rational::new(1, s)));
        assert_eq!(c, r.limit_constant);
    }
}

#[test]
fn depth_limit_needs_the_uncertified_flag() {
    match derive(Family::Euler, 11) {
        Err(DeriveError::DepthLimit { depth: 11, limit: 10, .. }) => {}
        other => panic!("unexpected {other:?}"),
    }
    let r = derive_with(Family::Euler, 11, DeriveOptions { uncertified: true }).unwrap();
    assert_eq!(r.cf.depth(), 11);
    assert_eq!(&r.cf.terms()[..10], derive(Family::Euler, 10).unwrap().cf.terms());
}

#[test]
fn exact_evaluation_of_the_approximant() {
    let r = derive(Family::Euler, 2).unwrap();
    // (1/2)/(n + 1/6 + (1/36)/(n + 13/30)) at n = 1
    let v = cf_evaluate_exact(&r.cf, &Rational::from(1)).unwrap();
    let inner = Rational::new(1, 36) / Rational::new(43, 30);
    let expect = Rational::new(1, 2) / (Rational::new(7, 6) + inner);
    assert_eq!(v, PiRatio::from(expect));
}
