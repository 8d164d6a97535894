use mcfrac::correction::{derive, CFApprox};
use mcfrac::exactmath::{Rational, Ring};
use mcfrac::numeric::constants::pi;
use mcfrac::numeric::eval_piratio;
use mcfrac::seriesgen::Family;
use mcfrac::verify::{
    check_double, check_landau_monotone, check_lebesgue_monotone, check_monotone, check_theorem2, check_theorem4,
    rate_fit, CheckOptions, DoubleInequality, Verdict, VerifyError,
};

#[test]
fn lebesgue_error_decreases() {
    let r = check_lebesgue_monotone(200, CheckOptions::default()).unwrap();
    assert_eq!(r.points.len(), 200);
    assert_eq!(r.verdict(), Verdict::CertifiedTrue);
}

#[test]
fn landau_error_decreases() {
    let r = check_landau_monotone(200, CheckOptions::default()).unwrap();
    assert_eq!(r.verdict(), Verdict::CertifiedTrue);
}

#[test]
fn smaller_second_denominator_breaks_monotonicity() {
    let d = derive(Family::Landau, 2).unwrap();
    let mut terms = d.cf.terms().to_vec();
    terms[1].1 = terms[1].1.mul_rational(&Rational::new(9, 10));
    let cf = CFApprox::new(Family::Landau, terms);
    let r = check_monotone("perturbed", &cf, 0, 200, CheckOptions::default());
    assert_eq!(r.verdict(), Verdict::CertifiedFalse);
}

#[test]
fn doubled_lower_constant_fails_for_large_n() {
    let mut ineq = DoubleInequality::theorem2().unwrap();
    ineq.lower_constant = ineq.lower_constant.mul_rational(&Rational::from(2));
    let r = check_double(&ineq, 200, CheckOptions::default());
    assert!(r.points[150..].iter().all(|p| p.verdict == Verdict::CertifiedFalse));
    assert_eq!(r.points[0].verdict, Verdict::CertifiedTrue);
}

#[test]
fn verdicts_survive_more_precision() {
    let lo = check_theorem2(60, CheckOptions::with_precision(192)).unwrap();
    let hi = check_theorem2(60, CheckOptions::with_precision(512)).unwrap();
    for (a, b) in lo.points.iter().zip(&hi.points) {
        if a.verdict != Verdict::Inconclusive {
            assert_eq!(a.verdict, b.verdict, "n = {}", a.n);
        }
    }
    let lo = check_theorem4(40, CheckOptions::with_precision(192)).unwrap();
    let hi = check_theorem4(40, CheckOptions::with_precision(384)).unwrap();
    assert_eq!(lo.verdict(), hi.verdict());
}

#[test]
fn reports_render() {
    let r = check_theorem4(3, CheckOptions::default()).unwrap();
    let j = r.to_json();
    assert_eq!(j["verdict"], "certified-true");
    assert_eq!(j["points"].as_array().unwrap().len(), 4);
    assert!(r.to_table().contains("lebesgue-thm4"));
}

#[test]
fn rate_fits_landau_second_correction() {
    let f = rate_fit(Family::Landau, 2, &[32, 64, 128, 256, 512], 192).unwrap();
    assert!(f.exponent_error() < 0.05, "{}", f.fitted_exponent);
    assert!(f.constant_relative_error() < 0.01);
    assert!(f.converges_monotonically());
    assert!((f.loglog_exponent - 10.0).abs() < 0.2);
}

#[test]
fn exponent_sequences_approach_the_target() {
    for (family, k) in [(Family::Landau, 1), (Family::Lebesgue, 2), (Family::Euler, 5)] {
        let f = rate_fit(family, k, &[16, 32, 64, 128, 256], 192).unwrap();
        assert!(f.converges_monotonically(), "{family} {k}");
    }
}

#[test]
fn target_constant_rendering_matches_evaluation() {
    let f = rate_fit(Family::Lebesgue, 1, &[32, 64, 128, 256], 192).unwrap();
    let s = f.target_constant_decimal(60);
    let e = eval_piratio(&f.target_constant, &pi(400)).unwrap();
    assert_eq!(s, e.to_decimal(60));
}

#[test]
fn low_precision_large_n_is_too_wide() {
    match rate_fit(Family::Euler, 8, &[1 << 14, 1 << 15, 1 << 16, 1 << 17], 64) {
        Err(VerifyError::EnclosuresTooWide { .. }) => {}
        other => panic!("expected too-wide error, got {other:?}"),
    }
}
