use mcfrac::cache::CoefficientCache;
use mcfrac::correction::{derive, DeriveOptions};
use mcfrac::json::{report_from_str, report_to_json, to_canonical_string};
use mcfrac::seriesgen::Family;

#[test]
fn hit_returns_the_fresh_derivation() {
    let dir = tempfile::tempdir().unwrap();
    let cache = CoefficientCache::new(dir.path());
    let (first, hit) = cache.get_or_derive(Family::Landau, 3, DeriveOptions::default()).unwrap();
    assert!(!hit);
    let (second, hit) = cache.get_or_derive(Family::Landau, 3, DeriveOptions::default()).unwrap();
    assert!(hit);
    assert_eq!(first, second);
    assert_eq!(second, derive(Family::Landau, 3).unwrap());
    assert_eq!(cache.entries().unwrap(), vec![(Family::Landau, 3)]);
}

#[test]
fn stored_documents_round_trip_byte_for_byte() {
    let dir = tempfile::tempdir().unwrap();
    let cache = CoefficientCache::new(dir.path());
    let r = derive(Family::Lebesgue, 2).unwrap();
    let path = cache.store(&r).unwrap();
    let text = std::fs::read_to_string(path).unwrap();
    let (back, digits) = report_from_str(&text).unwrap();
    assert_eq!(to_canonical_string(&report_to_json(&back, digits)), text);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["schema_version"], 1);
}

#[test]
fn uncertified_depth_is_refused_without_flag() {
    let dir = tempfile::tempdir().unwrap();
    let cache = CoefficientCache::new(dir.path());
    assert!(cache.get_or_derive(Family::Lebesgue, 4, DeriveOptions::default()).is_err());
    assert!(cache.entries().unwrap().is_empty());
}

#[test]
fn corrupt_entry_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let cache = CoefficientCache::new(dir.path());
    std::fs::write(cache.path_for(Family::Euler, 2), "{ not json").unwrap();
    assert!(cache.load(Family::Euler, 2).is_err());
    assert_eq!(cache.clear().unwrap(), 1);
    assert!(cache.load(Family::Euler, 2).unwrap().is_none());
}
