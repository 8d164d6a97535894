use std::path::Path;
use std::process::{Command, Output};

fn mcfrac(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mcfrac"))
        .arg("--cache")
        .arg(cache)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn derive_euler_prints_exact_coefficients() {
    let dir = tempfile::tempdir().unwrap();
    let o = mcfrac(dir.path(), &["derive", "--family", "euler", "--depth", "3"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("9/25") && out.contains("17/630"), "{out}");
}

#[test]
fn derive_landau_json_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let o = mcfrac(dir.path(), &["derive", "--family", "landau", "--depth", "2", "--format", "json"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("-89684299/1040793600"));
    assert!(out.contains("815593360691/631377464960"));
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let mut again = serde_json::to_string_pretty(&v).unwrap();
    again.push('\n');
    assert_eq!(again, out);
    // second run is served from the cache with identical output
    let o2 = mcfrac(dir.path(), &["derive", "--family", "landau", "--depth", "2", "--format", "json"]);
    assert_eq!(stdout(&o2), out);
    assert!(String::from_utf8_lossy(&o2.stderr).contains("cache hit"));
}

#[test]
fn derive_depth_zero_has_no_terms() {
    let dir = tempfile::tempdir().unwrap();
    let o = mcfrac(dir.path(), &["derive", "--family", "lebesgue", "--depth", "0", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["terms"].as_array().unwrap().len(), 0);
    assert!(v["mc0"].as_str().unwrap().contains("ln(n + 1)"));
}

#[test]
fn eval_landau_at_zero_reports_exact_sum() {
    let dir = tempfile::tempdir().unwrap();
    let o = mcfrac(dir.path(), &["eval", "--family", "landau", "--depth", "2", "--n", "0", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["true_value"]["exact"], "1");
}

#[test]
fn eval_lebesgue_oracles_intersect() {
    let dir = tempfile::tempdir().unwrap();
    let o = mcfrac(dir.path(), &["eval", "--family", "lebesgue", "--depth", "1", "--n", "2", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["true_value"]["intersect"], true);
}

#[test]
fn eval_euler_error_is_tiny() {
    let dir = tempfile::tempdir().unwrap();
    let o = mcfrac(dir.path(), &["eval", "--family", "euler", "--depth", "8", "--n", "100", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let hi: f64 = v["error"]["hi"].as_str().unwrap().parse().unwrap();
    // |C_8| n^{-17} ≈ 1.1e-35
    assert!(hi.abs() < 1e-34 && hi.abs() > 1e-36, "{hi}");
}

#[test]
fn verify_subcommands() {
    let dir = tempfile::tempdir().unwrap();
    let o = mcfrac(dir.path(), &["verify", "--theorem", "landau-thm2", "--n-max", "500"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("certified-true 501"));
    let o = mcfrac(dir.path(), &["verify", "--theorem", "lebesgue-thm4", "--n-max", "0", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["points"].as_array().unwrap().len(), 1);
}

#[test]
fn rate_landau_first_correction() {
    let dir = tempfile::tempdir().unwrap();
    let o = mcfrac(dir.path(), &["rate", "--family", "landau", "--depth", "1", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let e: f64 = v["fitted_exponent"].as_str().unwrap().parse().unwrap();
    assert!((e - 6.0).abs() < 0.05);
    let c: f64 = v["fitted_constant"].as_str().unwrap().parse().unwrap();
    let target = 89684299.0 / (18166579200.0 * std::f64::consts::PI);
    assert!((c - target).abs() / target < 0.01);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(mcfrac(dir.path(), &["derive", "--family", "nope", "--depth", "1"]).status.code(), Some(1));
    assert_eq!(mcfrac(dir.path(), &["--prec", "32", "derive", "--family", "euler", "--depth", "1"]).status.code(), Some(1));
    assert_eq!(mcfrac(dir.path(), &["rate", "--family", "euler", "--depth", "1", "--schedule", "1,2"]).status.code(), Some(1));
    assert_eq!(mcfrac(dir.path(), &["derive", "--family", "landau", "--depth", "6"]).status.code(), Some(2));
    assert!(mcfrac(dir.path(), &["--uncertified", "derive", "--family", "euler", "--depth", "11"]).status.success());
    let low = ["--prec", "64", "verify", "--theorem", "landau-thm2", "--n-max", "300", "--max-doublings", "0"];
    assert_eq!(mcfrac(dir.path(), &low).status.code(), Some(3));
}

#[test]
fn cache_listing_and_clearing() {
    let dir = tempfile::tempdir().unwrap();
    assert!(mcfrac(dir.path(), &["derive", "--family", "euler", "--depth", "2"]).status.success());
    let list = stdout(&mcfrac(dir.path(), &["cache", "list"]));
    assert_eq!(list.trim(), "euler 2");
    let show = mcfrac(dir.path(), &["cache", "show", "--family", "euler", "--depth", "2"]);
    assert!(stdout(&show).contains("13/30"));
    assert!(mcfrac(dir.path(), &["cache", "clear"]).status.success());
    assert_eq!(stdout(&mcfrac(dir.path(), &["cache", "list"])).trim(), "");
    assert_eq!(mcfrac(dir.path(), &["cache", "show", "--family", "euler", "--depth", "2"]).status.code(), Some(2));
}
