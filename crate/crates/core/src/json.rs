//! Canonical JSON for derivation reports: exact strings alongside decimals,
//! keys in sorted order, so that parse and re-serialize is byte-identical.

use serde_json::{json, Value};

use crate::correction::{CFApprox, DerivationReport};
use crate::exactmath::{PiRatio, TruncSeries};
use crate::numeric::constants::pi;
use crate::numeric::eval_piratio;
use crate::seriesgen::Family;

pub const SCHEMA_VERSION: u64 = 1;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum JsonError {
    #[error("unsupported schema version {0}")]
    SchemaVersion(u64),
    #[error("field `{field}`: {msg}")]
    Field { field: String, msg: String },
    #[error("invalid JSON: {0}")]
    Syntax(String),
}

/// The fixed part `MC₀` of each family's approximation.
pub fn mc0_description(family: Family) -> &'static str {
    match family {
        Family::Landau => "MC0(n) = (1/pi)*ln(n + 3/4) + c0",
        Family::Lebesgue => "MC0(n) = (4/pi^2)*ln(n + 1) + c1",
        Family::Euler => "MC0(n) = ln(n) + gamma",
    }
}

/// Names of the numerator and denominator coefficients.
pub fn coefficient_names(family: Family) -> (&'static str, &'static str) {
    match family {
        Family::Landau => ("kappa", "lambda"),
        Family::Lebesgue => ("rho", "varrho"),
        Family::Euler => ("a", "b"),
    }
}

/// Coefficients of a depth-`depth` derivation that have no independently
/// known value to compare against.
pub fn uncorroborated(family: Family, depth: usize) -> Vec<String> {
    let (a, b) = coefficient_names(family);
    // first index without a reference value, for numerators and denominators
    let (na, nb) = match family {
        Family::Landau => (6, 5),
        Family::Lebesgue => (4, 3),
        Family::Euler => (11, 11),
    };
    let mut out = Vec::new();
    for j in 1..=depth {
        if j >= na {
            out.push(format!("{a}_{j}"));
        }
        if j >= nb {
            out.push(format!("{b}_{j}"));
        }
    }
    out
}

/// `digits` significant decimal digits of a ℚ(π) element.
pub fn decimal(v: &PiRatio, digits: usize) -> String {
    let bits = (digits as f64 * std::f64::consts::LOG2_10) as u32 + 64;
    eval_piratio(v, &pi(bits))
        .map(|e| e.to_decimal(digits))
        .unwrap_or_else(|_| "nan".into())
}

fn exact_and_decimal(v: &PiRatio, digits: usize) -> Value {
    json!({ "exact": v.to_string(), "decimal": decimal(v, digits) })
}

pub fn report_to_json(r: &DerivationReport, digits: usize) -> Value {
    let family = r.cf.family();
    let (num_name, den_name) = coefficient_names(family);
    let terms: Vec<Value> = r
        .cf
        .terms()
        .iter()
        .enumerate()
        .map(|(i, (a, b))| {
            json!({
                "index": i + 1,
                num_name: exact_and_decimal(a, digits),
                den_name: exact_and_decimal(b, digits),
            })
        })
        .collect();
    let residual: Vec<String> = r.residual.coeffs().iter().map(|c| c.to_string()).collect();
    json!({
        "schema_version": SCHEMA_VERSION,
        "kind": "derivation",
        "family": family.name(),
        "depth": r.cf.depth(),
        "mc0": mc0_description(family),
        "decimal_digits": digits,
        "terms": terms,
        "limit_constant": exact_and_decimal(&r.limit_constant, digits),
        "limit_exponent": r.limit_exponent,
        "residual": { "min_order": r.residual.min_order(), "coeffs": residual },
        "brouncker_k": r.brouncker_k,
        "lebesgue_terms": r.lebesgue_terms,
        "uncorroborated": uncorroborated(family, r.cf.depth()),
    })
}

pub fn to_canonical_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

fn field<'a>(v: &'a Value, name: &str) -> Result<&'a Value, JsonError> {
    v.get(name).ok_or_else(|| JsonError::Field { field: name.into(), msg: "missing".into() })
}

fn bad(name: &str, msg: impl ToString) -> JsonError {
    JsonError::Field { field: name.into(), msg: msg.to_string() }
}

fn as_u64(v: &Value, name: &str) -> Result<u64, JsonError> {
    field(v, name)?.as_u64().ok_or_else(|| bad(name, "expected a non-negative integer"))
}

fn as_opt_usize(v: &Value, name: &str) -> Result<Option<usize>, JsonError> {
    match field(v, name)? {
        Value::Null => Ok(None),
        x => x.as_u64().map(|k| Some(k as usize)).ok_or_else(|| bad(name, "expected an integer or null")),
    }
}

fn parse_exact(v: &Value, name: &str) -> Result<PiRatio, JsonError> {
    field(v, name)?
        .get("exact")
        .and_then(Value::as_str)
        .ok_or_else(|| bad(name, "expected an object with an `exact` string"))?
        .parse()
        .map_err(|e| bad(name, e))
}

/// Returns the report and the number of decimal digits it was rendered with.
pub fn report_from_json(v: &Value) -> Result<(DerivationReport, usize), JsonError> {
    let version = as_u64(v, "schema_version")?;
    if version != SCHEMA_VERSION {
        return Err(JsonError::SchemaVersion(version));
    }
    let family: Family = field(v, "family")?
        .as_str()
        .ok_or_else(|| bad("family", "expected a string"))?
        .parse()
        .map_err(|e: crate::seriesgen::ParseFamilyError| bad("family", e.0))?;
    let depth = as_u64(v, "depth")? as usize;
    let digits = as_u64(v, "decimal_digits")? as usize;
    let (num_name, den_name) = coefficient_names(family);
    let terms = field(v, "terms")?
        .as_array()
        .ok_or_else(|| bad("terms", "expected an array"))?
        .iter()
        .map(|t| Ok((parse_exact(t, num_name)?, parse_exact(t, den_name)?)))
        .collect::<Result<Vec<_>, JsonError>>()?;
    if terms.len() != depth {
        return Err(bad("terms", format!("{} entries for depth {depth}", terms.len())));
    }
    let limit_constant = parse_exact(v, "limit_constant")?;
    let limit_exponent = field(v, "limit_exponent")?
        .as_i64()
        .ok_or_else(|| bad("limit_exponent", "expected an integer"))?;
    let res = field(v, "residual")?;
    let min_order = field(res, "min_order")?
        .as_i64()
        .ok_or_else(|| bad("residual", "min_order must be an integer"))?;
    let coeffs = field(res, "coeffs")?
        .as_array()
        .ok_or_else(|| bad("residual", "coeffs must be an array"))?
        .iter()
        .map(|c| {
            c.as_str()
                .ok_or_else(|| bad("residual", "coefficients must be strings"))?
                .parse::<PiRatio>()
                .map_err(|e| bad("residual", e))
        })
        .collect::<Result<Vec<_>, JsonError>>()?;
    let report = DerivationReport {
        cf: CFApprox::new(family, terms),
        limit_constant,
        limit_exponent,
        residual: TruncSeries::new(min_order, coeffs),
        brouncker_k: as_opt_usize(v, "brouncker_k")?,
        lebesgue_terms: as_opt_usize(v, "lebesgue_terms")?,
    };
    Ok((report, digits))
}

pub fn report_from_str(s: &str) -> Result<(DerivationReport, usize), JsonError> {
    let v: Value = serde_json::from_str(s).map_err(|e| JsonError::Syntax(e.to_string()))?;
    report_from_json(&v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correction::derive;

    #[test]
    fn round_trip_is_byte_identical() {
        for (f, k) in [(Family::Landau, 2), (Family::Lebesgue, 1), (Family::Euler, 3), (Family::Lebesgue, 0)] {
            let r = derive(f, k).unwrap();
            let s = to_canonical_string(&report_to_json(&r, 30));
            let (back, digits) = report_from_str(&s).unwrap();
            assert_eq!(back, r);
            assert_eq!(to_canonical_string(&report_to_json(&back, digits)), s);
        }
    }

    #[test]
    fn flags_coefficients_without_reference_values() {
        assert!(uncorroborated(Family::Landau, 4).is_empty());
        assert_eq!(uncorroborated(Family::Landau, 5), vec!["lambda_5"]);
        assert_eq!(uncorroborated(Family::Lebesgue, 3), vec!["varrho_3"]);
        assert_eq!(uncorroborated(Family::Euler, 11), vec!["a_11", "b_11"]);
    }

    #[test]
    fn rejects_other_schema_versions() {
        let r = derive(Family::Euler, 1).unwrap();
        let mut v = report_to_json(&r, 10);
        v["schema_version"] = json!(99);
        assert_eq!(report_from_json(&v).unwrap_err(), JsonError::SchemaVersion(99));
    }
}
