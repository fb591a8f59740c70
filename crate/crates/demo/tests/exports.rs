use rmtf_demo::{failure_bound_json, roundtrip_json, validate_json};
use serde_json::Value;

fn parse(s: String) -> Value {
    serde_json::from_str(&s).expect("exports return JSON")
}

#[test]
fn bound_matches_library() {
    let v = parse(failure_bound_json(2, 14, 10, 11, 3, 2, 7));
    let shape = rmtf::analysis::DecoderShape { q: 2, m: 14, rows: 10, cols: 11, w: 3, t: 2, samples: 7 };
    let b = rmtf::analysis::failure_bound(&shape).unwrap();
    assert_eq!(v["log2_total"].as_f64().unwrap(), b.log2_total);
    assert_eq!(v["regime_ok"], Value::Bool(true));
    assert!(parse(failure_bound_json(1, 14, 10, 11, 3, 2, 7))["error"].is_string());
}

#[test]
fn first_table_row_validates() {
    let v = parse(validate_json(2, 179, 163, 37, 16, 6, 14, 84, 80, false));
    assert_eq!(v["all_pass"], Value::Bool(true));
    assert_eq!(v["sizes"]["pk_kb"], 64);
    assert_eq!(v["sizes"]["ct_kb"], 367);
    let bad = parse(validate_json(2, 179, 163, 37, 40, 6, 14, 84, 80, false));
    assert_eq!(bad["all_pass"], Value::Bool(false));
}

#[test]
fn roundtrip_is_seeded() {
    let a = roundtrip_json(2, 23, 8, 4, 3, 2, 2, 5, 1);
    assert_eq!(a, roundtrip_json(2, 23, 8, 4, 3, 2, 2, 5, 1));
    let v = parse(a);
    assert_eq!(v["recovered"], Value::Bool(true), "{v}");
    assert_eq!(v["rank_weight"], 2);
    assert!(parse(roundtrip_json(2, 2000, 200, 40, 10, 3, 4, 200, 1))["error"].as_str().unwrap().contains("demo stops"));
    assert!(parse(roundtrip_json(2, 23, 8, 4, 9, 2, 2, 5, 1))["error"].is_string());
}

#[test]
fn page_defaults_roundtrip() {
    let v = parse(roundtrip_json(2, 41, 16, 6, 4, 3, 3, 10, 1));
    assert_eq!(v["recovered"], Value::Bool(true), "{v}");
}
