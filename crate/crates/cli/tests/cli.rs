use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn weil(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_weil")).args(args).output().expect("run weil")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

fn lines(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).expect("JSON line"))
        .collect()
}

fn file(ext: &str, body: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::Builder::new().suffix(ext).tempfile().unwrap();
    f.write_all(body.as_bytes()).unwrap();
    f
}

#[test]
fn validate_exit_codes() {
    let out = weil(&["validate", "--coeffs", "1,0,5", "--q", "5"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["slopes"], serde_json::json!(["1/2", "1/2"]));
    let out = weil(&["validate", "--coeffs", "1,-5,5", "--q", "5"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["reason"], "RootsOffCircle");
    let out = weil(&["validate", "--label", "1.5.a", "--q", "implied"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["coeffs"], serde_json::json!(["1", "0", "5"]));
    let out = weil(&["validate", "--coeffs", "1,0,5", "--q", "6"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["reason"], "NotPrimePower");
    assert_eq!(weil(&["validate", "--q", "5"]).status.code(), Some(1));
    assert_eq!(weil(&["validate", "--label", "1.5"]).status.code(), Some(1));
    assert_eq!(weil(&["validate", "--label", "1.5.a", "--q", "7"]).status.code(), Some(1));
    assert_eq!(weil(&["frobnicate"]).status.code(), Some(1));
}

#[test]
fn analyze_reports() {
    let out = weil(&["analyze", "--coeffs", "1,0,6,0,25", "--q", "5", "--json", "--base-field-basis"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["neat"], "NotNeat");
    assert_eq!(r["minimal_reduced"]["e"], serde_json::json!([2, 0, 2, 0]));
    assert_eq!(r["minimal_exotic_power"], 2);
    assert_eq!(r["base_field_H"], 4);
    let r = json(&weil(&["analyze", "--coeffs", "1,-2,5", "--q", "5", "--json"]));
    assert_eq!(r["neat"], "Neat");
    assert_eq!(r["H"], 2);
    assert_eq!(r["base_field_H"], Value::Null);
    let r = json(&weil(&["analyze", "--label", "1.5.a", "--json"]));
    assert_eq!(r["base_change"], 2);
    assert_eq!(r["neat"], "NotNeat");
    assert_eq!(r["minimal_reduced"]["e"], serde_json::json!([4, 0]));
    let out = weil(&["analyze", "--coeffs", "1,-5,5", "--q", "5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn analyze_is_byte_deterministic() {
    let args = ["analyze", "--label", "3.4.c_e_i", "--json", "--weight-bound", "24"];
    let a = weil(&args);
    let b = weil(&args);
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn precision_cap_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_weil"))
        .args(["analyze", "--label", "2.5.a_g", "--json"])
        .env("WEIL_PRECISION_CAP", "4096")
        .output()
        .unwrap();
    assert!(out.status.success());
    let out = Command::new(env!("CARGO_BIN_EXE_weil"))
        .args(["analyze", "--label", "2.5.a_g"])
        .env("WEIL_PRECISION_CAP", "lots")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn batch_preserves_order() {
    let body = "{\"coeffs\": [1, 0, 6, 0, 25], \"q\": 5}\n\"1.5.ac\"\n{\"label\": \"1.5.a\"}\n";
    let f = file(".jsonl", body);
    for parallel in ["1", "4"] {
        let out = weil(&["batch", f.path().to_str().unwrap(), "--parallel", parallel]);
        assert!(out.status.success());
        let recs = lines(&out);
        assert_eq!(recs.len(), 3);
        assert_eq!(recs[0]["neat"], "NotNeat");
        assert_eq!(recs[1]["label"], "1.5.ac");
        assert_eq!(recs[2]["base_change"], 2);
    }
}

#[test]
fn batch_error_records() {
    let f = file(".jsonl", "\"1.5.ac\"\n{not json\n{\"coeffs\": [1, -5, 5], \"q\": 5}\n\"2.5.a_g\"\n");
    let out = weil(&["batch", f.path().to_str().unwrap(), "--parallel", "2"]);
    assert!(out.status.success());
    let recs = lines(&out);
    assert_eq!(recs.len(), 4);
    assert_eq!(recs[1]["line"], 2);
    assert!(recs[1]["error"].as_str().unwrap().contains("malformed"));
    assert_eq!(recs[2]["line"], 3);
    assert_eq!(recs[3]["neat"], "NotNeat");
}

#[test]
fn batch_empty_file() {
    let f = file(".jsonl", "");
    let out = weil(&["batch", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
}

#[test]
fn batch_csv() {
    let f = file(".csv", "label,coeffs,q\n2.5.a_g,,\n,\"1,-2,5\",5\n");
    let out = weil(&["batch", f.path().to_str().unwrap()]);
    let recs = lines(&out);
    assert_eq!(recs.len(), 2);
    assert_eq!(recs[0]["neat"], "NotNeat");
    assert_eq!(recs[1]["neat"], "Neat");
}

#[test]
fn oracle_check_table() {
    let out = weil(&["oracle-check", "--label", "2.5.a_g", "--max-n", "2", "--max-d", "3"]);
    let rows = json(&out);
    let rows = rows.as_array().unwrap();
    // n = 1 allows d = 2 only; n = 2 allows d = 2, 3
    assert_eq!(rows.len(), 3);
    let r = &rows[1];
    assert_eq!((r["n"].as_u64(), r["d"].as_u64()), (Some(2), Some(2)));
    assert_eq!((r["tate_dim"].as_u64(), r["image_dim"].as_u64()), (Some(20), Some(18)));
    assert_eq!(r["exceptional"], true);
    let rows = json(&weil(&["oracle-check", "--coeffs", "1,-2,5", "--q", "5", "--max-n", "2", "--max-d", "2"]));
    assert!(rows.as_array().unwrap().iter().all(|r| r["exceptional"] == false));
}
