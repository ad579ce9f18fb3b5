use std::path::Path;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn burnside(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_burnside"))
        .args(args)
        .env_remove("BURNSIDE_MAX_ORDER")
        .output()
        .expect("binary runs")
}

fn json_of(args: &[&str]) -> Value {
    let out = burnside(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("one JSON document")
}

fn schema(name: &str) -> jsonschema::Validator {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas").join(format!("{name}.schema.json"));
    let text = std::fs::read_to_string(path).expect("schema file");
    jsonschema::validator_for(&serde_json::from_str(&text).unwrap()).expect("valid schema")
}

const CASES: &[(&str, &[&str])] = &[
    ("group-info", &["group", "info", "D8", "--json"]),
    ("subgroups", &["subgroups", "S4", "--json"]),
    ("tom", &["tom", "Q8", "--json"]),
    ("idempotents", &["idempotents", "S3", "--ring", "Z/5", "--json"]),
    ("gamma", &["gamma", "S3", "--ring", "Q", "--invert", "--json"]),
    ("gamma", &["gamma", "C2", "--ring", "Z", "--invert", "--json"]),
    ("gamma", &["gamma", "C4", "--ring", "Z/4", "--json"]),
    ("mackey-check", &["mackey-check", "prod(C2,C2)", "--json"]),
    ("separable", &["separable", "ring", "C2", "--ring", "Z", "--json"]),
    ("separable", &["separable", "ring", "S3", "--ring", "Z/5", "--json"]),
    ("separable", &["separable", "functor", "C3", "--ring", "Z/6", "--json"]),
    ("separable", &["separable", "functor", "S3", "--ring", "Q", "--json"]),
    ("commutant", &["commutant", "C3", "--ring", "Q", "--json"]),
    ("commutant", &["commutant", "C2", "--ring", "Z", "--json"]),
    ("derivations", &["derivations", "C2", "--ring", "Z/2", "--json"]),
    ("derivations", &["derivations", "S3", "--ring", "Z", "--json"]),
];

#[test]
fn every_document_matches_its_schema() {
    for (name, args) in CASES {
        let v = json_of(args);
        let validator = schema(name);
        let errors: Vec<String> = validator.iter_errors(&v).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{args:?}: {errors:?}");
    }
}

#[test]
fn schemas_reject_malformed_documents() {
    assert!(!schema("tom").is_valid(&json!({ "group": "C2", "rows": ["1#1"], "columns": [], "entries": [[-1]] })));
    // a verdict with both a witness and an obstruction
    let mut v = json_of(&["separable", "ring", "C2", "--ring", "Z", "--json"]);
    v["witness"] = json_of(&["gamma", "C2", "--ring", "Z", "--json"])["gamma"].clone();
    assert!(!schema("separable").is_valid(&v));
}

#[test]
fn output_is_deterministic() {
    for (_, args) in CASES {
        assert_eq!(burnside(args).stdout, burnside(args).stdout, "{args:?}");
    }
    let text = ["tom", "S4"];
    assert_eq!(burnside(&text).stdout, burnside(&text).stdout);
}

#[test]
fn golden_table_of_marks() {
    assert_eq!(
        json_of(&["tom", "C2", "--json"]),
        json!({ "group": "C2", "rows": ["1#1", "2#1"], "columns": ["1#1", "2#1"], "entries": [[2, 0], [1, 1]] })
    );
    let text = String::from_utf8(burnside(&["tom", "C2"]).stdout).unwrap();
    assert_eq!(text, "    1#1 2#1\n1#1   2   0\n2#1   1   1\n");
}

#[test]
fn verdicts_are_data() {
    let out = burnside(&["separable", "ring", "C2", "--ring", "Z", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["separable"], false);
    assert_eq!(v["claim"], "ring-separable");
    let v = json_of(&["separable", "functor", "C2", "--ring", "Z/3", "--json"]);
    assert_eq!(v["separable"], true);
    assert_eq!(v["witness"]["coeffs"], json!({ "2#1": "2" }));
}

#[test]
fn gamma_inverse_is_echoed() {
    let v = json_of(&["gamma", "S3", "--ring", "Q", "--invert", "--json"]);
    assert_eq!(v["invertible"], true);
    assert_eq!(v["product"]["coeffs"], json!({ "6#1": "1" }));
    assert_eq!(v["gamma"]["coeffs"], json!({ "2#1": "1", "3#1": "1", "6#1": "1" }));
}

fn error_of(args: &[&str], env: Option<&str>) -> String {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_burnside"));
    cmd.args(args).env_remove("BURNSIDE_MAX_ORDER");
    if let Some(v) = env {
        cmd.env("BURNSIDE_MAX_ORDER", v);
    }
    let out = cmd.output().unwrap();
    assert_eq!(out.status.code(), Some(2), "{args:?}");
    assert!(out.stdout.is_empty(), "{args:?}");
    let err = String::from_utf8(out.stderr).unwrap();
    assert_eq!(err.lines().count(), 1, "{err}");
    err.split(':').next().unwrap().to_string()
}

#[test]
fn errors_exit_with_codes() {
    assert_eq!(error_of(&["tom", "X9"], None), "E_PARSE");
    assert_eq!(error_of(&["frobnicate"], None), "E_PARSE");
    assert_eq!(error_of(&["idempotents", "C2", "--ring", "Z/0"], None), "E_RING");
    assert_eq!(error_of(&["idempotents", "C2", "--ring", "Z"], None), "E_RING");
    assert_eq!(error_of(&["tom", "S3", "--max-order", "5"], None), "E_ORDER_BOUND");
    assert_eq!(error_of(&["tom", "S3"], Some("5")), "E_ORDER_BOUND");
    assert_eq!(error_of(&["commutant", "C7", "--ring", "Q"], None), "E_RESOURCE");
    assert_eq!(error_of(&["mackey-check", "S4", "--max-order", "24"], None), "E_ORDER_BOUND");
}

#[test]
fn flag_overrides_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_burnside"))
        .args(["tom", "S3", "--max-order", "6"])
        .env("BURNSIDE_MAX_ORDER", "2")
        .output()
        .unwrap();
    assert!(out.status.success());
}
