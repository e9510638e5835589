use std::process::{Command, Output};

use proptest::prelude::*;
use serde_json::Value;

fn qhg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qhg")).args(args).output().expect("qhg runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json output")
}

#[test]
fn eval_double_sine() {
    let out = qhg(&["eval", "s2", "--omega1", "1", "--omega2", "2.618", "--z-re", "0.5"]);
    assert_eq!(out.status.code(), Some(0));
    let rec = &json(&out)["records"][0];
    assert!(rec["value_re"].as_f64().unwrap().is_finite());
    assert!(rec["error_estimate"].as_f64().unwrap() < 1e-10);
}

#[test]
fn eval_reports_violated_condition() {
    let out = qhg(&[
        "eval", "capital-phi", "--a-re", "1.9", "--b-re", "2.1", "--c-re", "1.5", "--omega", "0.3010299957", "--z-re",
        "-0.3",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["records"][0]["error"]["condition"], "B2");
}

#[test]
fn eval_basic_series_at_origin() {
    let out = qhg(&["eval", "phi-basic", "--a-re", "0.5", "--b-re", "0.3", "--c-re", "1.5", "--q", "0.5", "--z-re", "0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["records"][0]["value_re"].as_f64(), Some(1.0));
}

#[test]
fn unreachable_tolerance_is_an_accuracy_failure() {
    let out = qhg(&[
        "eval", "watson", "--a-re", "1.4", "--b-re", "0.8", "--c-re", "2.2", "--q", "0.4", "--z-re", "-0.3", "--tol",
        "1e-30",
    ]);
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn sweep_asymptotic_table() {
    let out = qhg(&["sweep", "qgamma", "--omega", "0.4142", "--z-re", "0", "--grid", "z-im=5,10,20,40", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut rows = csv::Reader::from_reader(text.as_bytes());
    let header = rows.headers().unwrap().clone();
    assert!(header.iter().any(|h| h == "value_re") && header.iter().any(|h| h == "value_im"));
    let ys: Vec<f64> = rows
        .records()
        .map(|r| r.unwrap()[header.iter().position(|h| h == "z_im").unwrap()].parse().unwrap())
        .collect();
    assert_eq!(ys, vec![5.0, 10.0, 20.0, 40.0]);
}

#[test]
fn sweep_phi_with_residual_column() {
    let out = qhg(&[
        "sweep", "capital-phi", "--a-re", "1.9", "--b-re", "2.1", "--c-re", "1.5", "--omega", "0.0618", "--grid",
        "z-re=-0.5:-0.05:10",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    let recs = doc["records"].as_array().unwrap();
    assert_eq!(recs.len(), 10);
    assert!(recs.iter().all(|r| r["residual"].as_f64().unwrap() < 1e-6));
}

#[test]
fn sweep_keeps_going_past_bad_points() {
    // z = 0 is outside the sector, the others are fine
    let out = qhg(&[
        "sweep", "capital-phi", "--a-re", "1.9", "--b-re", "2.1", "--c-re", "1.5", "--omega", "0.0618", "--grid",
        "z-re=0,-0.3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert!(doc["records"][0]["error"].is_object());
    assert!(doc["records"][1]["value_re"].is_number());
}

#[test]
fn empty_grid_is_an_input_error() {
    let out = qhg(&["sweep", "qgamma", "--omega", "0.4142", "--z-re", "0", "--grid", "z-im="]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_filters_by_suite() {
    let out = qhg(&["verify", "barnes", "--seed", "7", "--reproducible"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    let recs = doc["records"].as_array().unwrap();
    assert!(!recs.is_empty());
    assert!(recs.iter().all(|r| r["suite"] == "barnes" && r["anchor"].is_string()));
}

#[test]
fn verify_output_is_reproducible() {
    let args = ["verify", "doublesine", "--seed", "3", "--reproducible"];
    let a = qhg(&args);
    let b = qhg(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn tightened_verify_reports_margins() {
    let out = qhg(&["verify", "qgamma", "--tol", "1e-12", "--reproducible"]);
    assert_eq!(out.status.code(), Some(1));
    let doc = json(&out);
    let recs = doc["records"].as_array().unwrap();
    assert!(recs.iter().any(|r| r["pass"] == false));
    assert!(recs.iter().all(|r| r.get("margin").is_some()));
}

#[test]
fn output_file_and_environment() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    let out = Command::new(env!("CARGO_BIN_EXE_qhg"))
        .args(["eval", "phi-series", "--a-re", "1", "--b-re", "1", "--c-re", "2", "--z-re", "0.5", "--out"])
        .arg(&path)
        .env("QHG_THREADS", "2")
        .env("QHG_DEFAULT_TOL", "1e-9")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    // F(1, 1, 2; z) = -log(1 - z) / z
    assert!((doc["records"][0]["value_re"].as_f64().unwrap() - 2.0 * 2f64.ln()).abs() < 1e-14);
    assert_eq!(doc["meta"]["tolerances"]["quadrature_rel"].as_f64(), Some(1e-9));
    let bad = Command::new(env!("CARGO_BIN_EXE_qhg"))
        .args(["eval", "phi-series", "--a-re", "1", "--b-re", "1", "--c-re", "2", "--z-re", "0.5"])
        .env("QHG_DEFAULT_TOL", "zero")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn malformed_invocations_exit_with_input_error(
        target in prop_oneof![Just("s2"), Just("qgamma"), Just("capital-phi"), Just("bogus")],
        flag in prop_oneof![Just("--z-re"), Just("--omega"), Just("--nonsense"), Just("--tol")],
        value in prop_oneof![Just("abc"), Just("-1"), Just(""), Just("nan")],
    ) {
        // none of these supplies every required input, so all must be rejected as input errors
        let out = qhg(&["eval", target, flag, value]);
        prop_assert_eq!(out.status.code(), Some(2), "{:?}", String::from_utf8_lossy(&out.stderr));
    }
}
