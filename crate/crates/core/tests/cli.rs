use std::process::{Command, Output};

use serde_json::Value;

fn qtorus(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qtorus"))
        .args(args)
        .env("QTORUS_COLOR", "0")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// Runs in both modes, checks the exit codes agree and returns
/// `(code, text, json)`.
fn both(args: &[&str]) -> (i32, String, Value) {
    let text = qtorus(args);
    let mut json_args = vec!["--json"];
    json_args.extend_from_slice(args);
    let json = qtorus(&json_args);
    assert_eq!(code(&text), code(&json), "{:?}", args);
    let parsed: Value = serde_json::from_str(stdout(&json).trim()).expect("stdout is JSON");
    (code(&text), stdout(&text), parsed)
}

#[test]
fn cf_examples() {
    let (c, text, json) = both(&["cf", "sqrt(2)"]);
    assert_eq!(c, 0);
    assert_eq!(text, "preperiod: [1]\nperiod: [2]\n");
    assert_eq!(json["preperiod"], serde_json::json!([1]));
    assert_eq!(json["period"], serde_json::json!([2]));

    let (c, _, json) = both(&["cf", "(1+sqrt(5))/2"]);
    assert_eq!(c, 0);
    assert_eq!(json["preperiod"], serde_json::json!([1]));
    assert_eq!(json["period"], serde_json::json!([1]));

    let (c, _, json) = both(&["cf", "3/4"]);
    assert_eq!(c, 2);
    assert!(json["error"].is_string());
    assert_eq!(code(&qtorus(&["cf", "sqrt("])), 2);
}

#[test]
fn morita_verdicts() {
    let (c, text, json) = both(&["morita", "sqrt(2)", "1+sqrt(2)"]);
    assert_eq!(c, 0);
    assert!(text.starts_with("equivalent\n"));
    assert_eq!(json["equivalent"], true);
    let m = &json["matrix"];
    let e = |i: usize, j: usize| m[i][j].as_i64().unwrap();
    assert_eq!((e(0, 0) * e(1, 1) - e(0, 1) * e(1, 0)).abs(), 1);
    assert!(json["scaling_theta"].is_string());

    for (t1, t2) in [("sqrt(2)", "sqrt(3)"), ("(1+sqrt(5))/2", "sqrt(5)")] {
        let (c, text, json) = both(&["morita", t1, t2]);
        assert_eq!(c, 1, "{} {}", t1, t2);
        assert!(text.starts_with("not equivalent\n"));
        assert_eq!(json["equivalent"], false);
        assert!(json["evidence"].is_string());
    }
}

#[test]
fn morita_oracle_flag() {
    let (_, _, json) = both(&["morita", "sqrt(2)", "1+sqrt(2)", "--bound", "2"]);
    assert_eq!(json["oracle"]["matrix"], serde_json::json!([[0, 1], [1, -1]]));
    let (c, _, json) = both(&["morita", "(1+sqrt(5))/2", "sqrt(5)", "--bound", "5"]);
    assert_eq!(c, 1);
    assert!(json["oracle"]["matrix"].is_null());
}

#[test]
fn torus_verify_reports() {
    let (c, text, json) = both(&["torus-verify", "--exp-range", "2"]);
    assert_eq!(c, 0);
    assert!(!text.contains("FAIL"));
    assert!(json["checked"].as_u64().unwrap() > 0);
    assert_eq!(json["failed"], 0);
    assert_eq!(code(&qtorus(&["torus-verify", "--exp-range", "0"])), 2);
}

#[test]
fn transform_verify_pipeline() {
    let (c, _, json) = both(&["transform-verify", "sqrt(2)", "1+sqrt(2)", "--exp-range", "2"]);
    assert_eq!(c, 0);
    assert_eq!(json["equivalent"], true);
    assert_eq!(json["failed"], 0);
    let (c, _, json) = both(&["transform-verify", "sqrt(2)", "sqrt(3)"]);
    assert_eq!(c, 1);
    assert_eq!(json["equivalent"], false);
}

#[test]
fn rewrite_and_eval() {
    let (c, text, json) = both(&["rewrite", "0", "1", "1", "0"]);
    assert_eq!(c, 0);
    assert_eq!(text.trim(), "C_theta(y, x)");
    assert_eq!(json["formula"], "C_theta(y, x)");
    assert_eq!(code(&qtorus(&["rewrite", "1", "1", "1", "1"])), 2);

    let formula = json["formula"].as_str().unwrap().to_string();
    // y = x^(1/θ) with x = θ and y = 1
    let (c, text, json) = both(&["eval", &formula, "sqrt(2)", "1", "sqrt(2)"]);
    assert_eq!((c, text.trim()), (0, "true"));
    assert_eq!(json["value"], true);
    let (c, _, json) = both(&["eval", &formula, "sqrt(2)", "1/2", "sqrt(2)"]);
    assert_eq!(c, 1);
    assert_eq!(json["value"], false);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&qtorus(&["frobnicate"])), 2);
    assert_eq!(code(&qtorus(&["cf", "sqrt(2)", "--nope"])), 2);
    assert_eq!(code(&qtorus(&["--help"])), 0);
}
