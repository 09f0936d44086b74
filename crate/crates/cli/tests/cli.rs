//! Golden-file tests for the command-line interface: byte-exact output and
//! the exit-code contract.

use std::process::{Command, Output};

fn deglap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_deglap"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn eval_polynomial() {
    let out = deglap(&["eval", "--expr", "t^2", "--lambda", "0.1", "--t", "3"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "9\n");
}

#[test]
fn eval_degenerate_cosine() {
    let out = deglap(&[
        "eval", "--expr", "cos_l(1*t)", "--lambda", "1", "--t", "1.7182818",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "0.540302315\n");
}

#[test]
fn eval_json_has_fixed_field_order() {
    let out = deglap(&[
        "eval", "--expr", "t^2", "--lambda", "0.1", "--t", "3", "--json",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        stdout(&out),
        "{\"expr\":\"t^2\",\"lambda\":0.1,\"t\":3.0,\"value\":9.0}\n"
    );
}

#[test]
fn eval_syntax_error_exits_2_with_position() {
    let out = deglap(&["eval", "--expr", "t^", "--lambda", "0.1", "--t", "1"]);
    assert_eq!(code(&out), 2);
    assert_eq!(
        stderr(&out),
        "error: syntax error at byte 2: expected an exponent (optionally signed number)\n"
    );
    assert_eq!(stdout(&out), "");
}

#[test]
fn eval_domain_error_exits_3() {
    let out = deglap(&["eval", "--expr", "t", "--lambda", "-0.5", "--t", "1"]);
    assert_eq!(code(&out), 3);
    let out = deglap(&["eval", "--expr", "t", "--lambda", "0.5", "--t", "-1"]);
    assert_eq!(code(&out), 3);
}

#[test]
fn gamma_paths_agree() {
    let product = deglap(&["gamma", "--lambda", "0.1", "--s", "3", "--method", "product"]);
    assert_eq!(code(&product), 0);
    assert_eq!(stdout(&product), "3.96825397\n");
    let beta = deglap(&["gamma", "--lambda", "0.1", "--s", "3", "--method", "beta"]);
    assert_eq!(stdout(&beta), stdout(&product));
    let quad = deglap(&[
        "gamma", "--lambda", "0.1", "--s", "3", "--method", "quadrature",
    ]);
    assert_eq!(stdout(&quad), stdout(&product));
}

#[test]
fn gamma_json() {
    let out = deglap(&["gamma", "--lambda", "0.1", "--s", "3", "--json"]);
    assert_eq!(
        stdout(&out),
        "{\"lambda\":0.1,\"s\":3.0,\"method\":\"beta\",\"value\":3.96825397,\"abs_error_estimate\":null}\n"
    );
    // the quadrature method reports its error estimate
    let out = deglap(&[
        "gamma", "--lambda", "0.1", "--s", "3", "--method", "quadrature", "--json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["method"], "quadrature");
    assert!((v["value"].as_f64().unwrap() - 3.96825397).abs() < 1e-8);
    assert!(v["abs_error_estimate"].as_f64().unwrap() < 1e-9);
}

#[test]
fn gamma_outside_strip_exits_3() {
    let out = deglap(&["gamma", "--lambda", "0.1", "--s", "12"]);
    assert_eq!(code(&out), 3);
    let out = deglap(&["gamma", "--lambda", "0.1", "--s", "3.5", "--method", "product"]);
    assert_eq!(code(&out), 3);
}

#[test]
fn transform_symbolic_golden() {
    let out = deglap(&["transform", "--expr", "sin_l(2*t)", "--lambda", "0.1"]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        stdout(&out),
        "closed_form = 2/((s-0.1)^2+4)\nsigma_min = 0.1\ntrace = sin\n"
    );
    let out = deglap(&["transform", "--expr", "t^3", "--lambda", "0.1"]);
    assert_eq!(
        stdout(&out),
        "closed_form = 6/((s-0.1)*(s-0.2)*(s-0.3)*(s-0.4))\nsigma_min = 0.4\ntrace = power-int(3)\n"
    );
    let out = deglap(&["transform", "--expr", "t^0.5", "--lambda", "0.1"]);
    assert_eq!(
        stdout(&out),
        "closed_form = dgamma(lambda/s, 1.5)/s^1.5\nsigma_min = 0.15\ntrace = power-frac(0.5)\n"
    );
}

#[test]
fn transform_json_with_value() {
    let out = deglap(&[
        "transform", "--expr", "sin_l(2*t)", "--lambda", "0.1", "--s", "2", "--json",
    ]);
    assert_eq!(
        stdout(&out),
        "{\"closed_form\":\"2/((s-0.1)^2+4)\",\"sigma_min\":0.1,\"trace\":[\"sin\"],\"value\":0.262812089}\n"
    );
}

#[test]
fn transform_trace_composition() {
    let out = deglap(&[
        "transform", "--expr", "log1p_l(t)*exp_l(0.3*t)", "--lambda", "0.2", "--json",
    ]);
    assert_eq!(
        stdout(&out),
        "{\"closed_form\":\"0.2/(s-0.5)^2\",\"sigma_min\":0.5,\"trace\":[\"unit\",\"shift(0.3)\",\"log-power(1)\"]}\n"
    );
}

#[test]
fn transform_unsupported_shape_exits_4_and_numeric_path_works() {
    let out = deglap(&[
        "transform", "--expr", "sin_l(1*t)*cos_l(1*t)", "--lambda", "0.1",
    ]);
    assert_eq!(code(&out), 4);
    assert!(stderr(&out).contains("--numeric"));
    let out = deglap(&[
        "transform", "--expr", "sin_l(1*t)*cos_l(1*t)", "--lambda", "0.1", "--numeric", "--s", "2",
    ]);
    assert_eq!(code(&out), 0);
    // sin_λ·cos_λ = sin_λ(2t)/2, so the value is 1/((s-λ)²+4)
    let text = stdout(&out);
    let value: f64 = text
        .lines()
        .next()
        .unwrap()
        .strip_prefix("value = ")
        .unwrap()
        .parse()
        .unwrap();
    assert!((value - 1.0 / (1.9f64.powi(2) + 4.0)).abs() < 1e-8);
}

#[test]
fn transform_below_threshold_exits_3() {
    let out = deglap(&["transform", "--expr", "1", "--lambda", "0.5", "--s", "0.4"]);
    assert_eq!(code(&out), 3);
    assert_eq!(
        stderr(&out),
        "error: transform diverges: s = 0.4 is not above the validity threshold 0.5\n"
    );
}

#[test]
fn verify_single_check_passes() {
    let out = deglap(&["verify", "--check", "THM3"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.starts_with("THM3"), "{text}");
    assert!(text.contains("PASS"));
}

#[test]
fn verify_unknown_check_exits_5() {
    let out = deglap(&["verify", "--check", "NOPE"]);
    assert_eq!(code(&out), 5);
    assert_eq!(stderr(&out), "error: unknown check id: NOPE\n");
}

#[test]
fn verify_informational_check_does_not_fail_the_exit_code() {
    let out = deglap(&["verify", "--check", "THM1_PRINTED"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("FAIL (informational)"));
}

#[test]
fn verify_all_json_is_a_report_array() {
    let out = deglap(&["verify", "--all", "--json"]);
    assert_eq!(code(&out), 0);
    let reports: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let arr = reports.as_array().unwrap();
    assert_eq!(arr.len(), 11);
    for r in arr {
        for key in ["check_id", "grid", "max_rel_error", "passed", "notes"] {
            assert!(r.get(key).is_some(), "missing {key}");
        }
    }
    // every check passes except the documented printed-variant sub-check
    for r in arr {
        let id = r["check_id"].as_str().unwrap();
        if id == "THM1_PRINTED" {
            assert_eq!(r["passed"], false);
        } else {
            assert_eq!(r["passed"], true, "{id} failed: {}", r["notes"]);
        }
    }
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = [
        "transform", "--expr", "t^2 + 3*exp_l(-1*t)", "--lambda", "0.1", "--s", "2", "--json",
    ];
    let first = deglap(&args);
    let second = deglap(&args);
    assert_eq!(first.stdout, second.stdout);
    let args = ["gamma", "--lambda", "0.2", "--s", "1.5", "--method", "quadrature", "--json"];
    let first = deglap(&args);
    let second = deglap(&args);
    assert_eq!(first.stdout, second.stdout);
}
