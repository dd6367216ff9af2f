//! End-to-end tests of the qpos binary: exit-code contract, golden text
//! output, JSON round-trips, and determinism.

use std::process::{Command, Output};

fn qpos(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qpos"))
        .args(args)
        .env_remove("QPOS_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 stderr")
}

#[test]
fn eval_g_golden() {
    let out = qpos(&["eval-g", "--N", "1", "--M", "1", "--alpha", "4/3", "--beta", "5/3", "--K", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "1 + q\n");

    let out = qpos(&["eval-g", "--N", "0", "--M", "0", "--alpha", "1", "--beta", "1", "--K", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "1\n");
}

#[test]
fn eval_g_json_round_trips() {
    let out = qpos(&[
        "eval-g", "--N", "1", "--M", "1", "--alpha", "4/3", "--beta", "5/3", "--K", "3", "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_str(stdout(&out).trim()).expect("valid JSON");
    assert_eq!(value["min_exp"], 0);
    assert_eq!(value["coeffs"], serde_json::json!(["1", "1"]));
}

#[test]
fn eval_g_non_integral_exponent_is_usage_error() {
    let out = qpos(&["eval-g", "--N", "3", "--M", "3", "--alpha", "4/5", "--beta", "1", "--K", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("non-integral exponent"));
}

#[test]
fn eval_g_bad_rational_is_usage_error() {
    let out = qpos(&["eval-g", "--N", "1", "--M", "1", "--alpha", "x", "--beta", "1", "--K", "3"]);
    assert_eq!(out.status.code(), Some(2));

    // clap parse failures use the same exit code
    let out = qpos(&["eval-g", "--N", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn eval_d_golden() {
    let out = qpos(&[
        "eval-d", "--N", "2", "--M", "2", "--alpha", "1", "--beta", "1", "--K", "3", "--i", "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "1\n");

    // i >= K is a usage error
    let out = qpos(&[
        "eval-d", "--N", "2", "--M", "2", "--alpha", "1", "--beta", "1", "--K", "3", "--i", "3",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_single_identity_passes() {
    let out = qpos(&["verify", "thm18", "--n-max", "12"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "PASS thm18  n=1..12\n");
}

#[test]
fn verify_unknown_identity_is_usage_error() {
    let out = qpos(&["verify", "no-such-id"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("unknown identity"));
}

#[test]
fn verify_reports_remark_counterexample_with_exit_1() {
    // thm16-a1: the equality holds but the right side goes negative at n=1;
    // the verifier reports the counterexample and exits 1
    let out = qpos(&["verify", "thm16-a1", "--n-max", "6"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.starts_with("FAIL thm16-a1"));
    assert!(text.contains("lhs = 1 - q^3"));
    assert!(text.contains("rhs = 1 - q^3"));
}

#[test]
fn verify_json_parses_and_round_trips() {
    let out = qpos(&["verify", "rs-even", "--n-max", "8", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let reports: serde_json::Value = serde_json::from_str(stdout(&out).trim()).expect("valid JSON");
    assert_eq!(reports[0]["id"], "rs-even");
    assert_eq!(reports[0]["verdict"], "pass");

    let out = qpos(&["verify", "thm16-a1", "--n-max", "4", "--json"]);
    assert_eq!(out.status.code(), Some(1));
    let reports: serde_json::Value = serde_json::from_str(stdout(&out).trim()).expect("valid JSON");
    assert_eq!(reports[0]["verdict"], "fail");
    // the serialized polynomial round-trips through the wire format
    let lhs = reports[0]["lhs"].clone();
    let poly: qpos_core::LaurentPoly = serde_json::from_value(lhs).expect("wire format");
    assert_eq!(poly.to_string(), "1 - q^3");
}

#[test]
fn verify_all_reports_every_entry() {
    let out = qpos(&["verify", "all", "--n-max", "3", "--t-max", "0"]);
    // the catalog contains two entries whose right-side non-negativity
    // claim is false, so "all" finds counterexamples and exits 1
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS") || l.starts_with("FAIL")).count(), 20);
    assert_eq!(text.matches("FAIL").count(), 2);

    // verify-all is the same command
    let out2 = qpos(&["verify-all", "--n-max", "3", "--t-max", "0"]);
    assert_eq!(out2.status.code(), Some(1));
    assert_eq!(stdout(&out2), text);
}

#[test]
fn identical_invocations_are_byte_identical() {
    let a = qpos(&["verify", "berkovich-g1", "--n-max", "6"]);
    let b = qpos(&["verify", "berkovich-g1", "--n-max", "6"]);
    assert_eq!(stdout(&a), stdout(&b));

    let a = qpos(&["scan", "--conjecture", "conjecture-1.1", "--n-max", "3", "--m-max", "3", "--k-max", "2"]);
    let b = qpos(&["scan", "--conjecture", "conjecture-1.1", "--n-max", "3", "--m-max", "3", "--k-max", "2"]);
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn threads_flag_does_not_change_output() {
    let a = qpos(&["scan", "--conjecture", "conjecture-1.2", "--n-max", "3", "--m-max", "3", "--k-max", "3"]);
    let b = qpos(&[
        "scan", "--conjecture", "conjecture-1.2", "--n-max", "3", "--m-max", "3", "--k-max", "3",
        "--threads", "4",
    ]);
    assert_eq!(out_pair(&a), out_pair(&b));

    fn out_pair(out: &Output) -> (Option<i32>, String) {
        (out.status.code(), String::from_utf8(out.stdout.clone()).unwrap())
    }
}

#[test]
fn scan_golden_and_exit() {
    let out = qpos(&["scan", "--conjecture", "conjecture-1.1", "--n-max", "2", "--m-max", "2", "--k-max", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("conjecture-1.1 N<=2 M<=2 K<=2: tested"));
    assert!(text.contains("0 violation(s)"));

    let out = qpos(&["scan", "--conjecture", "nope"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn scan_json_shape() {
    let out = qpos(&[
        "scan", "--conjecture", "conjecture-1.2", "--n-max", "2", "--m-max", "2", "--k-max", "3",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let reports: serde_json::Value = serde_json::from_str(stdout(&out).trim()).expect("valid JSON");
    assert_eq!(reports[0]["id"], "conjecture-1.2");
    assert_eq!(reports[0]["verdict"], "pass");
    assert!(reports[0]["params"].as_str().unwrap().contains("tested="));
}

#[test]
fn transform_golden() {
    let out = qpos(&["transform", "--kind", "even", "--L", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "T[1,0] = 1 + q\n");

    let out = qpos(&["transform", "--kind", "odd", "--L", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "T~[2,0] = 1 + q + q^2 + q^3 + q^4\n");

    let out = qpos(&["transform", "--kind", "even", "--L", "12", "--verify-base"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("base identity even L=12: PASS"));

    let out = qpos(&["transform", "--kind", "odd", "--L", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn check_pos_command() {
    let out = qpos(&["check-pos", "pos-cor113", "--t-max", "1", "--n-max", "8"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "PASS pos-cor113  t=0..1, n=0..8\n");

    let out = qpos(&["check-pos", "thm18"]);
    assert_eq!(out.status.code(), Some(2));
}
