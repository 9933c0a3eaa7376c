use std::process::Command;

use serde_json::{json, Value};

fn qstar(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_qstar")).args(args).output().unwrap();
    let doc = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap_or(-1), doc)
}

#[test]
fn pk_prints_coefficients() {
    let (code, v) = qstar(&["pk", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["result"]["coeffs"], json!(["1", "1 - s^4"]));
    assert_eq!(qstar(&["pk", "0"]).1["result"]["text"], "1");
}

#[test]
fn star_of_zstar_z() {
    let (code, v) = qstar(&["star", "zs", "z", "--order", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["order"], 1);
    assert_eq!(v["result"]["text"][0], "(1 - s^4) + s^4*z*zs");
    assert_eq!(v["result"]["text"][1], "(s^4 - s^8) + (-s^4 + s^12)*z*zs + (s^8 - s^12)*z^2*zs^2");
}

#[test]
fn numeric_output() {
    let (code, v) = qstar(&["eval", "zs*z", "--s0", "1/2"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["terms"], json!([[[0, 0], "15/16"], [[1, 1], "1/16"]]));
    let (code, v) = qstar(&["box", "zs*z", "--s0", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["terms"], json!([[[0, 0], "1"], [[1, 1], "-2"], [[2, 2], "1"]]));
}

#[test]
fn latex_is_optional() {
    let (_, plain) = qstar(&["box", "z*zs"]);
    assert!(plain["result"].get("latex").is_none());
    let (_, v) = qstar(&["box", "z*zs", "--latex"]);
    assert!(v["result"]["latex"].as_str().unwrap().contains("z^{*}"));
}

#[test]
fn errors_exit_with_two() {
    let (code, v) = qstar(&["box", "z^^2"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "syntax");
    assert_eq!(v["error"]["position"], 2);

    let (code, v) = qstar(&["berezin", "2", "2", "--cutoff", "6"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["needed_cutoff"], 8);

    assert_eq!(qstar(&["eval", "z"]).0, 2);
    assert_eq!(qstar(&["verify", "nope"]).0, 2);
    assert_eq!(qstar(&["ck", "0", "z", "zs"]).1["error"]["kind"], "invalid_coefficient_index");
    assert_eq!(qstar(&["frobnicate"]).0, 2);
}

#[test]
fn verify_reports_laws() {
    let (code, v) = qstar(&["verify", "calculus"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["passed"], true);
    let laws = v["result"]["suites"][0]["laws"].as_array().unwrap();
    assert!(laws.iter().all(|l| l["passed"] == true && l["cases"].as_u64().unwrap() > 0));
}

#[test]
fn berezin_warns_at_the_boundary() {
    let (code, v) = qstar(&["berezin", "1", "1", "--window", "4", "--cutoff", "5", "--order", "2"]);
    assert_eq!(code, 0);
    assert!(v["result"]["warning"].is_string());
    let (_, v) = qstar(&["berezin", "1", "1", "--window", "4", "--cutoff", "10", "--order", "2"]);
    assert!(v["result"]["warning"].is_null());
}
