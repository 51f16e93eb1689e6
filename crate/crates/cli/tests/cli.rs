use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_schubpos")).args(args).output().expect("spawn schubpos")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

#[test]
fn pf_a1_closed_form() {
    let v = json(&["pf", "--type", "A", "--rank", "1", "--q", "4"]);
    let s = v["sigma"]["1"].as_f64().unwrap();
    assert!((s - 2.0).abs() <= 1e-9, "sigma_s = {s}");
    assert!((v["lambda_pf"].as_f64().unwrap() - 3.0).abs() <= 1e-9);
    assert_eq!(v["sign_definite"], 1);
    assert_eq!(v["simple"], true);
}

#[test]
fn roots_g2() {
    let v = json(&["roots", "--type", "G", "--rank", "2"]);
    assert_eq!(v["type"], "G2");
    assert_eq!(v["positive_roots"].as_array().unwrap().len(), 6);
    assert_eq!(v["theta"], serde_json::json!([3, 2]));
}

#[test]
fn verify_report_keys_and_exit() {
    let v = json(&["verify", "--suite", "appendixC", "--config", "n=2"]);
    for key in ["suite", "version", "seed", "tol", "cases_run", "cases", "failures"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert!(v.get("wall_time").is_none());
    assert_eq!(v["failures"].as_array().unwrap().len(), 0);
    let timed = json(&["--timing", "verify", "--suite", "chambers", "--config", "n=2..4"]);
    assert!(timed["wall_time"].as_f64().is_some());
    assert_eq!(timed["cases_run"], 3);
}

#[test]
fn reports_are_byte_stable() {
    let a = run(&["verify", "--suite", "pf", "--seed", "7"]);
    let b = run(&["verify", "--suite", "pf", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["roots", "--type", "Q", "--rank", "2"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--suite", "weightlemmas", "--budget", "1"]).status.code(), Some(3));
    assert_eq!(run(&["toeplitz", "--n", "3", "--entries", "1,1/2", "--check", "tnn"]).status.code(), Some(2));
}

#[test]
fn tsv_rows() {
    let out = run(&["--emit", "tsv", "verify", "--suite", "appendixC", "--config", "n=2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("suite\tcase\tstatus\tdiagnostic"));
    assert!(lines.all(|l| l.split('\t').nth(2) == Some("pass")));
}

#[test]
fn toeplitz_queries() {
    let v = json(&["toeplitz", "--n", "2", "--entries=-1,1/2", "--check", "tnn"]);
    assert_eq!(v["result"]["tnn"], false);
    let v = json(&["toeplitz", "--n", "2", "--entries=2,1", "--check", "delta"]);
    assert_eq!(v["result"]["delta"], serde_json::json!(["1", "3"]));
}

#[test]
fn chambers_and_expf() {
    let v = json(&["chambers", "--family", "Bn", "--n", "2"]);
    assert_eq!(v["length"], 10);
    assert_eq!(v["claim"], true);
    let v = json(&["expf", "--m", "3"]);
    assert_eq!(v["matrix"][2][0], "1/2");
    assert_eq!(v["tp"], true);
}
