use std::process::{Command, Output};

use serde_json::Value;

fn torsion(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_torsion")).args(args).output().expect("spawn torsion")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json envelope")
}

#[test]
fn gl_order_verify_reports_both_methods() {
    let v = json(&torsion(&["gl-order", "--ring", "Z", "--r", "2", "--modulus", "4", "--verify"]));
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0]["method"], "formula");
    assert_eq!(rows[1]["method"], "bruteforce");
    assert!(rows.iter().all(|r| r["order"] == "96"));
}

#[test]
fn stabilizer_kinds_verify() {
    for group in ["fix", "stab", "units"] {
        let out = torsion(&["gl-order", "--group", group, "--r", "2", "--modulus", "6", "--verify"]);
        assert_eq!(json(&out)["summary"]["agree"], true, "{group}");
    }
    let out = torsion(&["gl-order", "--ring", "Fq", "--q", "2", "--r", "2", "--modulus", "1,1,1", "--verify"]);
    assert_eq!(json(&out)["rows"][0]["order"], "180");
}

#[test]
fn theta_is_printed_as_an_exact_rational() {
    let v = json(&torsion(&["theta", "--ring", "Z", "--modulus", "12"]));
    assert_eq!(v["rows"][0]["theta"], "3/1");
}

#[test]
fn empty_prime_list_is_not_an_error() {
    let v = json(&torsion(&["primes", "--ring", "Fq", "--q", "2", "--max-norm", "1"]));
    assert_eq!(v["rows"].as_array().unwrap().len(), 0);
}

#[test]
fn mertens_csv_header() {
    let out = torsion(&["mertens", "--max-n", "100", "--step", "10", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("n,product,log_n,ratio,lognorm_sum"));
    assert_eq!(text.lines().count(), 11);
}

#[test]
fn exit_codes() {
    assert_eq!(torsion(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(torsion(&["theta", "--ring", "Fq", "--modulus", "1,1"]).status.code(), Some(2));
    assert_eq!(torsion(&["primes", "--ring", "Fq", "--q", "6", "--max-norm", "9"]).status.code(), Some(2));
    assert_eq!(torsion(&["theta"]).status.code(), Some(2));
    let refused = torsion(&["gl-order", "--r", "3", "--modulus", "9", "--verify", "--budget", "1000"]);
    assert_eq!(refused.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&refused.stderr).contains("387420489"));
}

#[test]
fn simulate_is_independent_of_thread_count() {
    let base = ["simulate", "--modulus", "6", "--samples", "100", "--seed", "9"];
    let one = torsion(&[&base[..], &["--threads", "1"]].concat());
    let four = torsion(&[&base[..], &["--threads", "4"]].concat());
    assert!(one.status.success());
    assert_eq!(one.stdout, four.stdout);
    let v = json(&one);
    assert_eq!(v["meta"]["seed"], 9);
    assert_eq!(v["summary"]["argmax"], "trivial");
}

#[test]
fn cyclotomic_summary_names_the_argmax() {
    let v = json(&torsion(&["cyclotomic", "--max-n", "1000"]));
    assert_eq!(v["summary"]["argmax"], 60);
    assert_eq!(v["rows"].as_array().unwrap().len(), 1000);
}
