use std::process::{Command, Output};

use serde_json::Value;

fn qosc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qosc")).args(args).env_remove("QOSC_THREADS").output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn relations_small_passes() {
    let out = qosc(&["relations", "--eps", "0100", "--r", "2", "--degree", "3", "--tensor-depth", "1", "--pol-degree", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema"], "qosc-report/v1");
    assert_eq!(v["passed"], true);
}

#[test]
fn reports_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let paths: Vec<_> = ["a.json", "b.json"].iter().map(|f| dir.path().join(f)).collect();
    for (p, threads) in paths.iter().zip(["1", "2"]) {
        let out = qosc(&["rmatrix", "--l", "1", "--m", "0", "--components", "2", "--depth", "4", "--threads", threads, "--out", p.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
    }
    assert_eq!(std::fs::read(&paths[0]).unwrap(), std::fs::read(&paths[1]).unwrap());
}

#[test]
fn kr_three_copies_of_w1_is_zero() {
    let out = qosc(&["kr", "--eps", "0000", "--r", "2", "--l", "1", "--s", "3", "--degree", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["data"]["zero_image"], true);
}

#[test]
fn failure_carries_witness() {
    // slot 9 does not exist
    let out = qosc(&["truncate", "--eps", "0000", "--remove", "9"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    let failed: Vec<&Value> = v["assertions"].as_array().unwrap().iter().filter(|a| a["passed"] == false).collect();
    assert!(!failed.is_empty());
    assert!(failed.iter().all(|a| !a["witness"].is_null()));
}

#[test]
fn usage_errors() {
    assert_eq!(qosc(&["relations", "--eps", "01x0"]).status.code(), Some(2));
    assert_eq!(qosc(&["nonsense"]).status.code(), Some(2));
    assert_eq!(qosc(&["rmatrix", "--l", "1"]).status.code(), Some(2));
    assert_eq!(qosc(&["kr", "--l", "1", "--s", "2", "--c", "q^"]).status.code(), Some(2));
}

#[test]
fn chars_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("ch.csv");
    let out = qosc(&["chars", "--l", "0", "--l", "-1", "--degree", "2", "--csv", csv.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(csv).unwrap();
    let mut rows = text.lines();
    assert_eq!(rows.next(), Some("l,coefficient,monomial"));
    let ls: Vec<&str> = rows.map(|r| r.split(',').next().unwrap()).collect();
    assert!(ls.contains(&"0") && ls.contains(&"-1"));
}

#[test]
fn drinfeld_reports_sign_map() {
    let out = qosc(&["drinfeld", "--n", "4", "--l", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["params"]["sign_map"], "o(i) = (-1)^i");
}
