use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn hline(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hline"))
        .args(args)
        .env("HLINE_CACHE_DIR", cache)
        .env_remove("RUST_LOG")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn classify_examples() {
    let dir = tempfile::tempdir().unwrap();
    let c6 = json(&hline(dir.path(), &["classify", "C6", "--n", "4"]));
    assert_eq!(c6["outcome"], "Converged");
    assert_eq!(c6["N"], 0);

    let tailed = json(&hline(dir.path(), &["classify", "G(r=1,m=3)", "--n", "4"]));
    assert_eq!(tailed["outcome"], "Converged");
    assert_eq!(tailed["N"], 1);

    let f7 = json(&hline(dir.path(), &["classify", "F7", "--n", "6"]));
    assert_eq!(f7["outcome"], "DivergedByOrder");
    assert_eq!(f7["certificate"]["kind"], "Key1");
}

#[test]
fn graph_argument_formats_agree() {
    let dir = tempfile::tempdir().unwrap();
    let by_family = json(&hline(dir.path(), &["--no-cache", "classify", "C5", "--n", "4"]));
    let by_list = json(&hline(dir.path(), &["--no-cache", "classify", "5; 0-1,1-2,2-3,3-4,4-0", "--n", "4"]));
    let by_graph6 = json(&hline(dir.path(), &["--no-cache", "classify", "Dhc", "--n", "4"]));
    assert_eq!(by_family["input_code"], by_list["input_code"]);
    assert_eq!(by_family["input_code"], by_graph6["input_code"]);
    assert_eq!(by_graph6["outcome"], "Converged");
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let code = |args: &[&str]| hline(dir.path(), args).status.code();
    assert_eq!(code(&["--help"]), Some(0));
    assert_eq!(code(&["--version"]), Some(0));
    assert_eq!(code(&["classify", "C6"]), Some(1));
    assert_eq!(code(&["classify", "C6", "--n", "3"]), Some(1));
    assert_eq!(code(&["frobnicate"]), Some(1));
    assert_eq!(code(&["classify", "C2", "--n", "4"]), Some(2));
    assert_eq!(code(&["classify", "3; 0-0", "--n", "4"]), Some(2));
    assert_eq!(code(&["classify", "not a graph", "--n", "4"]), Some(2));
    assert_eq!(code(&["classify", "C6", "--n", "4", "--max-iter", "0"]), Some(0));
    assert_eq!(code(&["--strict", "classify", "C6", "--n", "4", "--max-iter", "0"]), Some(3));
    assert_eq!(code(&["--strict", "classify", "C6", "--n", "4"]), Some(0));
}

#[test]
fn parse_errors_carry_position() {
    let dir = tempfile::tempdir().unwrap();
    let out = hline(dir.path(), &["classify", "3; 0-1, 0-0", "--n", "4"]);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 1, column 9"), "{err}");
}

#[test]
fn family_prints_both_formats() {
    let dir = tempfile::tempdir().unwrap();
    let out = stdout(&hline(dir.path(), &["family", "C5"]));
    assert!(out.contains("edge-list: 5; 0-1, 0-4, 1-2, 2-3, 3-4"), "{out}");
    assert!(out.contains("graph6:    Dhc"), "{out}");
    assert_eq!(hline(dir.path(), &["family", "CL(0,1,1)"]).status.code(), Some(2));
}

#[test]
fn hl_prints_provenance() {
    let dir = tempfile::tempdir().unwrap();
    let out = stdout(&hline(dir.path(), &["hl", "P4", "--n", "4"]));
    assert!(out.contains("HL^1: order 3, size 2"), "{out}");
    assert!(out.contains("2  2-3"), "{out}");
}

#[test]
fn search_and_conjecture_reports() {
    let dir = tempfile::tempdir().unwrap();
    let search = json(&hline(dir.path(), &["search-min", "--n", "4", "--vmax", "5"]));
    assert_eq!(search["examined"], 30);
    assert!(search["expected"].as_array().unwrap().iter().all(|e| e["found_yes"] == true));

    let bridge = json(&hline(dir.path(), &["conjecture", "Bridge", "--n", "4", "--vmax", "5"]));
    assert_eq!(bridge["id"], "Bridge");
    assert_eq!(bridge["status"], "no-counterexample-within-bounds");
    assert_eq!(hline(dir.path(), &["conjecture", "Nope", "--n", "4", "--vmax", "5"]).status.code(), Some(1));
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let stats = |d: &Path| -> Value {
        let out = stdout(&hline(d, &["cache", "stats"]));
        serde_json::from_str(out.split_once('\n').unwrap().1).unwrap()
    };
    assert_eq!(stats(dir.path())["records"], 0);

    json(&hline(dir.path(), &["classify", "C6", "--n", "4"]));
    json(&hline(dir.path(), &["classify", "C6", "--n", "4"]));
    let s = stats(dir.path());
    assert_eq!(s["records"], 1, "a repeated query is answered from the cache");
    assert_eq!(s["current"], 1);

    json(&hline(dir.path(), &["--no-cache", "classify", "C7", "--n", "4"]));
    assert_eq!(stats(dir.path())["keys"], 1);

    json(&hline(dir.path(), &["search-min", "--n", "4", "--vmax", "4"]));
    let after_search = stats(dir.path())["records"].as_u64().unwrap();
    assert!(after_search > 1);
    json(&hline(dir.path(), &["search-min", "--n", "4", "--vmax", "4"]));
    assert_eq!(stats(dir.path())["records"].as_u64().unwrap(), after_search);

    let cleared = stdout(&hline(dir.path(), &["cache", "clear"]));
    assert!(cleared.starts_with("removed"), "{cleared}");
    assert_eq!(stats(dir.path())["records"], 0);
}
