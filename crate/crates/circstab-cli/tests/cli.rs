use serde_json::Value;
use std::path::PathBuf;
use std::process::{Command, Output};

fn circstab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_circstab")).args(args).env_remove("CIRCSTAB_NODE_BUDGET").output().expect("binary runs")
}

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden/v1").join(name)
}

/// Compares stdout with a golden file; CIRCSTAB_UPDATE_GOLDEN=1 rewrites it.
fn assert_golden(args: &[&str], name: &str) -> String {
    let out = circstab(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8(out.stdout).unwrap();
    if std::env::var_os("CIRCSTAB_UPDATE_GOLDEN").is_some() {
        std::fs::write(golden(name), &stdout).unwrap();
    }
    let expected = std::fs::read_to_string(golden(name)).unwrap();
    assert_eq!(stdout, expected, "{name}");
    stdout
}

fn json_lines(s: &str) -> Vec<Value> {
    s.lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn classify_condition_ii_instance() {
    let out = assert_golden(&["classify", "10", "1,2,8,9", "--mode", "cross-check"], "classify_10_1,2,8,9.json");
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["status"], "nontrivially-unstable");
    assert_eq!(v["reason"], "condition-ii");
    assert_eq!(v["witness"]["l"], 3);
    assert_eq!(v["agreement"], true);
    assert_eq!(v["cover_aut_order"], 80);
}

#[test]
fn classify_prism_is_stable() {
    let out = assert_golden(&["classify", "6", "2,3,4", "--mode", "cross-check"], "classify_6_2,3,4.json");
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!((v["status"].as_str(), v["aut_order"].as_u64(), v["cover_aut_order"].as_u64()), (Some("stable"), Some(12), Some(24)));
}

#[test]
fn classify_criteria_reports_twins() {
    let out = assert_golden(&["classify", "10", "1,4,6,9", "--mode", "criteria"], "classify_10_1,4,6,9_criteria.json");
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!((v["reason"].as_str(), v["witness"]["h"].as_u64()), (Some("non-reduced"), Some(5)));
}

#[test]
fn classify_rejects_asymmetric_sets() {
    let out = circstab(&["classify", "6", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert_eq!(circstab(&["classify", "6", "1,x"]).status.code(), Some(2));
    assert_eq!(circstab(&["classify", "65", "1,64"]).status.code(), Some(2));
}

#[test]
fn survey_of_six() {
    let out = assert_golden(&["survey", "--n", "6", "--all-sets"], "survey_n6_all.jsonl");
    let records = json_lines(&out);
    let find = |set: &[u64]| records.iter().find(|r| r["set"] == serde_json::json!(set)).cloned().unwrap();
    assert_eq!(find(&[2, 3, 4])["status"], "stable");
    let twin = find(&[1, 2, 4, 5]);
    assert_eq!((twin["status"].as_str(), twin["witness"]["h"].as_u64()), (Some("trivially-unstable"), Some(3)));
    assert!(records.iter().all(|r| r["agreement"] == true));
}

#[test]
fn survey_of_ten() {
    let out = assert_golden(&["survey", "--n", "10", "--all-sets"], "survey_n10_all.jsonl");
    let records = json_lines(&out);
    assert_eq!(records.len(), 21);
    assert!(records.iter().all(|r| r["agreement"] == true));
    let unstable: Vec<&Value> = records.iter().filter(|r| r["status"] == "nontrivially-unstable").collect();
    assert_eq!(unstable.len(), 2);
}

#[test]
fn sampled_survey_is_reproducible_across_thread_counts() {
    let out = assert_golden(&["survey", "--n", "22", "--sample", "20", "--seed", "7"], "survey_n22_sample20_seed7.jsonl");
    let again = circstab(&["survey", "--n", "22", "--sample", "20", "--seed", "7", "--parallel", "3"]);
    assert_eq!(String::from_utf8(again.stdout).unwrap(), out);
    let other = circstab(&["survey", "--n", "22", "--sample", "20", "--seed", "8"]);
    assert_ne!(String::from_utf8(other.stdout).unwrap(), out);
}

#[test]
fn survey_summary_goes_to_stderr() {
    let out = circstab(&["survey", "--n", "6", "--all-sets"]);
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("instances 3  agree 3"), "{err}");
}

#[test]
fn survey_timing_is_opt_in() {
    let out = circstab(&["survey", "--n", "6", "--all-sets", "--timing"]);
    assert!(json_lines(&String::from_utf8(out.stdout).unwrap()).iter().all(|r| r["elapsed_ms"].is_number()));
}

#[test]
fn survey_outside_the_proven_range_reports_without_failing() {
    let out = circstab(&["survey", "--n", "12", "--all-sets"]);
    assert_eq!(out.status.code(), Some(0));
    let records = json_lines(&String::from_utf8(out.stdout).unwrap());
    let open: Vec<&Value> = records.iter().filter(|r| r["agreement"] == false).collect();
    assert!(!open.is_empty());
    assert!(open.iter().any(|r| r["set"] == serde_json::json!([1, 3, 5, 6, 7, 9, 11])));
}

#[test]
fn survey_input_errors() {
    assert_eq!(circstab(&["survey", "--n", "30", "--all-sets"]).status.code(), Some(2));
    assert_eq!(circstab(&["survey", "--n", "6"]).status.code(), Some(2));
    assert_eq!(circstab(&["survey", "--n", "6", "--all-sets", "--sample", "2"]).status.code(), Some(2));
}

#[test]
fn even_squarefree_range() {
    let out = circstab(&["survey", "--even-squarefree-upto", "10", "--all-sets"]);
    let records = json_lines(&String::from_utf8(out.stdout).unwrap());
    let mut moduli: Vec<u64> = records.iter().map(|r| r["n"].as_u64().unwrap()).collect();
    moduli.dedup();
    assert_eq!(moduli, [6, 10]);
}

#[test]
fn node_budget_from_the_environment() {
    let run = |budget: &str| {
        Command::new(env!("CARGO_BIN_EXE_circstab"))
            .args(["classify", "10", "1,2,8,9"])
            .env("CIRCSTAB_NODE_BUDGET", budget)
            .output()
            .unwrap()
            .status
            .code()
    };
    assert_eq!(run("1"), Some(4));
    assert_eq!(run("many"), Some(2));
    assert_eq!(run("1000000"), Some(0));
}

#[test]
fn verify_cohomology_suite() {
    let out = circstab(&["verify", "--suite", "cohomology"]);
    assert_eq!(out.status.code(), Some(0));
    let checks = json_lines(&String::from_utf8(out.stdout).unwrap());
    assert!(checks.len() >= 20);
    assert!(checks.iter().all(|c| c["passed"] == true && c["suite"] == "cohomology"));
    assert!(checks.iter().any(|c| c["name"] == "H1 T2 on P1(F4)"));
}

#[test]
fn verify_rejects_unknown_suites() {
    assert_eq!(circstab(&["verify", "--suite", "nope"]).status.code(), Some(2));
}

#[test]
fn conjecture_probe_reports() {
    let out = assert_golden(&["conjecture-probe", "--n", "18"], "probe_n18.json");
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["explained_by_condition_i"], v["unstable"]);
    let empty = circstab(&["conjecture-probe"]);
    let v: Value = serde_json::from_slice(&empty.stdout).unwrap();
    assert_eq!((v["instances"].as_u64(), v["anomalies"].as_array().map(Vec::len)), (Some(0), Some(0)));
    assert_eq!(circstab(&["conjecture-probe", "--n", "12"]).status.code(), Some(2));
}
