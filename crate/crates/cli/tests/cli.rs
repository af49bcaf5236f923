use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_oc-mirror"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

#[test]
fn disk_csv_has_the_leading_row() {
    let o = run(&["disk", "--max-q", "4", "--max-mu", "2", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.starts_with("mu,q_power,t0_power,v_power,value\n"));
    assert!(s.lines().any(|l| l == "1,1,0,0,1/1"));
    assert!(s.lines().any(|l| l == "-1,1,0,0,-1/1"));
}

#[test]
fn disk_with_no_q_is_header_only() {
    let o = run(&["disk", "--max-q", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "mu,q_power,t0_power,v_power,value\n");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["disk", "--max-q", "many"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["check", "--format", "csv"]).status.code(), Some(2));
    assert_eq!(run(&["localize", "--degree", "4"]).status.code(), Some(2));
    assert_eq!(run(&["localize", "--degree", "1", "--class", "K"]).status.code(), Some(2));
    assert_eq!(run(&["asymptotics", "--z", "-1"]).status.code(), Some(2));
}

#[test]
fn help_exits_0() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn check_passes_on_the_default_window() {
    let o = run(&["check"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("PASS\n"));
}

#[test]
fn corrupted_exc_fails_with_exit_1() {
    let o = run(&["check", "--corrupt-exc", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let j: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(j["pass"], false);
    let diff = j["diff"].as_array().unwrap();
    assert!(!diff.is_empty());
    assert!(diff.iter().all(|e| e["V"] == -1));
}

#[test]
fn json_report_schema() {
    let o = run(&["check", "--format", "json", "--max-q", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let j: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let keys: Vec<&String> = j.as_object().unwrap().keys().collect();
    assert_eq!(keys, ["window", "pass", "diff"]);
    assert_eq!(j["window"]["maxQ"], 6);
    assert_eq!(j["window"]["minV"], -8);
    assert_eq!(j["diff"], serde_json::json!([]));
}

#[test]
fn localize_lists_graph_classes() {
    let o = run(&["localize", "--degree", "2", "--markings", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    let mut auts: Vec<&str> = s.lines().skip(1).map(|l| l.split(',').nth(3).unwrap()).collect();
    auts.sort();
    assert_eq!(auts, ["1", "2", "2"]);
}

#[test]
fn ifunction_has_the_third_component_row() {
    let o = run(&["ifunction", "--zcoeff", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.lines().any(|l| l == "I3,0,0,2,0,1/2"));
    assert!(s.lines().any(|l| l == "I3,1,1,0,0,1/1"));
}

#[test]
fn asymptotic_ratio_near_one() {
    let o = run(&["asymptotics", "--N", "1", "--l", "200"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    let row: Vec<&str> = s.lines().nth(1).unwrap().split(',').collect();
    let ratio: f64 = row[3].parse().unwrap();
    assert!((ratio - 1.0).abs() < 0.05);
}

#[test]
fn output_is_deterministic_and_can_go_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f.csv");
    let o = run(&["disk", "--output", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let written = std::fs::read(&path).unwrap();
    assert_eq!(written, run(&["disk"]).stdout);
    assert_eq!(run(&["rhs"]).stdout, run(&["rhs"]).stdout);
}

#[test]
fn thread_cap_is_honoured_and_validated() {
    let ok = Command::new(env!("CARGO_BIN_EXE_oc-mirror"))
        .args(["check", "--max-q", "4"])
        .env("OC_MIRROR_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let bad = Command::new(env!("CARGO_BIN_EXE_oc-mirror"))
        .arg("disk")
        .env("OC_MIRROR_THREADS", "0")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn rhs_without_exc_differs_from_disk() {
    let with = stdout(&run(&["rhs", "--max-q", "4"]));
    let without = stdout(&run(&["rhs", "--max-q", "4", "--no-exc"]));
    assert_ne!(with, without);
    assert!(with.lines().any(|l| l == "1,1,0,0,1/1"));
}
