use std::process::{Command, Output};

use serde_json::Value;

fn propmod(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_propmod"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = propmod(&all);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

const WORKED: [&str; 6] = ["--f", "3,-2", "--g", "1,-3", "--b", "11"];
const FROB: [&str; 6] = ["--f", "3,2", "--g", "1,-1", "--b", "10"];

fn with(cmd: &[&str], ineq: &[&str]) -> Vec<String> {
    cmd.iter().chain(ineq).map(|s| s.to_string()).collect()
}

fn refs(v: &[String]) -> Vec<&str> {
    v.iter().map(String::as_str).collect()
}

#[test]
fn exit_codes() {
    assert_eq!(propmod(&refs(&with(&["gens"], &WORKED))).status.code(), Some(0));
    // Outside the hypothesis of the Frobenius computation.
    let out = propmod(&["frobenius", "--f", "1,1", "--g", "-1,-2", "--b", "3"]);
    assert_eq!(out.status.code(), Some(1));
    for bad in [
        vec!["gens", "--f", "3,-2", "--g", "1,-3", "--b", "0"],
        vec!["gens", "--f", "3,-2", "--g", "1", "--b", "11"],
        vec!["gens", "--f", "x", "--g", "1,-3", "--b", "11"],
        vec!["gens", "--f", "1,2,3", "--g", "1,1,1", "--b", "3"],
        vec!["gens", "--f", "3,-2", "--g", "1,-3", "--b", "11", "--trace"],
        vec!["frobnicate"],
    ] {
        assert_eq!(propmod(&bad).status.code(), Some(2), "{bad:?}");
    }
}

#[test]
fn membership() {
    let out = propmod(&refs(&with(&["membership", "--point", "9,1"], &FROB)));
    assert_eq!(stdout(&out).trim(), "false");
    let v = json(&refs(&with(&["membership", "--point", "11,3"], &FROB)));
    assert_eq!(v["member"], Value::Bool(false));
    let v = json(&refs(&with(&["membership", "--point", "3,1"], &FROB)));
    assert_eq!(v["member"], Value::Bool(true));
}

#[test]
fn input_file_matches_flags() {
    let dir = std::env::temp_dir().join(format!("propmod-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("ineq.json");
    std::fs::write(&path, r#"{"f": [3, -2], "g": [1, -3], "b": 11}"#).unwrap();
    let from_file = json(&["gens", "--input", path.to_str().unwrap()]);
    let from_flags = json(&refs(&with(&["gens"], &WORKED)));
    assert_eq!(from_file, from_flags);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn deterministic_and_formats_agree() {
    let args = with(&["gens"], &WORKED);
    let a = propmod(&refs(&args));
    let b = propmod(&refs(&args));
    assert_eq!(a.stdout, b.stdout);

    let text: Vec<String> = stdout(&a).lines().map(str::to_string).collect();
    let v = json(&refs(&args));
    let from_json: Vec<String> = v["generators"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| format!("({}, {})", p[0], p[1]))
        .collect();
    assert_eq!(text, from_json);
    assert_eq!(text.len(), 13);
}

#[test]
fn general_method_and_trace() {
    let geo = json(&refs(&with(&["gens"], &WORKED)));
    let gen = json(&refs(&with(&["gens", "--method", "general"], &WORKED)));
    assert_eq!(geo["generators"], gen["generators"]);
    let t = json(&refs(&with(&["gens", "--method", "general", "--trace"], &WORKED)));
    assert_eq!(t["generators"], geo["generators"]);
    assert!(!t["trace"]["mdk"].as_array().unwrap().is_empty());
    let three = json(&["gens", "--method", "general", "--f", "5,2,1", "--g", "3,1,-4", "--b", "4"]);
    assert_eq!(three["generators"].as_array().unwrap().len(), 16);
}

#[test]
fn frobenius_and_apery() {
    let v = json(&refs(&with(&["frobenius"], &FROB)));
    assert_eq!(v["minimal"], serde_json::json!([[9, 1]]));
    let a = json(&refs(&with(&["apery"], &FROB)));
    assert_eq!(a["maximal_elements"], serde_json::json!([[13, 1]]));
    let p = json(&refs(&with(&["properties"], &WORKED)));
    assert_eq!(p["cohen_macaulay"], Value::Bool(true));
    assert_eq!(p["gorenstein"], Value::Bool(false));
}

#[test]
fn oracle_agrees_with_solver() {
    let brute = json(&refs(&with(&["oracle", "frobenius", "--window", "40"], &FROB)));
    assert_eq!(brute, serde_json::json!([[9, 1]]));
    let members = json(&refs(&with(&["oracle", "members", "--window", "5"], &FROB)));
    assert!(members.as_array().unwrap().contains(&serde_json::json!([2, 2])));
    assert!(!members.as_array().unwrap().contains(&serde_json::json!([1, 1])));
    let gens = json(&refs(&with(&["oracle", "gens", "--window", "40"], &WORKED)));
    let solver = json(&refs(&with(&["gens"], &WORKED)));
    assert_eq!(gens, solver["generators"]);
}

#[test]
fn solve_system() {
    let v = json(&["solve", "--eq", "1,-3:0", "--cong", "3,-2:0:11"]);
    assert_eq!(v["points"], serde_json::json!([[33, 11]]));
    assert_eq!(v["homogeneous"], Value::Bool(true));
    let text = propmod(&["solve", "--eq", "1,-3:0", "--cong", "3,-2:0:11"]);
    assert_eq!(stdout(&text).trim(), "(33, 11)");
    assert_eq!(propmod(&["solve"]).status.code(), Some(2));
}
