use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

const T2: &str = r#"{"vertices": [[0,0],[1,0],[0,1]]}"#;

fn ltensor(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_ltensor"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn ehrhart_of_the_standard_triangle() {
    let out = ltensor(&["ehrhart", "-r", "0"], T2);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out), serde_json::json!(["1", "3/2", "1/2"]));
}

#[test]
fn ehrhart_tensors_at_rank_one() {
    let out = ltensor(&["ehrhart", "-r", "1"], T2);
    let v = json(&out);
    assert_eq!(v.as_array().unwrap().len(), 4);
    assert_eq!(v[0], serde_json::json!({"dim": 2, "rank": 1, "coords": {}}));
    assert_eq!(v[3]["coords"]["1,0"], "1/6");
}

#[test]
fn reciprocity_passes_on_a_dilate() {
    let out = ltensor(
        &["reciprocity", "-r", "0"],
        r#"{"vertices": [[0,0],[3,0],[0,3]]}"#,
    );
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["passed"], true);
    assert_eq!(v["relint"]["coords"]["0,0"], "1");
    assert!(v["counterexample"].is_null());
}

#[test]
fn prism_rank_has_trivial_kernel() {
    let out = ltensor(&["rank", "--n", "3", "--r", "4"], "");
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["kernel_dim"], 0);
}

#[test]
fn planar_rank_reports_kernel() {
    let out = ltensor(&["rank", "--r", "3", "--kernel"], "");
    let v = json(&out);
    assert_eq!(v["rank"], 3);
    assert_eq!(v["kernel"].as_array().unwrap().len(), 1);
}

#[test]
fn counts_and_moments() {
    let square = r#"{"vertices": [[0,0],[2,0],[0,2],[2,2]]}"#;
    let out = ltensor(&["count"], square);
    assert_eq!(json(&out), serde_json::json!({"closed": 9, "relint": 1}));
    let out = ltensor(&["tensor", "-r", "1"], square);
    assert_eq!(json(&out)["coords"]["1,0"], "9");
}

#[test]
fn covariance_and_equivariance_pass() {
    let out = ltensor(&["covariance", "-r", "2", "--shift", "1,-2"], T2);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["passed"], true);
    let out = ltensor(&["equivariance", "-r", "2", "--matrix", "2,1;1,1"], T2);
    assert_eq!(out.status.code(), Some(0));
    let out = ltensor(
        &["equivariance", "-r", "1", "--trials", "3", "--seed", "9"],
        T2,
    );
    assert_eq!(json(&out)["trials"].as_array().unwrap().len(), 3);
}

#[test]
fn nval_is_triangulation_independent() {
    let out = ltensor(
        &["nval", "--check-independence", "4", "--seed", "2"],
        r#"{"vertices": [[0,0],[3,0],[1,2],[0,2]]}"#,
    );
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["independence"]["passed"], true);
    assert_eq!(v["n"]["rank"], 9);
    let square = ltensor(&["nval"], r#"{"vertices": [[0,0],[1,0],[0,1],[1,1]]}"#);
    assert_eq!(json(&square)["n"]["coords"], serde_json::json!({}));
}

#[test]
fn survey_is_csv() {
    let out = ltensor(&["rank", "--survey", "9,11"], "");
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[0].starts_with("r,unknowns,"));
    assert!(lines[1].starts_with("9,10,"));
    assert!(lines[1].ends_with(",8,8,true"));
}

#[test]
fn reads_a_file_argument() {
    let path = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("square.json");
    std::fs::write(&path, r#"{"vertices": [[0,0],[1,0],[0,1],[1,1]]}"#).unwrap();
    let out = ltensor(&["count", path.to_str().unwrap()], "");
    assert_eq!(json(&out), serde_json::json!({"closed": 4, "relint": 0}));
}

#[test]
fn malformed_input_exits_with_two() {
    for (args, input) in [
        (vec!["count"], "not json"),
        (vec!["count"], r#"{"vertices": [[0,0],[1]]}"#),
        (vec!["count"], r#"{"vertices": []}"#),
        (vec!["ehrhart", "-r", "13"], T2),
        (vec!["nval"], r#"{"vertices": [[0],[1]]}"#),
        (vec!["equivariance", "--matrix", "1,1;1,1"], T2),
        (vec!["covariance", "--shift", "1,2,3"], T2),
        (vec!["rank", "--n", "8", "--r", "20"], ""),
        (vec!["rank", "--survey", "21"], ""),
        (vec!["count"], r#"{"vertices": [[0,0,0,0,0,0,0]]}"#),
    ] {
        let out = ltensor(&args, input);
        assert_eq!(out.status.code(), Some(2), "{args:?} on {input}");
        assert!(out.stdout.is_empty());
        assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
    }
}

#[test]
fn output_is_reproducible() {
    let args = ["equivariance", "-r", "2", "--trials", "4", "--seed", "11"];
    let a = ltensor(&args, T2);
    let b = ltensor(&args, T2);
    assert_eq!(a.stdout, b.stdout);
}
