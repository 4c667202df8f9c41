use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn kops(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kops")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json_of(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

const BINARY_X1: &str = r#"{"dimension":1,"ranks":{"0":1,"1":1},
 "differentials":{"d":{"1":{"rows":1,"cols":1,"entries":[[1]]}},
                  "d_tilde":{"1":{"rows":1,"cols":1,"entries":[[-1]]}}}}"#;

const DIAGONAL: &str = r#"{"dimension":1,"ranks":{"0":1,"1":1},
 "differentials":{"d":{"1":{"rows":1,"cols":1,"entries":[[1]]}}}}"#;

#[test]
fn counterexample_reproduces() {
    let o = kops(&["--format", "json", "reproduce", "ex-counterexample"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_of(&o);
    assert_eq!(v["overall"], "pass");
    assert!(v["records"].as_array().unwrap().iter().any(|r| r["computed"] == "Z/2"));
}

#[test]
fn invertible_example_single_case() {
    let o = kops(&["--format", "json", "reproduce", "ex-invertible", "--r", "3", "--x", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_of(&o);
    let recs = v["records"].as_array().unwrap();
    assert_eq!(recs.len(), 1);
    assert_eq!(recs[0]["computed"], "ranks {3:1 2:1} d3=5");
    assert_eq!(recs[0]["expected_from"], "worked example");
}

#[test]
fn reproduce_all_passes() {
    let o = kops(&["--seed", "7", "reproduce", "all"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("seed 7"));
}

#[test]
fn unknown_target_is_an_input_error() {
    assert_eq!(kops(&["reproduce", "ex-nothing"]).status.code(), Some(2));
}

#[test]
fn derive_exterior_square_of_binary_example() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "in.json", BINARY_X1);
    let o = kops(&["--format", "json", "derive", &input, "--spec", "L2"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_of(&o);
    let ranks = v["complex"]["ranks"].as_object().unwrap();
    let mut degrees: Vec<&str> = ranks.keys().map(String::as_str).collect();
    degrees.sort();
    assert_eq!(degrees, ["1", "2"]);
    assert_eq!(v["verification"]["acyclic"], true);
    assert_eq!(v["verification"]["length"], 2);
    assert_eq!(v["verification"]["bound"], 2);
}

#[test]
fn derive_writes_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "in.json", DIAGONAL);
    let out = dir.path().join("out.json");
    let o = kops(&["--format", "json", "--output", out.to_str().unwrap(), "derive", &input, "--spec", "S2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(v["verification"]["acyclic"], true);
}

#[test]
fn malformed_input_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", "{\"dimension\": 1, \"ranks\": ");
    let o = kops(&["derive", &bad, "--spec", "L2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
    let good = write(dir.path(), "in.json", BINARY_X1);
    assert_eq!(kops(&["derive", &good, "--spec", "L2@"]).status.code(), Some(2));
    assert_eq!(kops(&["derive", &good, "--spec", "L2", "--level", "2"]).status.code(), Some(2));
    assert_eq!(kops(&["homology", "/nonexistent/file.json"]).status.code(), Some(2));
}

#[test]
fn homology_reports_each_choice() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "in.json", BINARY_X1);
    let v = json_of(&kops(&["--format", "json", "homology", &input]));
    let choices = v["choices"].as_array().unwrap();
    assert_eq!(choices.len(), 2);
    assert!(choices.iter().all(|c| c["acyclic"] == true));
}

#[test]
fn witness_round_trip_and_tamper() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "in.json", BINARY_X1);
    let w = dir.path().join("w.json");
    let w = w.to_str().unwrap();
    let o = kops(&["--output", w, "witness", "gen", "--kind", "shift", &input, "--k", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let o = kops(&["witness", "check", w]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).starts_with("valid"));

    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(w).unwrap()).unwrap();
    let objects = v["objects"].as_array_mut().unwrap();
    let (idx, obj) = objects
        .iter_mut()
        .enumerate()
        .find(|(_, o)| o["differentials"]["d"].as_object().is_some_and(|d| d.len() >= 2))
        .expect("an object of length two");
    let d = obj["differentials"]["d"].as_object_mut().unwrap();
    let key = d.keys().max().unwrap().clone();
    let e = &mut d[&key]["entries"][0][0];
    *e = Value::from(e.as_i64().unwrap() + 7);
    let t = write(dir.path(), "t.json", &serde_json::to_string(&v).unwrap());
    let o = kops(&["--format", "json", "witness", "check", &t]);
    assert_eq!(o.status.code(), Some(1));
    let r = json_of(&o);
    assert_eq!(r["valid"], false);
    let failures: Vec<String> = r["failures"].as_array().unwrap().iter().map(|m| m.as_str().unwrap().to_string()).collect();
    assert!(failures.iter().any(|m| m.contains(&format!("object #{idx}"))), "{failures:?}");
}

#[test]
fn non_acyclic_shift_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let text = BINARY_X1.replace("[[1]]", "[[2]]").replace("[[-1]]", "[[3]]");
    let input = write(dir.path(), "in.json", &text);
    assert_eq!(kops(&["witness", "gen", "--kind", "shift", &input]).status.code(), Some(2));
}

#[test]
fn product_of_diagonal_pair_is_one_witness() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.json", DIAGONAL);
    let w = dir.path().join("p.json");
    let w = w.to_str().unwrap();
    let o = kops(&["--output", w, "witness", "gen", "--kind", "product", &a, &a]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_of(&kops(&["--format", "json", "witness", "check", w]));
    assert_eq!(v["valid"], true);
    assert_eq!(v["sequences"], 0);
    assert_eq!(v["diagonal"], 1);
    assert_eq!(kops(&["witness", "gen", "--kind", "product", &a]).status.code(), Some(2));
}

#[test]
fn plethysm_p22() {
    let o = kops(&["plethysm", "2", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "P_{2,2} = X1*X3 - X4");
    let v = json_of(&kops(&["--format", "json", "plethysm", "2", "2"]));
    assert_eq!(v["terms"].as_array().unwrap().len(), 2);
    assert_eq!(kops(&["plethysm", "0", "2"]).status.code(), Some(2));
}

#[test]
fn lambda_check_bounds() {
    let o = kops(&["--format", "json", "lambda-check", "--max-degree", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json_of(&o)["passed"], true);
    assert_eq!(kops(&["lambda-check", "--max-degree", "9"]).status.code(), Some(2));
}

#[test]
fn selftest_is_seeded() {
    let a = json_of(&kops(&["--seed", "3", "--format", "json", "selftest", "--rounds", "2"]));
    let b = json_of(&kops(&["--seed", "3", "--format", "json", "selftest", "--rounds", "2"]));
    assert_eq!(a["overall"], "pass");
    assert_eq!(a["records"], b["records"]);
}
