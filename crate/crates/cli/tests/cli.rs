use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_iomdin")).args(args).current_dir(root()).output().expect("binary runs")
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = run(&all);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)));
    (v, out.status.code().unwrap())
}

#[test]
fn le_of_the_cylinder() {
    let (v, code) = json(&["le", "--vars", "x,y,z", "--g", "x^2+y^2", "--l", "z"]);
    assert_eq!(code, 0);
    assert_eq!((v["le"]["lambda0"].as_u64(), v["le"]["lambda1"].as_u64()), (Some(0), Some(1)));
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["input"]["limits"]["max_steps"], 1_000_000);
    assert_eq!(v["input"]["N"], serde_json::json!([2, 8]));
}

#[test]
fn verify_cylinder_file() {
    let (v, code) = json(&["verify", "fixtures/cylinder.json", "--N", "2..8"]);
    assert_eq!(code, 0);
    assert_eq!(v["pass"], true);
    let rows = v["sweep"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 7);
    for r in rows {
        for verdict in r["verdicts"].as_array().unwrap() {
            assert_ne!(verdict["status"], "FAIL", "{verdict}");
        }
    }
}

#[test]
fn nonisolated_milnor_is_an_error() {
    let out = run(&["milnor", "--vars", "x,y", "--g", "x^2*y"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("NONISOLATED"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["milnor", "fixtures/cylinder.json", "--g", "x"]).status.code(), Some(2));
    assert_eq!(run(&["milnor", "--g", "x^2"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--fixture", "cylinder", "--caps", "speed=3"]).status.code(), Some(2));
}

#[test]
fn negative_fixture_fails_with_witness() {
    let (v, code) = json(&["verify", "--fixture", "negative/theorem-violation"]);
    assert_eq!(code, 1);
    let main = v["stratified"].as_array().unwrap().iter().find(|v| v["identity"] == "main-theorem").unwrap();
    assert_eq!((main["status"].as_str(), main["left"].as_i64(), main["right"].as_i64()), (Some("FAIL"), Some(4), Some(3)));
}

#[test]
fn json_is_byte_identical_across_runs_and_jobs() {
    let a = run(&["verify", "--fixture", "three-lines", "--format", "json", "--jobs", "1"]);
    let b = run(&["verify", "--fixture", "three-lines", "--format", "json", "--jobs", "4"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let c = run(&["gap", "--fixture", "brieskorn-2-3-4", "--format", "json"]);
    let d = run(&["gap", "--fixture", "brieskorn-2-3-4", "--format", "json"]);
    assert_eq!(c.stdout, d.stdout);
}

#[test]
fn exported_dataset_verifies() {
    let out = run(&["export-dataset", "--fixture", "cylinder", "--N", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let dir = std::env::temp_dir().join(format!("iomdin-export-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("cylinder-3.json");
    std::fs::write(&path, &out.stdout).unwrap();
    let (v, code) = json(&["verify", path.to_str().unwrap()]);
    std::fs::remove_dir_all(&dir).unwrap();
    assert_eq!(code, 0, "{v}");
    let main = v["stratified"].as_array().unwrap().iter().find(|v| v["identity"] == "main-theorem").unwrap();
    assert_eq!((main["left"].as_i64(), main["right"].as_i64()), (Some(3), Some(3)));
    assert_eq!(run(&["export-dataset", "--fixture", "cylinder"]).status.code(), Some(1));
}

#[test]
fn fixtures_verb() {
    let list = run(&["fixtures"]);
    let names = String::from_utf8(list.stdout).unwrap();
    assert!(names.lines().any(|l| l == "cusp-curve"));
    assert_eq!(run(&["fixtures", "--check"]).status.code(), Some(0));
    assert_eq!(run(&["fixtures", "no-such-fixture"]).status.code(), Some(1));
    let (v, _) = json(&["fixtures", "brieskorn-2-2-3"]);
    assert_eq!(v["g"], "z^3 + x^2 + y^2");
}

#[test]
fn brasselet_of_the_cusp() {
    let (v, code) = json(&["brasselet", "--fixture", "cusp-curve"]);
    assert_eq!(code, 0);
    assert_eq!(v["euler_obstruction"]["X"], 2);
    let out = run(&["brasselet", "--fixture", "cusp-curve", "--slice", "g-fibre"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("MISSING-SLICE"));
}

#[test]
fn critical_locus_and_polar() {
    let (v, code) = json(&["critical-locus", "--vars", "x,y,z", "--g", "x*y*z"]);
    assert_eq!(code, 0);
    assert_eq!(v["dim"], 1);
    assert_eq!(v["branches"].as_array().unwrap().len(), 3);
    let (v, code) = json(&["polar", "--vars", "x,y,z", "--g", "x^2+y^2", "--f", "z"]);
    assert_eq!(code, 0);
    assert_eq!(v["empty"], true);
    let (v, _) = json(&["gap", "--vars", "x,y,z", "--g", "x^2+y^2+z^3", "--f", "z"]);
    assert_eq!(v["threshold"], 4);
}
