//! Acceptance criterion 9: golden-file runs of every subcommand on the worked
//! examples, plus the exit-code contract (0 ok, 1 parse, 2 semantic, 3 oracle
//! disagreement via the corruption hook).

use std::path::PathBuf;
use std::process::{Command, Output};
use std::str::FromStr;

use num::BigRational;
use serde_json::Value;

fn data(file: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(file)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mdc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_ok(args: &[&str]) -> Value {
    let out = run(args);
    assert!(
        out.status.success(),
        "expected success, got {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("report is JSON")
}

fn strings(v: &Value) -> Vec<&str> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|s| s.as_str().unwrap())
        .collect()
}

#[test]
fn decompose_golden() {
    let input = data("scalar.json");
    let report = run_ok(&[
        "decompose",
        "--input",
        input.to_str().unwrap(),
        "--minimal-support",
    ]);
    assert_eq!(report["command"], "decompose");
    assert_eq!(strings(&report["support"]), ["a1", "a2"]);
    assert_eq!(strings(&report["minimal_support"]), ["a1"]);
    assert_eq!(strings(&report["atomic"]["values"]), ["1", "0", "0"]);
    assert_eq!(strings(&report["diffuse"]["values"]), ["0", "0", "2"]);
}

#[test]
fn decompose_report_round_trips() {
    let input = data("scalar.json");
    let report = run_ok(&["decompose", "--input", input.to_str().unwrap()]);
    let parse = |v: &Value| -> Vec<BigRational> {
        strings(v)
            .iter()
            .map(|s| BigRational::from_str(s).unwrap())
            .collect()
    };
    let atomic = parse(&report["atomic"]["values"]);
    let diffuse = parse(&report["diffuse"]["values"]);
    let original = parse(&report["input"]["measures"]["mu"]["values"]);
    let summed: Vec<BigRational> = atomic
        .iter()
        .zip(&diffuse)
        .map(|(a, d)| a + d)
        .collect();
    assert_eq!(summed, original);
}

#[test]
fn hahn_jordan_golden() {
    let input = data("hahn.json");
    let report = run_ok(&["hahn-jordan", "--input", input.to_str().unwrap()]);
    assert_eq!(strings(&report["positive_set"]), ["a1", "a3", "a4"]);
    assert_eq!(strings(&report["plus"]["values"]), ["3", "0", "2", "0"]);
    assert_eq!(strings(&report["minus"]["values"]), ["0", "1", "0", "0"]);
    assert_eq!(report["norm"], "6");

    // A positive measure has vanishing negative part.
    let report = run_ok(&["hahn-jordan", "--input", data("scalar.json").to_str().unwrap()]);
    assert!(strings(&report["minus"]["values"]).iter().all(|v| *v == "0"));
}

#[test]
fn lebesgue_golden() {
    let input = data("lebesgue.json");
    let report = run_ok(&["lebesgue", "--input", input.to_str().unwrap(), "--wrt", "nu"]);
    assert_eq!(
        strings(&report["absolutely_continuous"]["values"]),
        ["0", "2", "0", "0"]
    );
    assert_eq!(strings(&report["singular"]["values"]), ["1", "0", "0", "3"]);
    assert_eq!(strings(&report["density"]), ["0", "2/5", "0", "0"]);
}

#[test]
fn line_golden() {
    let input = data("line.json");
    let report = run_ok(&["atomic-diffuse", "--input", input.to_str().unwrap()]);
    assert_eq!(strings(&report["atomic"]["densities"]), ["0", "0", "0"]);
    assert_eq!(report["atomic"]["atoms"][0]["weight"], "1");
    assert_eq!(strings(&report["diffuse"]["densities"]), ["0", "2", "0"]);
    assert_eq!(report["diffuse"]["atoms"].as_array().unwrap().len(), 0);

    let report = run_ok(&["support", "--input", input.to_str().unwrap()]);
    assert_eq!(report["intervals"][0][0], "1/3");
    assert_eq!(report["intervals"][0][1], "2/3");
    assert_eq!(strings(&report["points"]), ["5/6"]);
}

#[test]
fn vector_golden() {
    let input = data("vector.json");
    let report = run_ok(&["vector", "--input", input.to_str().unwrap()]);
    assert_eq!(strings(&report["support"]), ["a1", "a2"]);
    assert_eq!(strings(&report["control"]["values"]), ["1", "1", "0"]);
    assert_eq!(strings(&report["atomic"]["vector"][1]), ["0", "-1"]);
    assert_eq!(strings(&report["diffuse"]["vector"][1]), ["0", "0"]);
}

#[test]
fn spectral_golden() {
    let input = data("spectral.json");
    let report = run_ok(&["spectral", "--input", input.to_str().unwrap()]);
    assert_eq!(strings(&report["support"]), ["1"]);
    assert_eq!(strings(&report["control"]["values"]), ["3/16", "1/32"]);
    // The atomic part keeps the projection for outcome 1, the diffuse part
    // the one for outcome 2.
    assert_eq!(report["atomic"]["projections"][0][0][0][0], "1");
    assert_eq!(report["atomic"]["projections"][1][2][2][0], "0");
    assert_eq!(report["diffuse"]["projections"][1][2][2][0], "1");
}

#[test]
fn check_exits_zero_on_worked_examples() {
    for file in ["scalar.json", "lebesgue.json", "hahn.json", "line.json", "vector.json", "spectral.json"] {
        let input = data(file);
        let report = run_ok(&["check", "--input", input.to_str().unwrap(), "--seed", "7"]);
        assert_eq!(report["ok"], true, "checks failed for {file}");
    }
}

#[test]
fn check_exits_three_when_corrupted() {
    for file in ["scalar.json", "vector.json", "spectral.json"] {
        let out = Command::new(env!("CARGO_BIN_EXE_mdc"))
            .args(["check", "--input", data(file).to_str().unwrap()])
            .env("MDC_TEST_CORRUPT", "1")
            .output()
            .expect("binary runs");
        assert_eq!(out.status.code(), Some(3), "expected exit 3 for {file}");
        // The report still appears, with both results.
        let report: Value = serde_json::from_slice(&out.stdout).expect("report is JSON");
        assert_eq!(report["ok"], false);
        let failed = report["checks"]
            .as_array()
            .unwrap()
            .iter()
            .find(|c| c["pass"] == false)
            .expect("a failed check is reported");
        assert!(failed["expected"] != failed["actual"]);
    }
}

#[test]
fn exit_codes_for_bad_input() {
    // Unparseable rational: exit 1.
    let out = run(&["decompose", "--input", data("bad.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));

    // Missing file: exit 1.
    let out = run(&["decompose", "--input", "/nonexistent.json"]);
    assert_eq!(out.status.code(), Some(1));

    // Semantic error: decompose without a family declaration.
    let out = run(&["decompose", "--input", data("hahn.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    // Semantic error: line subcommand on a finite-space file.
    let out = run(&["support", "--input", data("scalar.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn output_flag_writes_file() {
    let dir = std::env::temp_dir().join("mdc-acceptance");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out = run(&[
        "decompose",
        "--input",
        data("scalar.json").to_str().unwrap(),
        "--output",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let report: Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report["command"], "decompose");
}
