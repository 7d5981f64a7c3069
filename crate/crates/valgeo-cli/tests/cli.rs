//! End-to-end tests of the `valgeo` binary: exit codes, stdout contracts,
//! report sinks, and seed reproducibility.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_valgeo"))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("valgeo-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn write_fixture(name: &str, contents: &str) -> PathBuf {
    let path = scratch(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn unit_square() -> PathBuf {
    write_fixture(
        "unit-square.json",
        r#"{"dim":2,"vertices":[[0,0],[1,0],[1,1],[0,1]]}"#,
    )
}

fn shifted_square() -> PathBuf {
    write_fixture(
        "shifted-square.json",
        r#"{"dim":2,"vertices":[[0.5,0],[1.5,0],[1.5,1],[0.5,1]]}"#,
    )
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn deviation_of_half_overlapping_squares_prints_one() {
    let out = bin()
        .args(["deviation", "--kind", "meet", "--phi", "vol"])
        .arg("--a")
        .arg(unit_square())
        .arg("--b")
        .arg(shifted_square())
        .output()
        .unwrap();
    assert!(out.status.success());
    let value: f64 = stdout_of(&out).trim().parse().unwrap();
    assert!((value - 1.0).abs() <= 1e-12);
}

#[test]
fn malformed_body_json_exits_two_with_location() {
    let bad = write_fixture("bad.json", r#"{"dim":2,"vertices":[[0,0],[1,"#);
    let out = bin()
        .args(["deviation", "--kind", "meet", "--phi", "vol"])
        .arg("--a")
        .arg(bad)
        .arg("--b")
        .arg(unit_square())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.contains("line") && err.contains("column"), "stderr: {err}");
}

#[test]
fn unknown_subcommand_exits_two() {
    let out = bin().arg("frobnicate").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_valuation_spec_exits_two() {
    let out = bin()
        .args(["deviation", "--kind", "join", "--phi", "perimeter^2"])
        .arg("--a")
        .arg(unit_square())
        .arg("--b")
        .arg(shifted_square())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn path_length_of_square_inflation_is_three() {
    let path = write_fixture(
        "inflate.json",
        r#"{"bodies":[
            {"dim":2,"vertices":[[0,0],[1,0],[1,1],[0,1]]},
            {"dim":2,"vertices":[[0,0],[2,0],[2,2],[0,2]]}
        ]}"#,
    );
    let out = bin()
        .args(["path-length", "--kind", "meet", "--phi", "vol"])
        .arg("--path")
        .arg(path)
        .output()
        .unwrap();
    assert!(out.status.success());
    let value: f64 = stdout_of(&out).trim().parse().unwrap();
    assert!((value - 3.0).abs() <= 1e-7);
}

#[test]
fn hausdorff_of_shifted_squares_is_half() {
    let out = bin()
        .arg("hausdorff")
        .arg("--a")
        .arg(unit_square())
        .arg("--b")
        .arg(shifted_square())
        .output()
        .unwrap();
    assert!(out.status.success());
    let value: f64 = stdout_of(&out).trim().parse().unwrap();
    assert!((value - 0.5).abs() <= 1e-12);
}

#[test]
fn verify_writes_report_json_and_csv() {
    let report_path = scratch("thm3-report.json");
    let csv_path = scratch("thm3-report.csv");
    let out = bin()
        .args(["verify", "thm3", "--seed", "3"])
        .arg("--out")
        .arg(&report_path)
        .arg("--csv")
        .arg(&csv_path)
        .output()
        .unwrap();
    assert!(out.status.success(), "verify thm3 failed: {}", stdout_of(&out));

    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report_path).unwrap()).unwrap();
    assert_eq!(report["name"], "thm3");
    assert_eq!(report["seed"], 3);
    assert!(report["measurements"].as_array().unwrap().iter().all(|m| m["pass"] == true));

    let csv = std::fs::read_to_string(&csv_path).unwrap();
    assert!(csv.starts_with("name,label,value,target,tolerance,pass"));
}

#[test]
fn verify_json_output_prints_the_report() {
    let out = bin()
        .args(["verify", "mcmullen", "--output", "json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(stdout_of(&out).trim()).unwrap();
    assert_eq!(report["name"], "prop22_decompose");
}

#[test]
fn same_seed_reruns_are_bit_identical() {
    let mut measurement_sets = Vec::new();
    for run in 0..2 {
        let path = scratch(&format!("repro-{run}.json"));
        let out = bin()
            .args(["verify", "thm3", "--seed", "11"])
            .arg("--out")
            .arg(&path)
            .output()
            .unwrap();
        assert!(out.status.success());
        let report: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        measurement_sets.push(report["measurements"].clone());
    }
    assert_eq!(measurement_sets[0], measurement_sets[1]);
}

#[test]
fn steiner_reports_square_intrinsic_volumes() {
    let report_path = scratch("steiner.json");
    let out = bin()
        .arg("steiner")
        .arg("--body")
        .arg(unit_square())
        .arg("--out")
        .arg(&report_path)
        .output()
        .unwrap();
    assert!(out.status.success());
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report_path).unwrap()).unwrap();
    let ms = report["measurements"].as_array().unwrap();
    let value = |label: &str| {
        ms.iter()
            .find(|m| m["label"] == label)
            .unwrap()["value"]
            .as_f64()
            .unwrap()
    };
    assert!((value("V0") - 1.0).abs() <= 1e-3);
    assert!((value("V1") - 2.0).abs() <= 1e-3);
    assert!((value("V2") - 1.0).abs() <= 1e-3);
}

#[test]
fn decompose_splits_volume_plus_perimeter_valuation() {
    let report_path = scratch("decompose.json");
    let out = bin()
        .args(["decompose", "--phi", "sum:vol+v1"])
        .arg("--body")
        .arg(unit_square())
        .arg("--out")
        .arg(&report_path)
        .output()
        .unwrap();
    assert!(out.status.success());
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report_path).unwrap()).unwrap();
    let ms = report["measurements"].as_array().unwrap();
    let value = |label: &str| {
        ms.iter()
            .find(|m| m["label"] == label)
            .unwrap()["value"]
            .as_f64()
            .unwrap()
    };
    assert!((value("degree_1") - 2.0).abs() <= 1e-7);
    assert!((value("degree_2") - 1.0).abs() <= 1e-7);
}
