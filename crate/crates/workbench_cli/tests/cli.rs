//! End-to-end tests of the `workbench` binary: exit codes, output formats and files.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn workbench(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_workbench"))
        .args(args)
        .current_dir(cwd)
        .env_remove("WORKBENCH_CACHE")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

#[test]
fn non_distributive_lattice_is_a_violation() {
    let dir = tempfile::tempdir().unwrap();
    let m3 = data("m3.json");
    let out = workbench(&["lattice", "verify", m3.to_str().unwrap()], dir.path());
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("distributivity failed"));
}

#[test]
fn powerset_lattice_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let p = data("powerset2.json");
    let out = workbench(&["lattice", "verify", p.to_str().unwrap()], dir.path());
    assert_eq!(code(&out), 0);
}

#[test]
fn decompose_accepts_bare_element_lists() {
    let dir = tempfile::tempdir().unwrap();
    let p = data("p3.json");
    let out =
        workbench(&["--format", "json", "lattice", "decompose", p.to_str().unwrap(), "--element", "1,2"], dir.path());
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["complement"], "{3}");
}

#[test]
fn bad_input_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let missing = workbench(&["lattice", "verify", "missing.json"], dir.path());
    assert_eq!(code(&missing), 2);
    let p = data("p3.json");
    let unknown = workbench(&["lattice", "faces", p.to_str().unwrap(), "--element", "{9}"], dir.path());
    assert_eq!(code(&unknown), 2);
    let orbit = workbench(&["cube", "build", "--group", "C2", "--w", "C7"], dir.path());
    assert_eq!(code(&orbit), 2);
}

#[test]
fn cube_commands_report_fibres_points_and_singletons() {
    let dir = tempfile::tempdir().unwrap();
    let build = workbench(&["--format", "json", "cube", "build", "--group", "C2", "--w", "free"], dir.path());
    assert_eq!(code(&build), 0);
    let v: serde_json::Value = serde_json::from_slice(&build.stdout).unwrap();
    assert_eq!(v["boolean"], true);
    assert_eq!(v["levels"][0]["fibre_size"], 4);
    let points = workbench(&["cube", "points", "--group", "C2", "--w", "free"], dir.path());
    assert_eq!(code(&points), 0);
    assert!(stdout(&points).contains("global points"));
    let singletons = workbench(&["cube", "singletons", "--group", "S3", "--w", "free"], dir.path());
    assert_eq!(code(&singletons), 0);
    assert!(stdout(&singletons).contains("fully faithful true"));
}

#[test]
fn cache_directory_receives_orbit_tables() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let out = Command::new(env!("CARGO_BIN_EXE_workbench"))
        .args(["cube", "build", "--group", "C4", "--w", "free"])
        .env("WORKBENCH_CACHE", &cache)
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    assert!(cache.join("orbits-C4.json").exists());
    let again = Command::new(env!("CARGO_BIN_EXE_workbench"))
        .args(["cube", "build", "--group", "C4", "--w", "free"])
        .env("WORKBENCH_CACHE", &cache)
        .output()
        .unwrap();
    assert_eq!(out.stdout, again.stdout);
}

#[test]
fn norm_failure_is_reported_as_predicted() {
    let dir = tempfile::tempdir().unwrap();
    let out = workbench(&["suite", "run", "--only", "norm", "--group", "C2"], dir.path());
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("paper-predicted"));
}

#[test]
fn suite_reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "--format",
        "json",
        "suite",
        "run",
        "--only",
        "homotopy_engine,colimit_decomposition,lattice_laws",
        "--seed",
        "7",
    ];
    let a = workbench(&args, dir.path());
    let b = workbench(&args, dir.path());
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn degenerate_configuration_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = workbench(&["suite", "run", "--max-cube-dim", "0", "--group", "C2"], dir.path());
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(stdout(&out).contains("all properties hold"));
}

#[test]
fn probe_witness_replays() {
    let dir = tempfile::tempdir().unwrap();
    let witnesses = dir.path().join("w");
    let out = workbench(&["suite", "run", "--only", "probe", "--witness-dir", witnesses.to_str().unwrap()], dir.path());
    assert_eq!(code(&out), 0);
    let file = witnesses.join("probe.witness.json");
    assert!(file.exists());
    let replayed = workbench(&["suite", "replay", file.to_str().unwrap()], dir.path());
    assert_eq!(code(&replayed), 1, "the stored failure must be reproduced");
    assert!(stdout(&replayed).contains("failure reproduced"));
}

#[test]
fn output_file_receives_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("list.json");
    let out = workbench(&["--format", "json", "--out", target.to_str().unwrap(), "suite", "list"], dir.path());
    assert_eq!(code(&out), 0);
    let names: Vec<String> = serde_json::from_str(&std::fs::read_to_string(target).unwrap()).unwrap();
    assert_eq!(names.len(), 11);
}
