use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn tracelab(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tracelab"))
        .args(args)
        .current_dir(dir)
        .env_remove("TRACELAB_CONFIG")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn verify_all_with_subgroup_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = tracelab(&["verify-all", "S4", "A4", "--trials", "5"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["passed"], true);
    assert!(v["failures"].as_array().unwrap().is_empty());
    let statuses: Vec<&str> = v["checks"].as_array().unwrap().iter().map(|c| c["status"].as_str().unwrap()).collect();
    assert!(statuses.iter().all(|s| *s == "pass" || *s == "skipped"));
    // S4 is not abelian, so Poisson is the only skip
    assert_eq!(statuses.iter().filter(|s| **s == "skipped").count(), 1);
}

#[test]
fn verify_all_without_subgroup_skips_with_notice() {
    let dir = tempfile::tempdir().unwrap();
    let out = tracelab(&["verify-all", "S3", "--trials", "5"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let skipped: Vec<&Value> = v["checks"].as_array().unwrap().iter().filter(|c| c["status"] == "skipped").collect();
    assert!(skipped.len() >= 4);
    assert!(skipped.iter().all(|c| !c["detail"].as_str().unwrap_or("").is_empty()));
}

#[test]
fn malformed_group_file_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    std::fs::write(&path, "{\"generators\": [[1, 0]").unwrap();
    let out = tracelab(&["verify-all", path.to_str().unwrap()], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn unknown_group_and_bad_flags_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(tracelab(&["chartable", "S9x"], dir.path()).status.code(), Some(2));
    assert_eq!(tracelab(&["chartable", "S3", "--format", "xml"], dir.path()).status.code(), Some(2));
    assert_eq!(tracelab(&["frobnicate"], dir.path()).status.code(), Some(2));
    assert_eq!(tracelab(&["poisson", "S3", "A3"], dir.path()).status.code(), Some(2));
}

#[test]
fn group_file_from_json() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s3.json");
    std::fs::write(&path, r#"{"name": "S3 as file", "degree": 3, "generators": [[1, 0, 2], [1, 2, 0]]}"#).unwrap();
    let out = tracelab(&["chartable", path.to_str().unwrap()], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(json(&out)["order"], 6);
}

#[test]
fn verify_all_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = tracelab(&["verify-all", "S4", "A4", "--seed", "11", "--trials", "4"], dir.path());
    let b = tracelab(&["verify-all", "S4", "A4", "--seed", "11", "--trials", "4"], dir.path());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn report_q8_json_has_five_rows() {
    let dir = tempfile::tempdir().unwrap();
    let out = tracelab(&["report", "Q8"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let path = dir.path().join(String::from_utf8(out.stdout).unwrap().trim());
    let first = std::fs::read(&path).unwrap();
    let v: Value = serde_json::from_slice(&first).unwrap();
    assert_eq!(v["table"]["characters"].as_array().unwrap().len(), 5);
    assert_eq!(v["order"], 8);

    tracelab(&["report", "Q8"], dir.path());
    assert_eq!(std::fs::read(&path).unwrap(), first);
}

#[test]
fn report_z6_csv_has_six_linear_characters() {
    let dir = tempfile::tempdir().unwrap();
    let out = tracelab(&["report", "Z/6", "--format", "csv", "--out", "z6.csv"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(dir.path().join("z6.csv")).unwrap();
    let rows: Vec<Vec<&str>> = text.lines().skip(1).map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 6, "{text}");
    assert!(rows.iter().all(|r| r[1] == "1"));
}

#[test]
fn report_a5_pretty_shows_degrees() {
    let dir = tempfile::tempdir().unwrap();
    let out = tracelab(&["report", "A5", "--format", "pretty", "--out", "a5.txt"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(dir.path().join("a5.txt")).unwrap();
    assert!(text.contains("[1, 3, 3, 4, 5]"), "{text}");
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = tracelab(&["theta", "--a", "0.5", "--out", "theta.json"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("theta.json")).unwrap()).unwrap();
    assert_eq!(v["N"], 20);
    assert_eq!(v["within_bound"], true);
}

#[test]
fn subcommands_run() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        vec!["induce", "S4", "S3", "1"],
        vec!["brauer", "A4"],
        vec!["trace", "S4", "<(0,1,2,3)>", "--trials", "3"],
        vec!["poisson", "Z/12", "4Z/12"],
        vec!["weyl", "G2", "--highest", "1,0"],
        vec!["chartable", "D8", "--format", "csv"],
    ] {
        let out = tracelab(&args, dir.path());
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
    let v = json(&tracelab(&["weyl", "G2", "--highest", "1,0"], dir.path()));
    assert_eq!(v["weyl_order"], 12);
}

#[test]
fn config_file_and_env_layering() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("cfg.toml"), "format = \"pretty\"\n").unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_tracelab"))
        .args(["chartable", "S3"])
        .current_dir(dir.path())
        .env("TRACELAB_CONFIG", "cfg.toml")
        .output()
        .unwrap();
    assert!(String::from_utf8_lossy(&out.stdout).contains("degrees [1, 1, 2]"));
    // the environment overrides the file, the flag overrides both
    let out = Command::new(env!("CARGO_BIN_EXE_tracelab"))
        .args(["chartable", "S3", "--config", "cfg.toml"])
        .current_dir(dir.path())
        .env("TRACELAB_FORMAT", "json")
        .output()
        .unwrap();
    assert!(serde_json::from_slice::<Value>(&out.stdout).is_ok());
    let out = tracelab(&["chartable", "S3", "--cap", "4"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}
