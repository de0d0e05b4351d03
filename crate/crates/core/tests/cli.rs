use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn instance(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus/instances").join(name)
}

fn sc6v(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sc6v")).args(args).env_remove("HV_SEED").output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("report on stdout")
}

#[test]
fn worked_flip_instance_passes() {
    let out = sc6v(&["verify-flip", instance("flip_worked.json").to_str().unwrap(), "--json", "-", "--quiet"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["status"], "PASS");
    assert!(out.stderr.is_empty());
}

#[test]
fn mutated_flip_instance_fails_with_witness() {
    let out = sc6v(&["verify-flip", instance("flip_mutated.json").to_str().unwrap(), "--json", "-", "--quiet"]);
    assert_eq!(out.status.code(), Some(1));
    let report = json_of(&out);
    assert_eq!(report["status"], "FAIL");
    assert!(report["witness"].is_object());
}

#[test]
fn malformed_domain_is_invalid_with_position() {
    let out = sc6v(&["verify-main", instance("bad_domain.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("position 3"), "{err}");
}

#[test]
fn local_flip_and_cps_instances_pass() {
    assert_eq!(sc6v(&["verify-main", instance("main_local.json").to_str().unwrap(), "--trials", "2"]).status.code(), Some(0));
    assert_eq!(sc6v(&["cps-check", instance("cps_word.json").to_str().unwrap()]).status.code(), Some(0));
}

#[test]
fn bad_arguments_are_invalid() {
    assert_eq!(sc6v(&["verify-flip", "--trials", "0"]).status.code(), Some(2));
    assert_eq!(sc6v(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(sc6v(&["rpoly", "--n", "3", "--pi", "1,1,2", "--w", "3,2,1"]).status.code(), Some(2));
    assert_eq!(sc6v(&["--help"]).status.code(), Some(0));
}

#[test]
fn reports_are_deterministic() {
    let args = ["sample", "--rectangle", "2x2", "--samples", "2000", "--seed", "7", "--json", "-", "--quiet"];
    let (a, b) = (sc6v(&args), sc6v(&args));
    assert_eq!(a.stdout, b.stdout);
    let args = ["verify-main", "--random", "5", "--trials", "2", "--seed", "3", "--json", "-", "--quiet"];
    assert_eq!(sc6v(&args).stdout, sc6v(&args).stdout);
}

#[test]
fn seed_falls_back_to_environment() {
    let run = |env: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_sc6v"));
        cmd.args(["sample", "--samples", "500", "--json", "-", "--quiet"]).env_remove("HV_SEED");
        if let Some(s) = env {
            cmd.env("HV_SEED", s);
        }
        json_of(&cmd.output().unwrap())
    };
    assert_eq!(run(Some("41"))["seed"], 41);
    assert_eq!(run(None)["seed"], 0);
    assert_eq!(run(Some("41"))["result"], json_of(&sc6v(&["sample", "--samples", "500", "--seed", "41", "--json", "-", "--quiet"]))["result"]);
}

#[test]
fn stream_writes_one_record_per_sample() {
    let out = sc6v(&["sample", "--samples", "25", "--stream", "--cut", "1,1,2,2", "--quiet"]);
    assert_eq!(out.status.code(), Some(0));
    let lines: Vec<Value> = String::from_utf8(out.stdout).unwrap().lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 25);
}

#[test]
fn json_report_file() {
    let path = std::env::temp_dir().join(format!("sc6v-report-{}.json", std::process::id()));
    let out = sc6v(&["rpoly", "--n", "3", "--json", path.to_str().unwrap(), "--quiet"]);
    assert_eq!(out.status.code(), Some(0));
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(report["command"], "rpoly");
    assert!(report.get("wall_time").is_none());
}

#[test]
fn corpus_matches_goldens() {
    let out = sc6v(&["corpus", "--json", "-", "--quiet"]);
    let report = json_of(&out);
    assert_eq!(out.status.code(), Some(0), "{}", report["detail"]);
    assert_eq!(report["result"]["entries"].as_array().unwrap().len(), 12);
}
