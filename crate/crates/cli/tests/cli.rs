use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn aued() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_aued"));
    cmd.env_remove("AUED_SEARCH_CAP");
    cmd
}

fn run(args: &[&str]) -> Output {
    aued().args(args).output().unwrap()
}

fn run_stdin(args: &[&str], input: &[u8]) -> Output {
    let mut child = aued()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("aued-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn bound_prints_value() {
    let o = run(&["bound", "--q", "3", "--a", "7", "--T", "8"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("= 21"), "{}", stdout(&o));
}

#[test]
fn bound_json_parses() {
    let o = run(&["--json", "bound", "--q", "3", "--a", "7", "--T", "8"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["value"], 21);
    assert_eq!(v["T"], 8);
}

#[test]
fn construct_pipes_into_verify() {
    let code = run(&["construct", "--method", "c1", "--k", "3"]);
    assert!(code.status.success());
    let ok = run_stdin(&["verify", "--T", "2"], &code.stdout);
    assert_eq!(ok.status.code(), Some(0), "{}", stdout(&ok));
    let bad = run_stdin(&["verify", "--T", "3"], &code.stdout);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn file_round_trip_matches_stdin_verdict() {
    let path = scratch("c2.code");
    let o = run(&["construct", "--method", "c2", "--k", "3", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    let text = std::fs::read(&path).unwrap();
    for t in ["1", "2", "3", "4"] {
        let from_file = run(&["verify", "--code", path.to_str().unwrap(), "--T", t]);
        let from_stdin = run_stdin(&["verify", "--T", t], &text);
        assert_eq!(from_file.status.code(), from_stdin.status.code(), "T = {t}");
    }
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["bound", "--q", "3"]).status.code(), Some(2));
    assert_eq!(run(&["nonsense"]).status.code(), Some(2));
    assert_eq!(run(&["bound", "--q", "1", "--a", "3", "--T", "1"]).status.code(), Some(2));
    assert_eq!(run(&["construct", "--method", "c1", "--k", "0"]).status.code(), Some(2));
}

#[test]
fn search_cap_comes_from_environment() {
    let args = ["search", "--q", "3", "--T", "1", "--n", "4"];
    let refused = aued().args(args).env("AUED_SEARCH_CAP", "10").output().unwrap();
    assert_eq!(refused.status.code(), Some(1));
    let mut json = vec!["--json"];
    json.extend(args);
    let o = run(&json);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["size"], 19);
}

#[test]
fn catalog_reproduces_desk_scale_targets() {
    let o = run(&["catalog", "reproduce", "--target", "all-desk-scale"]);
    assert!(o.status.success(), "{}", stdout(&o));
}

#[test]
fn catalog_show_json() {
    let o = run(&["--json", "catalog", "show", "--q", "3", "--a", "7", "--T", "16"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["n"], 42);
}

#[test]
fn simulate_is_deterministic() {
    let path = scratch("c1.code");
    assert!(run(&["construct", "--method", "c1", "--k", "5", "--out", path.to_str().unwrap()])
        .status
        .success());
    let args = ["--json", "simulate", "--code", path.to_str().unwrap(), "--t", "3", "--trials", "20000", "--seed", "7"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["symmetric"]["corrected"], v["symmetric"]["trials"]);
}
