use std::io::Write;
use std::process::{Command, Stdio};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_abelian-points"))
}

fn run(args: &[&str]) -> (i32, String) {
    let out = bin().args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn verify_stdin(text: &str) -> (i32, String) {
    let mut child = bin()
        .args(["verify", "--file", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["certify-cubic", "--a", "2", "--b", "4", "--c", "5", "--p", "2"]).0, 0);
    assert_eq!(run(&["certify-cubic", "--a", "3", "--b", "4", "--c", "5", "--p", "7"]).0, 1);
    assert_eq!(run(&["find-ell", "--q", "12"]).0, 2);
    assert_eq!(run(&["thm-ell", "--ell", "3"]).0, 2);
    assert_eq!(run(&["thm3", "--poly", "x", "--p-max", "50"]).0, 3);
    assert_eq!(run(&["cor2", "--poly", "x^2 + x + 1", "--p-max", "500"]).0, 1);
    assert_eq!(run(&["no-such-command"]).0, 2);
}

#[test]
fn envelope_shape() {
    let (code, out) = run(&["find-ell", "--q", "8"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["command"], "find-ell");
    assert_eq!(v["status"], "ok");
    assert_eq!(v["result"]["q"], 8);
}

#[test]
fn certificates_verify_through_stdin() {
    for args in [
        vec!["certify-cy", "--ell", "5", "--p", "3"],
        vec!["thm-ell", "--ell", "11"],
        vec!["genus-plan", "--g", "12"],
        vec!["sn-cert", "--poly", "x^4 - x - 1"],
        vec!["solve-local", "--form", "3x^3 + 4y^3 + 5z^3", "--p", "3"],
    ] {
        let (code, out) = run(&args);
        assert_eq!(code, 0, "{args:?}: {out}");
        let (vcode, vout) = verify_stdin(&out);
        assert_eq!(vcode, 0, "{args:?}: {vout}");
    }
}

#[test]
fn verify_rejects_garbage() {
    assert_ne!(verify_stdin("{\"result\": 7}").0, 0);
    assert_ne!(verify_stdin("not json").0, 0);
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("abelian-points-out-{}.json", std::process::id()));
    let p = path.to_str().unwrap();
    let (code, stdout) = run(&["--out", p, "catalan", "--s-max", "10", "--t-max", "10"]);
    assert_eq!(code, 0);
    let written = std::fs::read_to_string(&path).unwrap();
    let _ = std::fs::remove_file(&path);
    assert!(written.contains("catalan"));
    assert!(stdout.trim().is_empty() || stdout.contains("catalan"));
}
