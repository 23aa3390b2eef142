use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn ebsd(args: &[&str]) -> Output {
    let curve = data("curve.cfg");
    let field = data("field.cfg");
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_ebsd"));
    cmd.args(args).arg("--curve").arg(&curve).arg("--field").arg(&field);
    cmd.output().unwrap()
}

#[test]
fn table1_reports_the_flagged_cell() {
    let out = ebsd(&["table1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("14 of 15 exact"));
    assert!(text.contains("133/121"));
}

#[test]
fn verify_needs_the_sha_assumption() {
    let out = ebsd(&["verify"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stderr).unwrap().contains("assume-sha-trivial"));
}

#[test]
fn verdict_at_seven() {
    let out = ebsd(&["verdict", "--l", "7", "--assume-sha-trivial"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("verdict: PASS"));
    assert!(text.contains("residue_fields"));
}

#[test]
fn rejects_bad_arguments() {
    assert_eq!(ebsd(&["table1", "--precision", "10"]).status.code(), Some(1));
    assert_eq!(ebsd(&["verify", "--assume-sha-trivial", "--format", "xml"]).status.code(), Some(1));
    let out = Command::new(env!("CARGO_BIN_EXE_ebsd")).arg("nonsense").output().unwrap();
    assert!(!out.status.success());
}
