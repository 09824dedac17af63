//! Exit codes and output shape of the gwalab binary.

use std::process::{Command, Output};

fn gwalab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gwalab"))
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    gwalab(args).status.code().expect("exit code")
}

fn stdout(args: &[&str]) -> String {
    String::from_utf8(gwalab(args).stdout).unwrap()
}

#[test]
fn verdicts() {
    assert!(stdout(&["smooth", "instances/circle.gwa"]).contains("verdict: SMOOTH"));
    assert!(stdout(&["smooth", "instances/triangular.gwa"]).contains("verdict: SMOOTH"));
    let cusp = stdout(&["smooth", "instances/cusp.gwa"]);
    assert!(cusp.contains("verdict: NOT_SMOOTH") && cusp.contains("common zero: (0, 0)"));
    assert!(stdout(&["smooth", "instances/zero.gwa"]).contains("reason: phi = 0"));
}

#[test]
fn input_errors_exit_2() {
    assert_eq!(code(&["smooth", "instances/bad.gwa"]), 2);
    assert_eq!(code(&["smooth", "instances/missing.gwa"]), 2);
    assert_eq!(code(&["catalog", "run", "nope"]), 2);
    assert_eq!(code(&["catalog", "run", "npq", "--at", "p=1"]), 2);
    assert_eq!(code(&["--depth", "2", "verify-htpy", "instances/circle.gwa"]), 2);
}

#[test]
fn inapplicable_commands_exit_3() {
    assert_eq!(code(&["tor-witness", "instances/circle.gwa"]), 3);
    assert_eq!(code(&["roundtrip", "instances/cusp.gwa"]), 3);
    assert_eq!(code(&["nakayama-verify", "instances/node.gwa"]), 3);
    assert_eq!(code(&["catalog", "run", "quantum-sl2"]), 3);
}

#[test]
fn passing_suites_exit_0() {
    assert_eq!(code(&["tor-witness", "instances/cusp.gwa"]), 0);
    assert_eq!(code(&["tor-witness", "instances/zero.gwa"]), 0);
    assert_eq!(code(&["--trials", "3", "roundtrip", "instances/diagonal.gwa"]), 0);
    assert_eq!(code(&["verify-htpy", "instances/quantum.gwa"]), 0);
    assert_eq!(code(&["catalog", "run", "npq"]), 0);
}

#[test]
fn json_output_parses() {
    let v: serde_json::Value = serde_json::from_str(&stdout(&["--json", "analyze", "instances/diagonal.gwa"])).unwrap();
    assert_eq!(v["smooth"], true);
    assert_eq!(v["jacobian"], "6");
    assert_eq!(v["calabi_yau"], false);
}

#[test]
fn seed_from_environment_matches_flag() {
    let flag = stdout(&["--seed", "5", "--trials", "4", "roundtrip", "instances/circle.gwa"]);
    let env = Command::new(env!("CARGO_BIN_EXE_gwalab"))
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .env("GWA_LAB_SEED", "5")
        .args(["--trials", "4", "roundtrip", "instances/circle.gwa"])
        .output()
        .unwrap();
    assert_eq!(flag.as_bytes(), env.stdout.as_slice());
}
