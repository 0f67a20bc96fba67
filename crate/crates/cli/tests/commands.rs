use std::process::Command as Process;

use clap::Parser;
use dlbraid_cli::{run, Cli};

fn cli(args: &[&str]) -> anyhow::Result<String> {
    let mut argv = vec!["dlbraid"];
    argv.extend_from_slice(args);
    run(&Cli::try_parse_from(argv)?)
}

fn ok(args: &[&str]) -> String {
    cli(args).unwrap_or_else(|e| panic!("{args:?} failed: {e:#}"))
}

#[test]
fn trace_of_single_double_line() {
    assert_eq!(ok(&["trace", "n=1; t1"]), "x1");
    assert_eq!(ok(&["trace", "n=1;"]), "-1*q^(-2/4) + -1*q^(2/4)");
    assert_eq!(ok(&["trace", "n=2; s1", "--normalization=framed"]), ok(&["trace", "n=1;"]));
}

#[test]
fn trace_with_hp_form() {
    let out = ok(&["trace", "n=1; t1", "--hp"]);
    assert_eq!(out, "x1\n[0 | i=1: 1]");
    let json: serde_json::Value = serde_json::from_str(&ok(&["trace", "n=1; t1", "--hp", "--json"])).unwrap();
    assert_eq!(json["trace"], "x1");
    assert_eq!(json["hp"], "[0 | i=1: 1]");
}

#[test]
fn unframed_normalization() {
    assert_eq!(ok(&["trace", "n=2; s1", "--normalization", "unframed"]), "-1 + -1*q^(4/4)");
    assert!(cli(&["trace", "n=1;", "--normalization=other"]).is_err());
}

#[test]
fn bracket_output() {
    assert_eq!(ok(&["bracket", "n=1; t1"]), "x1");
    assert_eq!(ok(&["bracket", "n=2; t1 t2 s1"]), "-1*q^(-3/4) + -1*q^(1/4) + 1*q^(1/4)*x1^2");
}

#[test]
fn phi_gives_x2() {
    assert_eq!(ok(&["phi", "n=2; s1 t1 s1"]), "X^(0,1) T[id]");
}

#[test]
fn hecke_commands() {
    assert_eq!(ok(&["hecke-nf", "n=2; T1 T1'"]), "X^(0,0) T[id]");
    assert_eq!(ok(&["mul", "n=2; T1", "n=2; X1"]), "(-1*v^(-2) + 1)*X^(0,1) T[id] + X^(0,1) T[2,1]");
    assert!(cli(&["mul", "n=2; T1", "n=3; X1"]).is_err());
}

#[test]
fn markov_search_destabilizes() {
    assert_eq!(ok(&["markov-search", "n=2; s1", "n=1;", "--depth", "2"]), "M2 destabilize -> n=1;");
    let twist = ok(&["markov-search", "n=2; t1 s1", "n=2; s1' t2", "--depth=1"]);
    assert_eq!(twist.lines().count(), 1);
    assert!(twist.starts_with("M0 rewrite TauSigmaTwist"));
    assert_eq!(ok(&["markov-search", "n=1; t1", "n=1;", "--depth", "2"]), "not-found within bounds");
}

#[test]
fn gauss_and_braiding() {
    let g: serde_json::Value = serde_json::from_str(&ok(&["gauss", "--word", "n=2; s1"])).unwrap();
    assert_eq!(g["V"], serde_json::json!([0]));
    assert_eq!(g["S"]["0"], 1);
    assert_eq!(g["mu"], 1);
    assert_eq!(g["E"].as_array().unwrap().len(), 2);

    let dir = std::env::temp_dir().join(format!("dlbraid-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("loop.json");
    std::fs::write(&path, r#"{"nodes":[{"id":4,"kind":"d","sign":1}],"arcs":[{"from":[4,2],"to":[4,1]}]}"#).unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(ok(&["braid-of-diagram", p]), "n=1; t1");
    assert!(ok(&["gauss", p]).contains(r#""dlL":{"4":1}"#));

    std::fs::write(&path, r#"{"nodes":[{"id":4,"kind":"d","sign":1}],"arcs":[]}"#).unwrap();
    let err = cli(&["gauss", p]).unwrap_err();
    assert!(format!("{err:#}").contains("diagram:"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn hp_normal_form_command() {
    // x2 = -q^{-1/2} S2 + q^{-3/2}, and q^{-2/4} = q^{6/4} modulo q^{8/4}
    assert_eq!(ok(&["hp-normal-form", "n=1; t1 t1"]), "[1*q^(-6/4) | i=2: -1*q^(6/4)]");
}

#[test]
fn errors_are_module_qualified() {
    let err = cli(&["trace", "n=1; s1"]).unwrap_err();
    assert!(format!("{err:#}").contains("braid: letter s1 is out of bounds"));
    let err = cli(&["trace", "n=2; r1"]).unwrap_err();
    assert!(format!("{err:#}").contains("skein:"));
    assert!(cli(&["phi", "n=2; r1'"]).is_err());
}

#[test]
fn outputs_are_deterministic() {
    let args = ["trace", "n=3; s1 t2 s2' t1", "--hp"];
    assert_eq!(ok(&args), ok(&args));
}

#[test]
fn binary_exit_status() {
    let bin = env!("CARGO_BIN_EXE_dlbraid");
    let good = Process::new(bin).args(["phi", "n=3; t3"]).output().unwrap();
    assert!(good.status.success());
    assert_eq!(String::from_utf8(good.stdout).unwrap(), "X^(0,0,1) T[id]\n");
    let bad = Process::new(bin).args(["trace", "n=1; s1"]).output().unwrap();
    assert!(!bad.status.success());
    assert!(String::from_utf8(bad.stderr).unwrap().starts_with("error: "));
}
