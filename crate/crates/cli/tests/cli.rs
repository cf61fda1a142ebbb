use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eaoaqec"))
        .args(args)
        .env_remove("EAOAQEC_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn params_of_color_code() {
    let o = run(&["params", "catalog:subsystem_color_code", "--distance", "dressed"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("[[15,1,3;6,0,1]]"));
}

#[test]
fn cutoff_is_reported_not_guessed() {
    let o = run(&["params", "catalog:subsystem_color_code", "--cutoff", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("[[15,1,>2;6,0,1]]"));
    let o = run(&["--json", "params", "catalog:subsystem_color_code", "--cutoff", "2"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["exceeded_cutoff"], true);
    assert_eq!(v["distance"]["distance"], serde_json::Value::Null);
}

#[test]
fn seven_qubit_is_not_representable() {
    let o = run(&["eacq-check", "catalog:seven_qubit_non_eacq"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("not representable"));
}

#[test]
fn empty_file_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "empty.code", "");
    let o = run(&["validate", &f]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("error"));
}

#[test]
fn parse_errors_carry_position() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "bad.code", "[H]\nh1 Z Q I\n");
    let o = run(&["validate", &f]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2, column 6"), "{}", stderr(&o));
}

#[test]
fn json_schema_is_versioned() {
    let o = run(&["--json", "validate", "catalog:six_qubit_example"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema"], "eaoaqec-cli/1");
    assert_eq!(v["command"], "validate");
    assert_eq!(v["valid"], true);
}

#[test]
fn correctable_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    let good = write(dir.path(), "good.err", "E1 I I Z I I I\nE2 X I I I I I\n");
    let bad = write(dir.path(), "bad.err", "[E]\nE1 I I I I I I\nE2 I I X I I I\n");
    let o = run(&["correctable", "catalog:six_qubit_example", "--errors", &good]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = run(&["correctable", "catalog:six_qubit_example", "--errors", &bad, "--framework", "eaoaqec"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("witness: E1^dag E2"));
    let o = run(&["correctable", "catalog:six_qubit_example", "--errors", &bad, "--framework", "eacq"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn construction_output_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("cq.code");
    let out = out.to_str().unwrap();
    let o = run(&["construct", "cq", "catalog:color_code_cq_input", "--qubits", "1,2", "-o", out]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("[[13,1;6,2,3]]"));
    let o = run(&["params", out, "--distance", "noisy-bob"]);
    assert_eq!(stdout(&o).lines().next(), Some("[[13,1,2;6,2,3]]"));
    assert_eq!(run(&["validate", out]).status.code(), Some(0));
}

#[test]
fn ggf_from_the_command_line() {
    let dir = tempfile::tempdir().unwrap();
    let t = write(
        dir.path(),
        "t.err",
        "T1 I X I I I I X I I X I I I\nT2 X I I I I I X I X I I I I\nT3 Z I I I I I Z I Z I I I I\n",
    );
    let o = run(&[
        "construct",
        "ggf",
        "catalog:shortened_hamming_ea_subsystem",
        "--repair",
        "1|2;3|4,6;3,5|6",
        "--gf-pairs",
        "1",
        "--eagf-pairs",
        "2",
        "--transversal",
        &t,
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("[[10,1;3,2,1]] -> [[10,1;1,3,4]]"));
}

#[test]
fn construction_indices_are_one_based() {
    let o = run(&["construct", "eagf", "catalog:subsystem_color_code", "--pairs", "7"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("gauge pair 7 does not exist"), "{}", stderr(&o));
    let o = run(&["construct", "eagf", "catalog:subsystem_color_code", "--pairs", "0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn thread_count_does_not_change_output() {
    let a = run(&["--threads", "1", "params", "catalog:color_code_hybrid_xz", "--distance", "noisy-bob"]);
    let b = run(&["--threads", "4", "params", "catalog:color_code_hybrid_xz", "--distance", "noisy-bob"]);
    let c = Command::new(env!("CARGO_BIN_EXE_eaoaqec"))
        .args(["params", "catalog:color_code_hybrid_xz", "--distance", "noisy-bob"])
        .env("EAOAQEC_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(stdout(&a), stdout(&b));
    assert_eq!(stdout(&a), stdout(&c));
}

#[test]
fn reproduce_single_and_unknown() {
    let o = run(&["reproduce", "correctability"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("criterion  6 [correctability] PASS"));
    assert_eq!(run(&["reproduce", "99"]).status.code(), Some(2));
}

#[test]
fn unknown_catalog_name() {
    let o = run(&["validate", "catalog:nope"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("unknown catalog code"));
}
