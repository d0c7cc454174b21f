use std::process::{Command, Output};

use serde_json::Value;

fn fincohom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fincohom")).args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn h2_of_z2_with_trivial_z2() {
    let v = stdout_json(&fincohom(&["cohomology", "--group", "cyclic:2", "--module", "trivial:Z/2", "--degree", "2"]));
    assert_eq!(v["factors"], serde_json::json!([2]));
    assert_eq!(v["order"], "2");
}

#[test]
fn classify_lists_klein_and_cyclic() {
    let v = stdout_json(&fincohom(&["extensions", "--group", "cyclic:2", "--module", "trivial:Z/2", "--classify"]));
    assert_eq!(v["count"], 2);
    let mut labels: Vec<&str> = v["classes"].as_array().unwrap().iter().map(|c| c["label"].as_str().unwrap()).collect();
    labels.sort();
    assert_eq!(labels, ["Z/2×Z/2", "Z/4"]);
}

#[test]
fn missing_file_exits_one_without_output() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("out.json");
    let out = fincohom(&[
        "cohomology",
        "--group",
        "cyclic:2",
        "--module",
        "does-not-exist.json",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    assert!(!out_path.exists());
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "io");
}

#[test]
fn malformed_json_reports_location() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("g.json");
    std::fs::write(&p, "{\n  \"elements\": [\"e\",\n").unwrap();
    let out = fincohom(&["cohomology", "--group", p.to_str().unwrap(), "--module", "trivial:Z/2"]);
    assert_eq!(out.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "json");
    assert_eq!(err["error"]["line"], 3);
}

#[test]
fn non_cocycle_is_a_domain_error() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("f.json");
    std::fs::write(&p, r#"{"degree": 2, "values": {"(0,1)": [1]}}"#).unwrap();
    let out = fincohom(&["extensions", "--group", "cyclic:2", "--module", "trivial:Z/2", "--cocycle", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "not_cocycle");
}

#[test]
fn size_cap_exits_two() {
    let out = fincohom(&["cohomology", "--group", "symmetric:4", "--module", "trivial:Z/2", "--degree", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
}

#[test]
fn usage_errors_exit_one_and_help_exits_zero() {
    assert_eq!(fincohom(&["cohomology", "--bogus"]).status.code(), Some(1));
    assert_eq!(fincohom(&["--help"]).status.code(), Some(0));
}

#[test]
fn output_round_trips_byte_identically() {
    for args in [
        &["cohomology", "--group", "dihedral:3", "--module", "negation:Z/3", "--degree", "1"][..],
        &["les", "--group", "cyclic:2", "--ses", "chain:2,2"],
        &["haar", "--group", "cyclic:4", "--f", "values:1,0,1/2,3", "--phi", "delta"],
        &["lie", "--lie", "sl2", "--module", "adjoint"],
    ] {
        let out = fincohom(args);
        let v = stdout_json(&out);
        let mut again = serde_json::to_string_pretty(&v).unwrap();
        again.push('\n');
        assert_eq!(again.as_bytes(), &out.stdout[..], "{args:?}");
    }
}

#[test]
fn emitted_input_replays_to_the_same_result() {
    let dir = tempfile::tempdir().unwrap();
    let doc = dir.path().join("in.json");
    let args = ["extensions", "--group", "cyclic:2", "--module", "trivial:Z/4"];
    let emit = fincohom(&[&args[..], &["--emit-input", "--out", doc.to_str().unwrap()]].concat());
    assert!(emit.status.success());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&doc).unwrap()).unwrap();
    assert!(v["group"]["table"].is_array());
    assert_eq!(v["classify"], true);
    let direct = fincohom(&args);
    let replay = fincohom(&["extensions", "--input", doc.to_str().unwrap()]);
    assert!(replay.status.success());
    assert_eq!(direct.stdout, replay.stdout);
}

#[test]
fn verify_is_deterministic() {
    let a = fincohom(&["verify", "--cases", "5", "--seed", "11"]);
    let b = fincohom(&["verify", "--cases", "5", "--seed", "11"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn table_format_is_aligned_text() {
    let out = fincohom(&["lie", "--lie", "heisenberg", "--format", "table"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("degree"));
    assert_eq!(lines[2].split_whitespace().collect::<Vec<_>>(), ["0", "1", "1"]);
}
