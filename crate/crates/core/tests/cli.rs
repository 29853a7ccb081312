use std::path::Path;
use std::process::{Command, Output};

use mdsep::fixtures::{EXAMPLE_1, EXAMPLE_2};
use serde_json::Value;

fn mdsep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mdsep")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn write_example_1(dir: &Path, scale: f64) -> String {
    let path = dir.join("ex1.json");
    let dense: Vec<String> = EXAMPLE_1.iter().map(|x| (x * scale).to_string()).collect();
    std::fs::write(&path, format!("{{\"dense\": [{}]}}", dense.join(","))).unwrap();
    path.to_str().unwrap().to_string()
}

fn write_example_2(dir: &Path) -> String {
    let path = dir.join("ex2.json");
    let entries: Vec<String> = EXAMPLE_2.iter().map(|(k, v)| format!("\"{k}\": {v}")).collect();
    std::fs::write(&path, format!("{{\"sparse\": {{{}}}}}", entries.join(", "))).unwrap();
    path.to_str().unwrap().to_string()
}

fn json_report(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.extend(["--json", "-"]);
    let o = mdsep(&a);
    assert!(o.status.success(), "{}", stderr(&o));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn analyze_example_1_file() {
    let dir = tempfile::tempdir().unwrap();
    let file = write_example_1(dir.path(), 1.0);
    let o = mdsep(&["analyze", &file]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("verdict: fully separable (certified) via l1_svd mode 1 = 0.719935722579"), "{out}");

    let r = json_report(&["analyze", &file]);
    assert_eq!(r["verdict"], "fully separable (certified)");
    assert_eq!(r["certificate"]["criterion"], "l1_svd");
    assert_eq!(r["certificate"]["mode"], 1);
    let names: Vec<&str> = r["criteria"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert_eq!(
        names,
        ["frobenius", "l1_raw", "l1_svd", "l1_svd", "l1_svd", "l2_triads", "bisep_triads", "hosvd_l1"]
    );
    assert_eq!(r["spectrum"].as_array().unwrap().len(), 8);
    assert_eq!(r["pairing"]["ok"], true);
}

#[test]
fn analyze_example_2_inconclusive() {
    let dir = tempfile::tempdir().unwrap();
    let r = json_report(&["analyze", &write_example_2(dir.path())]);
    assert_eq!(r["verdict"], "inconclusive");
    let bisep = r["criteria"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "bisep_triads")
        .unwrap();
    assert_eq!(bisep["satisfied"], false);
}

#[test]
fn analyze_scaled_example_1_certifies() {
    // scaling by 1/0.71 leaves l1_svd mode 2 below one
    let r = json_report(&["analyze", "--builtin", "example-1", "--scale", "1.408450704225352"]);
    assert_eq!(r["verdict"], "fully separable (certified)");
    assert_eq!(r["certificate"]["mode"], 2);
}

#[test]
fn json_values_have_twelve_significant_digits() {
    let o = mdsep(&["analyze", "--builtin", "example-1", "--json", "-"]);
    let text = stdout(&o);
    assert!(text.contains("0.719935722579"), "{text}");
    assert!(!text.contains("0.7199357225789"));
}

#[test]
fn json_and_ensemble_files() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("r.json");
    let ens = dir.path().join("e.json");
    let o = mdsep(&[
        "analyze",
        "--builtin",
        "example-1",
        "--json",
        report.to_str().unwrap(),
        "--ensemble",
        ens.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("verdict:"));
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    let e: Value = serde_json::from_str(&std::fs::read_to_string(&ens).unwrap()).unwrap();
    assert_eq!(e["form"], "l1-rotated");
    assert_eq!(e["ensemble"]["kind"], "full");
    assert_eq!(
        e["ensemble"]["terms"].as_array().unwrap().len() as u64,
        r["certificate"]["terms"].as_u64().unwrap()
    );
}

#[test]
fn decompose_l2_example_1() {
    let d = json_report(&["decompose", "--builtin", "example-1", "--form", "l2"]);
    assert_eq!(d["check"]["ok"], true);
    let terms = d["ensemble"]["terms"].as_array().unwrap();
    let identity = terms.iter().find(|t| t["kind"] == "identity").unwrap();
    let w = identity["weight"].as_f64().unwrap();
    let value = d["criterion"]["value"].as_f64().unwrap();
    assert!((w - (1.0 - value)).abs() < 1e-11);
}

#[test]
fn decompose_noisy_ghz() {
    let o = mdsep(&["decompose", "--state", "ghz", "--p", "0.15", "--form", "noisy"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("verified: yes"));
}

#[test]
fn decompose_refusal_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let o = mdsep(&["decompose", &write_example_2(dir.path()), "--form", "l1-rotated"]);
    assert_eq!(o.status.code(), Some(3));
    let err = stderr(&o);
    assert!(err.contains("refused: l1_svd (mode 1) = 1.19472797"), "{err}");
}

#[test]
fn decompose_form_needs_mds() {
    let o = mdsep(&["decompose", "--state", "w", "--p", "0.1", "--form", "bisep"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn state_commands() {
    let o = mdsep(&["state", "ghz", "0.2"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("coefficients: 000: 1  033: 0.2"), "{out}");
    assert!(out.contains("verdict: fully separable (certified) via noisy_family"), "{out}");

    let o = mdsep(&["state", "w", "0.25"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("negative partial transpose"), "{out}");
    assert!(out.contains("verdict: inconclusive"));

    let o = mdsep(&["state", "ghz", "0"]);
    assert!(stdout(&o).contains("spectrum: 0.125 0.125 0.125 0.125 0.125 0.125 0.125 0.125"));
    assert!(stdout(&o).contains("fully separable (certified)"));

    assert_eq!(mdsep(&["state", "cluster", "0.1"]).status.code(), Some(2));
    assert_eq!(mdsep(&["state", "ghz", "1.5"]).status.code(), Some(2));
}

#[test]
fn state_tensor_file_roundtrips() {
    let dir = tempfile::tempdir().unwrap();
    let tensor = dir.path().join("w.json");
    let o = mdsep(&["state", "w", "0.1", "--out", tensor.to_str().unwrap()]);
    assert!(o.status.success());
    let a = json_report(&["analyze", tensor.to_str().unwrap()]);
    let b = json_report(&["analyze", "--state", "w", "--p", "0.1"]);
    assert_eq!(a["spectrum"], b["spectrum"]);
    assert_eq!(a["criteria"][0], b["criteria"][0]);
}

#[test]
fn not_a_density_matrix() {
    let dir = tempfile::tempdir().unwrap();
    let file = write_example_1(dir.path(), 3.0);
    let o = mdsep(&["analyze", &file]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("verdict: not a density matrix"));
}

#[test]
fn parse_errors_carry_context() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\n  \"dense\": [0.1, 0.2,]\n}").unwrap();
    let o = mdsep(&["analyze", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2"), "{}", stderr(&o));

    std::fs::write(&bad, "{\"sparse\": {\"141\": 0.1}}").unwrap();
    let o = mdsep(&["analyze", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("sparse"), "{}", stderr(&o));

    assert_eq!(mdsep(&["analyze"]).status.code(), Some(2));
    assert_eq!(mdsep(&["analyze", "--builtin", "1", "--mode", "4"]).status.code(), Some(2));
}

#[test]
fn hosvd_command() {
    let r = json_report(&["hosvd", "--builtin", "example-1"]);
    assert_eq!(r["factors"].as_array().unwrap().len(), 3);
    assert!(r["reconstruction_error"].as_f64().unwrap() < 1e-12);
    assert_eq!(r["criteria"].as_array().unwrap().len(), 3);
    let r = json_report(&["hosvd", "--builtin", "example-1", "--mode", "2"]);
    assert_eq!(r["criteria"][0]["mode"], 2);
}

#[test]
fn deterministic_output() {
    let a = mdsep(&["analyze", "--builtin", "example-2", "--json", "-"]);
    let b = mdsep(&["analyze", "--builtin", "example-2", "--json", "-"]);
    assert_eq!(a.stdout, b.stdout);
    let a = mdsep(&["decompose", "--builtin", "example-1", "--form", "bisep", "--json", "-"]);
    let b = mdsep(&["decompose", "--builtin", "example-1", "--form", "bisep", "--json", "-"]);
    assert_eq!(a.stdout, b.stdout);
}
