use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_torsion3"))
}

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

#[test]
fn conductor_of_x0_40() {
    let out = run(&["conductor", "--in", data("x0_40_ramification.json").to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "5");
}

#[test]
fn conductor_rejects_a_broken_chain() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.json");
    std::fs::write(&p, r#"{"groups":[{"order":24,"fixed_dim":2},{"order":5,"fixed_dim":4}]}"#).unwrap();
    let out = run(&["conductor", "--in", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("divide"));
}

#[test]
fn scheme_is_written_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("scheme.json");
    let out = run(&["scheme", "--curve", data("odd.json").to_str().unwrap(), "--out", p.to_str().unwrap()]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&p).unwrap()).unwrap();
    assert_eq!(doc["parity"], "odd");
    assert_eq!(doc["equations"].as_array().unwrap().len(), 10);
}

#[test]
fn orbit_files_verify() {
    for c in ["x0_40", "x0_30"] {
        let out = run(&[
            "verify",
            "--curve",
            data(&format!("{c}.json")).to_str().unwrap(),
            "--in",
            data(&format!("{c}_orbits.json")).to_str().unwrap(),
        ]);
        assert!(out.status.success(), "{c}");
        assert_eq!(json(&out)["passed"], true);
    }
}

#[test]
fn corrupted_orbit_fails_verification() {
    let text = std::fs::read_to_string(data("x0_40_orbits.json")).unwrap();
    let mut doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    doc[2]["relations"]["alpha4"]["coeffs"][0] = "4".into();
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("orbits.json");
    std::fs::write(&p, doc.to_string()).unwrap();
    let out = run(&["verify", "--curve", data("x0_40.json").to_str().unwrap(), "--in", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["passed"], false);
}

#[test]
fn bad_input_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("curve.json");
    std::fs::write(&p, r#"{"degree": 6, "coeffs": ["1","0","0","0","0","0","1"]}"#).unwrap();
    let out = run(&["scheme", "--curve", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["solve", "--curve", data("x0_40.json").to_str().unwrap(), "--digits", "50"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn smoke_solve_then_verify_residuals() {
    let dir = tempfile::tempdir().unwrap();
    let sols = dir.path().join("sols.json");
    let curve = data("x0_40.json");
    let out = run(&["solve", "--smoke", "--digits", "120", "--curve", curve.to_str().unwrap(), "--out", sols.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let list: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&sols).unwrap()).unwrap();
    assert!(!list.as_array().unwrap().is_empty());

    // a sample cannot complete the census, so verification fails on that alone
    let out = run(&["verify", "--digits", "120", "--curve", curve.to_str().unwrap(), "--in", sols.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let doc = json(&out);
    assert_eq!(doc["residuals"]["passed"], true);
    assert_eq!(doc["census"]["passed"], false);

    let refined = dir.path().join("refined.json");
    let out = run(&["refine", "--digits", "200", "--curve", curve.to_str().unwrap(), "--in", sols.to_str().unwrap(), "--out", refined.to_str().unwrap()]);
    assert!(out.status.success());
    let out = run(&["verify", "--digits", "200", "--curve", curve.to_str().unwrap(), "--in", refined.to_str().unwrap()]);
    assert_eq!(json(&out)["residuals"]["passed"], true);
}
