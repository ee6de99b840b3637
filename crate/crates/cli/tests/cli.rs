use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_elzaki-qm"));
    cmd.env_remove("ELZAKI_QM_DEFAULT_FORMAT");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn column(v: &Value, key: &str) -> Vec<f64> {
    v["rows"].as_array().unwrap().iter().map(|r| r[key].as_f64().unwrap()).collect()
}

#[test]
fn coulomb_levels() {
    let v = json(&["spectrum", "--potential", "coulomb", "--Z", "1", "--N", "3", "--l", "0", "--n", "0..3"]);
    assert_eq!(v["schema"], 1);
    let e = column(&v, "E_closed");
    let expected = [-0.5, -0.125, -1.0 / 18.0, -0.03125];
    assert!(e.iter().zip(expected).all(|(a, b)| (a - b).abs() < 1e-14), "{e:?}");
    assert_eq!(v["rows"][2]["n"], 2);
}

#[test]
fn harmonic_levels_and_ordering() {
    let v = json(&["spectrum", "--potential", "harmonic", "--omega", "1", "--N", "2", "--l", "1", "--n", "0..1"]);
    assert_eq!(column(&v, "E_closed"), vec![2.0, 4.0]);

    let v = json(&["spectrum", "--potential", "harmonic", "--omega", "1", "--N", "2..3", "--l", "0..1", "--n", "0..1"]);
    let keys: Vec<(u64, u64, u64)> = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| (r["N"].as_u64().unwrap(), r["l"].as_u64().unwrap(), r["n"].as_u64().unwrap()))
        .collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    assert_eq!(keys.len(), 8);
}

#[test]
fn kratzer_fues_verified_against_eigensolver() {
    let v = json(&["spectrum", "--potential", "kratzer-fues", "--D0", "1", "--r0", "1", "--N", "3", "--l", "0", "--n", "0", "--verify"]);
    let row = &v["rows"][0];
    assert!(row["abs_diff"].as_f64().unwrap() <= 1e-6);
    assert_eq!(row["pass"], true);
}

#[test]
fn unbound_rows_carry_an_error_marker() {
    let out = run(&["spectrum", "--potential", "modified-kratzer", "--D0", "1", "--r0", "1", "--n", "0..1"]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["rows"][0]["E_closed"].is_null());
    assert!(v["rows"][0]["error"].as_str().unwrap().contains("no bound state"));
}

#[test]
fn missing_parameter_is_a_usage_error() {
    assert_eq!(run(&["spectrum", "--potential", "coulomb"]).status.code(), Some(2));
    assert_eq!(run(&["spectrum", "--potential", "coulomb", "--Z", "1", "--n", "3..1"]).status.code(), Some(2));
    assert_eq!(run(&["spectrum", "--potential", "coulomb", "--Z", "1", "--units", "hbar=0"]).status.code(), Some(2));
    assert_eq!(run(&["nonsense"]).status.code(), Some(2));
}

#[test]
fn coulomb_ground_state_samples() {
    let v = json(&["wavefunction", "--potential", "coulomb", "--Z", "1", "--N", "3", "--l", "0", "--n", "0"]);
    assert!((v["meta"]["normalization"].as_f64().unwrap() - 2.0).abs() < 1e-10);
    assert_eq!(v["meta"]["energy"], -0.5);
    let r = column(&v, "r");
    let psi = column(&v, "R");
    assert_eq!(r[0], 1e-4);
    assert!((psi[0] - 2.0 * (-1e-4f64).exp()).abs() < 1e-10);
    assert!(psi.iter().rev().take(5).all(|x| x.abs() < 1e-10));
}

#[test]
fn harmonic_first_excited_state_has_one_node() {
    for (n, nodes) in [(0, 0), (1, 1), (3, 3)] {
        let n = n.to_string();
        let v = json(&["wavefunction", "--potential", "harmonic", "--omega", "1", "--N", "3", "--l", "0", "--n", &n]);
        let psi = column(&v, "R");
        let changes = psi.windows(2).filter(|w| w[0].signum() != w[1].signum()).count();
        assert_eq!(changes, nodes, "n = {n}");
    }
}

#[test]
fn wavefunction_csv_has_constant_columns() {
    let out = run(&["wavefunction", "--potential", "coulomb", "--Z", "1", "--format", "csv", "--grid", "0.01,10,500"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("r,R,energy,normalization"));
    assert_eq!(lines.count(), 500);
}

#[test]
fn transforms_of_table_entries() {
    let v = json(&["transform", "t^2"]);
    assert_eq!(v["meta"]["image"], "2*u^4");
    let v = json(&["transform", "exp(2t)*t"]);
    assert_eq!(v["meta"]["image"], "u^3/(1 - 2*u)^2");
    assert_eq!(v["meta"]["radius"], 0.5);

    let v = json(&["transform", "cos(3t)", "--at", "0.1,0.4"]);
    assert_eq!(v["meta"]["image"], "u^2/(1 + 9*u^2)");
    let values = column(&v, "value");
    assert!((values[0] - 0.01 / 1.09).abs() < 1e-15);
    assert!(column(&v, "rel_delta").iter().all(|d| *d <= 1e-9));
}

#[test]
fn transform_errors_exit_two() {
    let out = run(&["transform", "cos(3t"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("position"));
    let out = run(&["transform", "exp(2t)", "--at", "0.6"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("convergence"));
}

#[test]
fn verify_default_passes() {
    let v = json(&["verify"]);
    assert_eq!(v["meta"]["failed"], 0);
    let rows = v["rows"].as_array().unwrap();
    assert!(rows.len() > 100);
    for suite in ["transforms", "mde", "spectrum", "nodes", "orthogonality", "residuals"] {
        assert!(rows.iter().any(|r| r["suite"] == suite), "{suite} missing");
    }
    assert!(rows.iter().all(|r| r["pass"] == true));
}

#[test]
fn verify_tight_tolerance_fails() {
    let out = run(&["verify", "--potential", "coulomb", "--tolerance", "1e-12", "--suite", "spectrum"]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["meta"]["failed"].as_u64().unwrap() > 0);
}

#[test]
fn verify_suite_filter() {
    let v = json(&["verify", "--suite", "transforms"]);
    let rows = v["rows"].as_array().unwrap();
    assert!(!rows.is_empty());
    assert!(rows.iter().all(|r| r["suite"] == "transforms"));
}

#[test]
fn appendix_demos() {
    let v = json(&["appendix", "shm", "--omega", "2", "--y0", "1", "--yp0", "0"]);
    assert_eq!(v["meta"]["solution"], "cos(2*x)");
    assert_eq!(v["meta"]["y_at_0"], 1.0);

    let v = json(&["appendix", "bessel", "--a", "1"]);
    assert_eq!(v["meta"]["solution"], "J0(x)");
    let row = v["rows"].as_array().unwrap().iter().find(|r| r["x"] == 0.7).unwrap().clone();
    assert!(row["residual"].as_f64().unwrap() < 1e-8);

    let v = json(&["appendix", "shift", "--a", "1", "--f", "t"]);
    assert_eq!(v["meta"]["image"], "u^3/(1 + u)^2");
    assert!(column(&v, "rel_delta").iter().all(|d| *d <= 1e-6));

    let v = json(&["appendix", "well", "--width", "2", "--count", "3"]);
    let e = column(&v, "energy");
    let e1 = std::f64::consts::PI.powi(2) / 8.0;
    assert!(e.iter().enumerate().all(|(i, x)| (x - e1 * ((i + 1) * (i + 1)) as f64).abs() < 1e-12));
}

#[test]
fn output_is_deterministic() {
    let args = ["spectrum", "--potential", "pseudoharmonic", "--De", "1", "--re", "1", "--N", "2..4", "--l", "0..2", "--n", "0..2"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let args = ["verify", "--suite", "transforms,mde", "--format", "csv"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn environment_sets_the_default_format() {
    let out = bin()
        .env("ELZAKI_QM_DEFAULT_FORMAT", "csv")
        .args(["spectrum", "--potential", "coulomb", "--Z", "1", "--n", "0..1"])
        .output()
        .unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text, "N,l,n,E_closed,error\n3,0,0,-0.5,\n3,0,1,-0.125,\n");

    let out = bin()
        .env("ELZAKI_QM_DEFAULT_FORMAT", "csv")
        .args(["spectrum", "--potential", "coulomb", "--Z", "1", "--format", "json"])
        .output()
        .unwrap();
    assert!(serde_json::from_slice::<Value>(&out.stdout).is_ok());
}

#[test]
fn out_writes_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("levels.csv");
    let out = run(&["spectrum", "--potential", "harmonic", "--omega", "1", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "N,l,n,E_closed,error\n3,0,0,1.5,\n");
}
