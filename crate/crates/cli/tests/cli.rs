use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn lqvac(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lqvac"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = lqvac(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn csv_rows(args: &[&str]) -> (Vec<String>, Vec<Vec<String>>) {
    let out = lqvac(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let mut r = csv::Reader::from_reader(out.stdout.as_slice());
    let header = r.headers().unwrap().iter().map(String::from).collect();
    let rows = r
        .records()
        .map(|x| x.unwrap().iter().map(String::from).collect())
        .collect();
    (header, rows)
}

#[test]
fn spectrum_example() {
    let v = json(&["spectrum", "--omega0", "1", "--n", "4"]);
    let levels: Vec<f64> = serde_json::from_value(v["result"].clone()).unwrap();
    assert_eq!(levels, vec![0.5, 1.5, 2.5, 3.5, 4.5]);
    assert_eq!(v["inputs"]["command"], "spectrum");
}

#[test]
fn width_example() {
    let v = json(&["width", "--rho", "1", "--t", "0", "--a0", "1", "--m", "1"]);
    let w = v["result"].as_f64().unwrap();
    assert!((w - 5f64.sqrt()).abs() < 1e-15);
    assert!((w - 2.236_068_0).abs() < 1e-7);
}

#[test]
fn casimir_example() {
    let v = json(&["casimir", "--d", "1", "--cutoff", "100"]);
    let f = v["result"]["force"].as_f64().unwrap();
    assert!((f / -0.041_123_35 - 1.0).abs() < 1e-3);
    assert!(v["diagnostics"]["truncation_bound"].as_f64().unwrap() < 1e-6);
}

#[test]
fn exit_codes() {
    assert_eq!(lqvac(&["spectrum", "--n", "-1"]).status.code(), Some(2));
    assert_eq!(lqvac(&["spectrum", "--bogus", "1"]).status.code(), Some(2));
    assert_eq!(lqvac(&["width", "--rho", "1"]).status.code(), Some(2));
    assert_eq!(lqvac(&["scales", "--gamma", "0.02"]).status.code(), Some(2));
    assert_eq!(
        lqvac(&["kinematics", "--omega0", "0.6"]).status.code(),
        Some(2)
    );
    assert_eq!(lqvac(&["casimir", "--cutoff", "5"]).status.code(), Some(2));
    assert_eq!(
        lqvac(&["oracle", "gaussian", "--w-re", "-1"]).status.code(),
        Some(2)
    );
    // An envelope e^(−40) below the oscillatory cancellation floor cannot meet 1e-8.
    let out = lqvac(&["oracle", "gaussian", "--w-re", "0.2", "--r", "4,0,0"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(!out.stderr.is_empty());
    assert_eq!(
        lqvac(&["casimir", "--max-terms", "10"]).status.code(),
        Some(3)
    );
    assert_eq!(lqvac(&["--help"]).status.code(), Some(0));
}

#[test]
fn bad_thread_setting_is_rejected() {
    let out = Command::new(env!("CARGO_BIN_EXE_lqvac"))
        .args(["scales"])
        .env("LQVAC_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn config_file_supplies_and_yields_to_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "w.json",
        r#"{"rho": 1, "t": 0, "a0": 1, "m": 2}"#,
    );
    let v = json(&["width", "--config", &cfg]);
    assert_eq!(v["inputs"]["m"].as_f64(), Some(2.0));
    let v = json(&["width", "--config", &cfg, "--m", "1"]);
    assert!((v["result"].as_f64().unwrap() - 5f64.sqrt()).abs() < 1e-15);

    let vec_cfg = write(dir.path(), "k.json", r#"{"direction": [1, 0, 0]}"#);
    let v = json(&["kinematics", "--config", &vec_cfg]);
    assert_eq!(v["result"][0]["direction"][0].as_f64(), Some(1.0));
    let v = json(&["kinematics", "--config", &vec_cfg, "--direction", "0,-1,0"]);
    assert_eq!(v["result"][0]["direction"][1].as_f64(), Some(-1.0));

    let unknown = write(dir.path(), "u.json", r#"{"rho": 1, "t": 0, "colour": 3}"#);
    assert_eq!(
        lqvac(&["width", "--config", &unknown]).status.code(),
        Some(2)
    );
    let broken = write(dir.path(), "b.json", "{rho: 1");
    assert_eq!(
        lqvac(&["width", "--config", &broken]).status.code(),
        Some(2)
    );
    assert_eq!(
        lqvac(&["width", "--config", "/nonexistent/x.json"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn out_path_receives_output() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.json");
    let out = lqvac(&["scales", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    assert_eq!(v["result"]["lifetime"].as_f64(), Some(100.0));
}

fn flatten(v: &Value, out: &mut Vec<f64>) {
    match v {
        Value::Number(n) => out.push(n.as_f64().unwrap()),
        Value::Array(a) => a.iter().for_each(|x| flatten(x, out)),
        _ => {}
    }
}

type Extract = Box<dyn Fn(&Value) -> Vec<f64>>;

#[test]
fn csv_and_json_agree() {
    let cases: Vec<(Vec<&str>, &str, Extract)> = vec![
        (
            vec!["spectrum", "--omega0", "0.3", "--n", "6"],
            "energy",
            Box::new(|v: &Value| {
                let mut o = Vec::new();
                flatten(&v["result"], &mut o);
                o
            }),
        ),
        (
            vec!["density", "joint", "--n-rho", "4", "--n-theta", "3"],
            "value",
            Box::new(|v: &Value| {
                let mut o = Vec::new();
                flatten(&v["result"]["values"], &mut o);
                o
            }),
        ),
        (
            vec!["width-profile", "--rho", "2", "--samples", "40"],
            "width",
            Box::new(|v: &Value| {
                let mut o = Vec::new();
                flatten(&v["result"]["widths"], &mut o);
                o
            }),
        ),
        (
            vec!["casimir", "--d", "1.5", "--cutoff", "200"],
            "force",
            Box::new(|v: &Value| vec![v["result"]["force"].as_f64().unwrap()]),
        ),
        (
            vec!["oracle", "lineshape", "--x", "-500,700"],
            "modulus",
            Box::new(|v: &Value| {
                v["result"]
                    .as_array()
                    .unwrap()
                    .iter()
                    .map(|r| r["modulus"].as_f64().unwrap())
                    .collect()
            }),
        ),
        (
            vec!["zbw", "run", "--cycles", "20", "--seed", "5"],
            "x",
            Box::new(|v: &Value| {
                v["result"]["cycles"]
                    .as_array()
                    .unwrap()
                    .iter()
                    .map(|c| c["position"][0].as_f64().unwrap())
                    .collect()
            }),
        ),
    ];
    for (args, column, extract) in cases {
        let from_json = extract(&json(&args));
        let mut csv_args = args.clone();
        csv_args.extend(["--format", "csv"]);
        let (header, rows) = csv_rows(&csv_args);
        let col = header.iter().position(|h| h == column).unwrap();
        let from_csv: Vec<f64> = rows.iter().map(|r| r[col].parse().unwrap()).collect();
        assert_eq!(from_json.len(), from_csv.len(), "{args:?}");
        for (a, b) in from_json.iter().zip(&from_csv) {
            assert!(
                a == b || (a - b).abs() <= 1e-15 * a.abs(),
                "{args:?}: {a} vs {b}"
            );
        }
    }
}

#[test]
fn oscillator_solve_vectors() {
    let (header, rows) = csv_rows(&[
        "oscillator-solve",
        "--n-points",
        "101",
        "--states",
        "2",
        "--vectors",
        "--format",
        "csv",
    ]);
    assert_eq!(
        header,
        [
            "x",
            "psi_plus_0",
            "psi_plus_1",
            "psi_minus_0",
            "psi_minus_1"
        ]
    );
    assert_eq!(rows.len(), 101);
    let v = json(&["oscillator-solve", "--n-points", "400", "--states", "3"]);
    for o in v["result"]["overlaps"].as_array().unwrap() {
        assert!(o.as_f64().unwrap() > 1.0 - 1e-10);
    }
}

#[test]
fn low_energy_warning_goes_to_stderr() {
    let out = lqvac(&["scales", "--omega0", "0.3", "--gamma", "0.01"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("low-energy"));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["diagnostics"]["low_energy"], Value::Bool(false));
}
