//! End-to-end tests of the `choquetq` binary: file I/O, output formats,
//! determinism and exit codes.

use choquetq_cli::matrix_io::MatrixFile;
use choquetq_cli::scenarios;
use std::path::Path;
use std::process::{Command, Output};

fn choquetq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_choquetq"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn choquetq_in(dir: &Path, args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_choquetq"));
    cmd.current_dir(dir).args(args);
    for (k, v) in envs {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn write_benchmark_matrix(dir: &Path) -> std::path::PathBuf {
    let path = dir.join("theta.json");
    MatrixFile::from_matrix(&scenarios::noise_base())
        .save(&path)
        .unwrap();
    path
}

#[test]
fn qfunc_csv_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let matrix = write_benchmark_matrix(dir.path());
    let out = choquetq(&["qfunc", "--matrix", matrix.to_str().unwrap(), "--out", "csv"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("alpha,beta,q\n"));
    assert_eq!(text.lines().count(), 10);

    let out = choquetq(&["qfunc", "--matrix", matrix.to_str().unwrap(), "--out", "json"]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["values"].as_array().unwrap().len(), 9);
    assert!((json["trace"].as_f64().unwrap() - 19.0).abs() < 1e-9);
}

#[test]
fn choquet_emits_operator_trace_ratio() {
    let dir = tempfile::tempdir().unwrap();
    let matrix = write_benchmark_matrix(dir.path());
    let m = matrix.to_str().unwrap();

    let out = choquetq(&["choquet", "--matrix", m]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["eigen_pairs"].as_array().unwrap().len(), 3);
    assert_eq!(json["dominant_points"].as_array().unwrap().len(), 3);

    let out = choquetq(&["choquet", "--matrix", m, "--emit", "trace"]);
    let trace: f64 = String::from_utf8(out.stdout).unwrap().trim().parse().unwrap();
    assert!((trace - 24.4286).abs() < 1e-3);

    let out = choquetq(&["choquet", "--matrix", m, "--emit", "ratio"]);
    let ratio: f64 = String::from_utf8(out.stdout).unwrap().trim().parse().unwrap();
    assert!((ratio - 0.42857).abs() < 1e-4);
}

#[test]
fn pfunc_reports_weights_and_conditioning() {
    let dir = tempfile::tempdir().unwrap();
    let matrix = write_benchmark_matrix(dir.path());
    let out = choquetq(&["pfunc", "--matrix", matrix.to_str().unwrap()]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(json["residual"].as_f64().unwrap() < 1e-8);
    assert!(json["condition_number"].as_f64().unwrap() < 10.0);
    let sum: f64 = json["values"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_f64().unwrap())
        .sum();
    assert!((sum - 19.0).abs() < 1e-8);
}

#[test]
fn scan_reports_intervals() {
    let dir = tempfile::tempdir().unwrap();
    let (t1, t2) = scenarios::crossing_pair();
    let p1 = dir.path().join("t1.json");
    let p2 = dir.path().join("t2.json");
    MatrixFile::from_matrix(&t1).save(&p1).unwrap();
    MatrixFile::from_matrix(&t2).save(&p2).unwrap();
    let out = choquetq(&[
        "scan",
        "--theta1",
        p1.to_str().unwrap(),
        "--theta2",
        p2.to_str().unwrap(),
        "--lmin",
        "0",
        "--lmax",
        "0.7",
        "--grid",
        "200",
        "--tol",
        "1e-6",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["intervals"].as_array().unwrap().len(), 5);
    assert_eq!(json["crossings"].as_array().unwrap().len(), 4);
    let first = json["crossings"][0]["lambda"].as_f64().unwrap();
    assert!((first - 0.0722).abs() < 1e-3);
}

#[test]
fn bounds_partition_json() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("h.json");
    MatrixFile::from_matrix(&scenarios::section8_matrix())
        .save(&path)
        .unwrap();
    let out = choquetq(&[
        "bounds",
        "partition",
        "--matrix",
        path.to_str().unwrap(),
        "--lambda",
        "1.0",
    ]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!((json["z"].as_f64().unwrap() - 0.4403).abs() < 1e-3);
    assert!(json["upper_holds"].as_bool().unwrap());
    assert!(json["lower_holds"].as_bool().unwrap());
}

#[test]
fn reproduce_students_and_alias() {
    let out = choquetq(&["reproduce", "students"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("candidate A: choquet 70"));
    assert!(text.contains("48 + 22 + 0"));

    let alias = choquetq(&["students-demo"]);
    assert!(alias.status.success());
    assert!(String::from_utf8(alias.stdout).unwrap().contains("candidate D: choquet 63"));
}

#[test]
fn reproduce_table_outputs_are_deterministic() {
    let dir1 = tempfile::tempdir().unwrap();
    let dir2 = tempfile::tempdir().unwrap();
    for dir in [&dir1, &dir2] {
        let out = choquetq_in(
            dir.path(),
            &[
                "reproduce",
                "table1",
                "--seed",
                "7",
                "--trials",
                "50",
                "--out",
                "run",
            ],
            &[],
        );
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
    let a = std::fs::read(dir1.path().join("run/table1.csv")).unwrap();
    let b = std::fs::read(dir2.path().join("run/table1.csv")).unwrap();
    assert_eq!(a, b, "same seed and flags must give byte-identical CSV");

    // A different seed changes the trial rows.
    let out = choquetq_in(
        dir1.path(),
        &[
            "reproduce", "table1", "--seed", "8", "--trials", "50", "--out", "other",
        ],
        &[],
    );
    assert!(out.status.success());
    let c = std::fs::read(dir1.path().join("other/table1.csv")).unwrap();
    assert_ne!(a, c);
}

#[test]
fn reproduce_exits_nonzero_when_cells_drift() {
    // An absurdly tight tolerance forces mismatches; exit code must be
    // nonzero and the mismatching cells reported.
    let out = choquetq_in(
        std::env::temp_dir().as_path(),
        &["reproduce", "table3"],
        &[("CHOQUETQ_TOL", "1e-12")],
    );
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("MISMATCH"));

    // Default tolerance passes.
    let out = choquetq_in(std::env::temp_dir().as_path(), &["reproduce", "table3"], &[]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn rejects_non_psd_matrix() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    let mut m = scenarios::noise_base();
    m[(0, 0)] = choquetq_core::Complex::new(-50.0, 0.0);
    MatrixFile::from_matrix(&m).save(&path).unwrap();
    let out = choquetq(&["qfunc", "--matrix", path.to_str().unwrap()]);
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("not positive semidefinite"), "stderr: {err}");
}

#[test]
fn reproduce_table2_and_table4_succeed() {
    for table in ["table2", "table4"] {
        let out = choquetq(&["reproduce", table]);
        assert!(
            out.status.success(),
            "{table}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        assert!(String::from_utf8_lossy(&out.stdout).contains("all matched cells"));
    }
}
