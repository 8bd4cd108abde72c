//! End-to-end tests of the `satq` binary.

use std::path::Path;
use std::process::{Command, Output};

fn satq(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_satq"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("failed to launch satq")
}

fn stdout(output: &Output) -> String {
    assert!(
        output.status.success(),
        "satq failed: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    String::from_utf8(output.stdout.clone()).unwrap()
}

#[test]
fn generate_encode_solve_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cnf = dir.path().join("f.cnf");
    let qubo = dir.path().join("f.qubo");

    let out = satq(
        &["generate", "--n", "6", "--m", "12", "--seed", "3", "--out", "f.cnf"],
        dir.path(),
    );
    assert!(out.status.success());
    let text = std::fs::read_to_string(&cnf).unwrap();
    assert!(text.starts_with("p cnf 6 12"));
    assert_eq!(text.lines().count(), 13);

    let out = satq(&["encode", "f.cnf", "--out", "f.qubo"], dir.path());
    assert!(out.status.success());
    let text = std::fs::read_to_string(&qubo).unwrap();
    assert!(text.starts_with("dim 36"));

    // Solving the QUBO file and the CNF file (encoded on the fly) with the
    // same seed must give identical batches.
    let from_qubo = stdout(&satq(
        &["solve", "f.qubo", "--sampler", "sa", "--reads", "20", "--sweeps", "100", "--seed", "7"],
        dir.path(),
    ));
    let from_cnf = stdout(&satq(
        &["solve", "f.cnf", "--sampler", "sa", "--reads", "20", "--sweeps", "100", "--seed", "7"],
        dir.path(),
    ));
    assert_eq!(from_qubo, from_cnf);

    let set: serde_json::Value = serde_json::from_str(&from_qubo).unwrap();
    assert_eq!(set["source_dimension"], 36);
    assert_eq!(set["samples"].as_array().unwrap().len(), 20);
}

#[test]
fn solve_brute_reports_ground_energy() {
    let dir = tempfile::tempdir().unwrap();
    // A trivially satisfiable formula: ground energy is -m = -2.
    std::fs::write(
        dir.path().join("easy.cnf"),
        "p cnf 3 2\n1 2 3 0\n-1 2 3 0\n",
    )
    .unwrap();
    let json = stdout(&satq(&["solve", "easy.cnf", "--sampler", "brute"], dir.path()));
    let set: serde_json::Value = serde_json::from_str(&json).unwrap();
    let energies: Vec<f64> = set["samples"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["energy"].as_f64().unwrap())
        .collect();
    assert!(!energies.is_empty());
    assert!(energies.iter().all(|&e| e == -2.0));
}

#[test]
fn sweep_writes_csv_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let out = satq(
        &[
            "sweep", "--n", "8", "--alpha-grid", "1.0,4.0,7.0", "--instances", "20",
            "--reads", "0", "--seed", "2", "--out", "sweep",
        ],
        dir.path(),
    );
    assert!(out.status.success());
    let csv = std::fs::read_to_string(dir.path().join("sweep.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "alpha,sat_fraction,mean_effort,sampler_success"
    );
    assert_eq!(lines.count(), 3);
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("sweep.json")).unwrap())
            .unwrap();
    assert_eq!(json["rows"].as_array().unwrap().len(), 3);
}

#[test]
fn bias_writes_frequency_table() {
    let dir = tempfile::tempdir().unwrap();
    let out = satq(
        &[
            "bias", "--n", "6", "--m", "10", "--instances", "3", "--sampler", "tabu",
            "--reads", "30", "--sweeps", "100", "--seed", "4", "--out", "bias",
        ],
        dir.path(),
    );
    assert!(out.status.success());
    let csv = std::fs::read_to_string(dir.path().join("bias.csv")).unwrap();
    assert_eq!(csv.lines().next().unwrap(), "instance_id,solution_key,frequency");
}

#[test]
fn confidence_prints_query_count() {
    let dir = tempfile::tempdir().unwrap();
    let out = stdout(&satq(
        &["confidence", "--p", "0.25", "--epsilon", "1e-12"],
        dir.path(),
    ));
    assert_eq!(out.trim(), "97");
}

#[test]
fn errors_exit_nonzero() {
    let dir = tempfile::tempdir().unwrap();

    // Too few variables for a 3SAT clause.
    let out = satq(&["generate", "--n", "2", "--m", "1"], dir.path());
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));

    // Missing input file.
    let out = satq(&["encode", "missing.cnf"], dir.path());
    assert!(!out.status.success());

    // A clause with the wrong arity is rejected.
    std::fs::write(dir.path().join("bad.cnf"), "p cnf 3 1\n1 2 0\n").unwrap();
    let out = satq(&["encode", "bad.cnf"], dir.path());
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("not 3SAT"));

    // Invalid confidence parameters.
    let out = satq(&["confidence", "--p", "1.5", "--epsilon", "0.1"], dir.path());
    assert!(!out.status.success());
}
