use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_superspace-delta")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (Value, i32) {
    let out = run(args);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{args:?}: {e}\nstdout: {}\nstderr: {}", String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&out.stderr))
    });
    (v, out.status.code().unwrap())
}

fn csv_rows(out: &Output) -> Vec<(f64, f64)> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .filter(|l| !l.starts_with('#') && *l != "M,E")
        .map(|l| {
            let (m, e) = l.split_once(',').unwrap();
            (m.parse().unwrap(), e.parse().unwrap())
        })
        .collect()
}

#[test]
fn energy_by_super_dimension() {
    let (v, code) = json(&["energy", "--M", "0", "--a", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["E"].as_f64(), Some(-1.0));
    assert_eq!(v["metadata"]["params"]["M"], 0);
    assert_eq!(v["self_consistent"], true);
}

#[test]
fn energy_by_pairs() {
    let (v, code) = json(&["energy", "--m", "1", "--n", "0", "--a", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["E"].as_f64(), Some(-2.0));
    let (v, _) = json(&["energy", "--m", "3", "--n", "2", "--M", "-1"]);
    assert_eq!(v["E"].as_f64(), Some(-1.70251096074));
}

#[test]
fn energy_domain_errors() {
    let out = run(&["energy", "--M", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("M <= 1"));
    assert_eq!(run(&["energy", "--m", "1", "--n", "0", "--M", "-3"]).status.code(), Some(2));
    assert_eq!(run(&["energy", "--m", "1"]).status.code(), Some(2));
    assert_eq!(run(&["energy", "--M", "0", "--a", "-1"]).status.code(), Some(2));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn table_defaults_and_options() {
    let out = run(&["table"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.lines().any(|l| l == "M,E"));
    let rows = csv_rows(&out);
    assert_eq!(rows.len(), 6);
    assert_eq!(rows[0], (1.0, -0.5));
    assert_eq!(rows[5].0, -1000.0);

    let single = csv_rows(&run(&["table", "--M-list", "1"]));
    assert_eq!(single, vec![(1.0, -0.5)]);
    assert_eq!(csv_rows(&run(&["table", "--a", "4", "--M-list", "1"])), vec![(1.0, -8.0)]);
    assert_eq!(run(&["table", "--M-list", "1,3"]).status.code(), Some(2));
    assert_eq!(run(&["table", "--M-list", "x"]).status.code(), Some(2));
}

#[test]
fn wavefunction_classical_normalized() {
    let (v, code) = json(&["wavefunction", "--n", "0", "--a", "1", "--normalize", "--samples", "11", "--xmax", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["validation_passed"], true);
    assert!((v["squared_norm"].as_f64().unwrap() - 1.0).abs() < 1e-11);
    let samples = v["samples"].as_array().unwrap();
    assert_eq!(samples.len(), 11);
    let mid = &samples[5];
    assert_eq!(mid["x"].as_f64(), Some(0.0));
    assert_eq!(mid["body"], v["psi0"]);
    // body ∝ e^{-|x|}
    let at = |i: usize| samples[i]["body"].as_f64().unwrap();
    assert!((at(6) / at(5) - (-0.4f64).exp()).abs() < 1e-11);
}

#[test]
fn wavefunction_single_pair() {
    let (v, code) = json(&["wavefunction", "--n", "1", "--a", "1"]);
    assert_eq!(code, 0);
    let comps = v["components"].as_array().unwrap();
    assert_eq!(comps.len(), 2);
    assert_eq!(comps[0]["xhat_power"], 2);
    assert_eq!(comps[1]["xhat_power"], 0);
    assert_eq!(v["validation"]["jump_ok"], true);
}

#[test]
fn wavefunction_perturbed_fails() {
    let (v, code) = json(&["wavefunction", "--n", "1", "--perturb-energy", "0.01"]);
    assert_eq!(code, 1);
    assert_eq!(v["validation"]["jump_ok"], false);
    assert_eq!(run(&["wavefunction", "--samples", "1"]).status.code(), Some(2));
}

#[test]
fn fermionic_examples() {
    let (v, code) = json(&["fermionic", "--n", "1", "--a", "1"]);
    assert_eq!(code, 0);
    let s = &v["spectrum"];
    assert_eq!(s["zero_geometric_multiplicity"], 2);
    let res: Vec<f64> = s["eigenvalues"].as_array().unwrap().iter().map(|c| c["re"].as_f64().unwrap()).collect();
    assert!(res.contains(&-2.50662827463) && res.contains(&2.50662827463));

    let (v, _) = json(&["fermionic", "--n", "2"]);
    assert_eq!(v["spectrum"]["predicted_level_found"], true);
    assert_eq!(v["spectrum"]["predicted_level"].as_f64(), Some(-4.29005879422));

    let (v, _) = json(&["fermionic", "--n", "3"]);
    assert_eq!(v["spectrum"]["positive_level_found"], true);
    assert_eq!(v["spectrum"]["degeneracy_matches_geometric"], true);

    assert_eq!(run(&["fermionic", "--n", "7"]).status.code(), Some(2));
    assert_eq!(run(&["fermionic", "--n", "0"]).status.code(), Some(2));
}

#[test]
fn verify_levels_and_negative_control() {
    let (v, code) = json(&["verify", "--level", "quick"]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["failed"], 0);
    let (v, code) = json(&["verify", "--level", "full"]);
    assert_eq!(code, 0);
    assert!(v["total"].as_u64().unwrap() > 100);

    let out = run(&["verify", "--perturb-energy", "0.01"]);
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("jump condition"));
}

#[test]
fn deterministic_output_and_out_flag() {
    let a = run(&["fermionic", "--n", "2"]).stdout;
    let b = run(&["fermionic", "--n", "2"]).stdout;
    assert_eq!(a, b);
    assert!(!String::from_utf8_lossy(&a).contains("timestamp"));
    let (v, _) = json(&["energy", "--M", "-1", "--timestamp"]);
    assert!(v["metadata"]["timestamp"].is_u64());

    let dir = std::env::temp_dir().join(format!("superspace-delta-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("table.csv");
    let out = run(&["table", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), run(&["table"]).stdout);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn twelve_significant_digits() {
    let out = run(&["table", "--M-list", "-1"]);
    let text = String::from_utf8_lossy(&out.stdout);
    let row = text.lines().last().unwrap();
    assert_eq!(row, "-1,-1.70251096074");
}
