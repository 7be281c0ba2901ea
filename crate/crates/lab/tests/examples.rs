use std::path::Path;

use semilab::{run, Config, Experiment, LabError, Report};

fn go(text: &str) -> Report {
    run(&Config::parse(text).unwrap()).unwrap()
}

fn configs() -> std::path::PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn load(name: &str) -> Config {
    Config::parse(&std::fs::read_to_string(configs().join(name)).unwrap()).unwrap()
}

fn validation_error(text: &str) -> String {
    match Config::parse(text).and_then(|c| Experiment::from_config(&c)) {
        Ok(_) => panic!("expected a validation error for {text:?}"),
        Err(e) => e.to_string(),
    }
}

#[test]
fn stationary_csv_matches_the_golden_file() {
    let report = run(&load("stationary-phase.conf")).unwrap();
    let golden = include_str!("golden/stationary-phase.csv");
    assert_eq!(report.csv_string().unwrap(), golden);
}

#[test]
fn identical_configs_give_byte_identical_csv() {
    for name in [
        "stationary-phase.conf",
        "catmap-mixing.conf",
        "integrable-transversal.conf",
    ] {
        let a = run(&load(name)).unwrap().csv_string().unwrap();
        let b = run(&load(name)).unwrap().csv_string().unwrap();
        assert_eq!(a, b, "{name}");
    }
}

#[test]
fn summary_json_has_the_documented_keys() {
    let report = run(&load("stationary-phase.conf")).unwrap();
    let v: serde_json::Value = serde_json::from_str(&report.summary_json().unwrap()).unwrap();
    for key in [
        "kind",
        "name",
        "passed",
        "checks",
        "fits",
        "cross_checks",
        "metrics",
        "notes",
        "warnings",
        "config",
        "seed",
        "version",
        "timestamp",
    ] {
        assert!(v.get(key).is_some(), "{key}");
    }
    assert!(v["metrics"]["slope"].is_f64());
    assert_eq!(v["config"]["hbar"], "2^-6, 2^-7, 2^-8, 2^-9, 2^-10, 2^-11");
}

#[test]
fn reduction_at_time_zero_reproduces_the_stationary_pairing() {
    let common = "hbar = 2^-6, 2^-7, 2^-8, 2^-9, 2^-10\nn_factor = 2\nobservable = cos(m=1, n=-1)\nnodes = 800\n";
    let stat = go(&format!(
        "[stationary-phase]\n{common}slope_min = -10\nslope_max = 10\n"
    ));
    let red = go(&format!("[reduction-scan]\n{common}t_max = 4\n"));
    for s in &stat.rows {
        let r = red.rows.iter().find(|r| r.t == 0.0 && r.hbar == s.hbar).unwrap();
        assert!((r.ev_quantum.unwrap() - s.ev_quantum.unwrap()).norm() < 1e-14);
        assert!((r.ev_classical.unwrap() - s.ev_classical.unwrap()).norm() < 1e-12);
    }
}

#[test]
fn constant_observable_pairs_exactly() {
    let report = go("[stationary-phase]\nhbar = 2^-6, 2^-7, 2^-8, 2^-9, 2^-10\nobservable = constant(c=1)\n");
    for r in &report.rows {
        assert!(r.residual.unwrap() < 1e-10, "{:?}", r);
    }
    assert!(
        report.summary.notes.iter().any(|n| n.contains("exact")),
        "{:?}",
        report.summary.notes
    );
}

#[test]
fn zero_amplitude_gives_zero_residuals() {
    let report = go("[reduction-scan]\nhbar = 2^-7, 2^-8\namplitude = zero\nt_max = 5\n");
    assert!(report.rows.iter().all(|r| r.residual == Some(0.0)));
    assert!(report.summary.passed);
}

#[test]
fn catmap_constant_observable_has_unit_expectation() {
    let report = go("[catmap-mixing]\nn = 64\nobservable = constant(c=1)\n");
    for r in &report.rows {
        assert!((r.ev_quantum.unwrap().re - 1.0).abs() < 1e-12, "{:?}", r);
    }
}

#[test]
fn uniform_torus_predicts_zero_for_cos_x() {
    let report = go("[integrable-torus]\nhbar = 2^-8, 2^-9\naction = 0.25\namplitude = uniform\nobservable = cos(m=1)\nt_max = 10\n");
    for r in &report.rows {
        assert!(r.predicted.unwrap().abs() < 1e-14);
        assert!(r.ev_quantum.unwrap().norm() < 1e-12);
    }
}

#[test]
fn transversal_limit_of_cos_x_is_zero() {
    let report = go("[integrable-transversal]\nhbar = 2^-7\nobservable = cos(m=1)\nt_max = 60\n");
    assert!(report.summary.metrics["limit"].abs() < 1e-14);
}

#[test]
fn shipped_configs_all_pass() {
    for entry in std::fs::read_dir(configs()).unwrap() {
        let path = entry.unwrap().path();
        let name = path.file_name().unwrap().to_str().unwrap().to_string();
        if name == "reduction-pendulum.conf" {
            // slow, run by the acceptance target only in its own time budget
            continue;
        }
        let report = run(&load(&name)).unwrap();
        assert!(report.summary.passed, "{name}: {:#?}", report.summary.checks);
    }
}

#[test]
fn validation_rejects_bad_configs() {
    assert!(
        validation_error("[stationary-phase]\nhbar = 2^-6, 2^-7, 2^-8, 2^-9, 2^-10\nfrequency = 3\n")
            .contains("frequency")
    );
    assert!(validation_error("[reduction-scan]\nt_max = 3\n").contains("hbar"));
    assert!(
        validation_error("[stationary-phase]\nhbar = 2^-6, 2^-7, 2^-8, 2^-9, 2^-10\nn_factor = 3\n")
            .contains("n_factor")
    );
    assert!(validation_error("[catmap-mixing]\nmatrix = 2, 1, 1, 2\n").contains("matrix"));
    assert!(validation_error("[integrable-torus]\nhbar = 2^-8, 2^-9\naction = 0.3\n").contains("action"));
    assert!(validation_error("[reduction-scan]\nhbar = 2^-7, 2^-8\nt_max = 3\n").contains("t_max"));
    assert!(validation_error("[nonsense]\n").contains("nonsense"));
    assert!(matches!(
        Config::parse("hbar = 1\n[stationary-phase]\n[catmap-mixing]\n"),
        Err(LabError::Parse { .. })
    ));
}
