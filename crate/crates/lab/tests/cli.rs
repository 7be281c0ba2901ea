use std::path::{Path, PathBuf};
use std::process::Command;

use semilab::cli::{main_with, EXIT_CHECK_FAILED, EXIT_ERROR, EXIT_NO_INPUT, EXIT_PASS, EXIT_USAGE, OUTPUT_DIR_ENV};

fn configs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["semilab"];
    argv.extend_from_slice(args);
    let code = main_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn write_config(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

const STATIONARY_SMALL: &str = "name = small\n[stationary-phase]\nhbar = 2^-6, 2^-7, 2^-8, 2^-9, 2^-10\n";

#[test]
fn validate_prints_ok() {
    let cfg = configs().join("stationary-phase.conf");
    let (code, out, _) = run(&["validate", cfg.to_str().unwrap()]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(out, "OK\n");
}

#[test]
fn every_shipped_config_validates() {
    for entry in std::fs::read_dir(configs()).unwrap() {
        let path = entry.unwrap().path();
        let (code, _, err) = run(&["validate", path.to_str().unwrap()]);
        assert_eq!(code, EXIT_PASS, "{}: {err}", path.display());
    }
}

#[test]
fn list_catalog_prints_one_name_per_line() {
    let (code, out, _) = run(&["list-catalog"]);
    assert_eq!(code, EXIT_PASS);
    let names: Vec<&str> = out.lines().collect();
    assert!(names.contains(&"pendulum-H") && names.contains(&"rotor-H") && names.contains(&"cos"));
    assert_eq!(names.len(), semiclassical::symbols::catalog::names().count());
}

#[test]
fn version_and_help_exit_zero() {
    let (code, out, _) = run(&["version"]);
    assert_eq!(code, EXIT_PASS);
    assert!(out.starts_with("semilab "));
    assert_eq!(run(&["--help"]).0, EXIT_PASS);
    assert_eq!(run(&["--version"]).0, EXIT_PASS);
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(run(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(run(&["run", "x.conf", "--bogus"]).0, EXIT_USAGE);
    assert_eq!(run(&["run"]).0, EXIT_USAGE);
    assert_eq!(run(&[]).0, EXIT_USAGE);
}

#[test]
fn missing_config_exits_66() {
    let (code, _, err) = run(&["run", "/nonexistent/semilab.conf"]);
    assert_eq!(code, EXIT_NO_INPUT);
    assert!(err.contains("nonexistent"));
    assert_eq!(run(&["validate", "/nonexistent/semilab.conf"]).0, EXIT_NO_INPUT);
}

#[test]
fn passing_run_exits_zero_and_writes_both_files() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "ok.conf", STATIONARY_SMALL);
    let out_dir = dir.path().join("out");
    let (code, out, err) = run(&["run", &cfg, "--out", out_dir.to_str().unwrap()]);
    assert_eq!(code, EXIT_PASS, "{out}{err}");
    assert!(out.contains("PASS slope_window"));
    assert!(out_dir.join("small.csv").exists() && out_dir.join("small.json").exists());
}

#[test]
fn failed_check_exits_2_and_runtime_error_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("out");
    let out_arg = out_dir.to_str().unwrap();

    // impossible slope window: the computation succeeds, the gate does not
    let failing = write_config(
        dir.path(),
        "fail.conf",
        &format!("{STATIONARY_SMALL}slope_min = 5\nslope_max = 6\n"),
    );
    let (code, out, _) = run(&["run", &failing, "--out", out_arg]);
    assert_eq!(code, EXIT_CHECK_FAILED);
    assert!(out.contains("FAIL slope_window"));

    // phase winding 0.3 is not in 2πħℤ: the state cannot be built
    let broken = write_config(
        dir.path(),
        "err.conf",
        &format!("{STATIONARY_SMALL}phase_slope = 0.3\n"),
    );
    assert_eq!(run(&["validate", &broken]).0, EXIT_PASS);
    let (code, _, err) = run(&["run", &broken, "--out", out_arg]);
    assert_eq!(code, EXIT_ERROR);
    assert!(err.starts_with("error:"));

    let invalid = write_config(
        dir.path(),
        "bad.conf",
        "[stationary-phase]\nhbar = 2^-6, 2^-7, 2^-8, 2^-9, 2^-10\nfoo = 1\n",
    );
    assert_eq!(run(&["validate", &invalid]).0, EXIT_ERROR);
    assert_eq!(run(&["run", &invalid, "--out", out_arg]).0, EXIT_ERROR);
}

#[test]
fn binary_honours_the_exit_contract_and_output_env() {
    let bin = env!("CARGO_BIN_EXE_semilab");
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "ok.conf", STATIONARY_SMALL);
    let env_out = dir.path().join("from-env");
    let status = Command::new(bin)
        .args(["run", &cfg])
        .env(OUTPUT_DIR_ENV, &env_out)
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(EXIT_PASS));
    assert!(env_out.join("small.csv").exists());

    let failing = write_config(
        dir.path(),
        "fail.conf",
        &format!("{STATIONARY_SMALL}slope_min = 5\nslope_max = 6\n"),
    );
    let broken = write_config(
        dir.path(),
        "err.conf",
        &format!("{STATIONARY_SMALL}phase_slope = 0.3\n"),
    );
    for (args, want) in [
        (vec!["run", failing.as_str()], EXIT_CHECK_FAILED),
        (vec!["run", broken.as_str()], EXIT_ERROR),
        (vec!["nope"], EXIT_USAGE),
        (vec!["validate", "/nonexistent.conf"], EXIT_NO_INPUT),
        (vec!["list-catalog"], EXIT_PASS),
    ] {
        let o = Command::new(bin)
            .args(&args)
            .env(OUTPUT_DIR_ENV, &env_out)
            .output()
            .unwrap();
        assert_eq!(o.status.code(), Some(want), "{args:?}");
    }
}
