use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use srgbm_harness::{Experiment, ExperimentConfig, ResultTable};

fn srgbm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_srgbm"))
        .args(args)
        .env("SRGBM_THREADS", "1")
        .output()
        .expect("binary runs")
}

fn write_config(dir: &Path, body: &str) -> String {
    let path = dir.join("run.toml");
    fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_owned()
}

#[test]
fn simulate_writes_all_artefacts() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sp");
    let cfg = write_config(dir.path(), "experiment = \"single-path\"\nhorizon = 5.0\n");
    let res = srgbm(&["simulate", "--config", &cfg, "--out", out.to_str().unwrap(), "--plots"]);
    assert_eq!(res.status.code(), Some(0), "{}", String::from_utf8_lossy(&res.stderr));
    for file in ["single-path.csv", "single-path.svg", "config.toml", "meta.txt"] {
        assert!(out.join(file).is_file(), "{file} missing");
    }
    let meta = fs::read_to_string(out.join("meta.txt")).unwrap();
    assert!(meta.contains("master_seed") && meta.contains("config_sha256"));
    let table = ResultTable::load(&out.join("single-path.csv")).unwrap();
    assert_eq!(table.rows.len(), 501);
    // The saved config reproduces the run.
    let saved = fs::read_to_string(out.join("config.toml")).unwrap();
    let back = ExperimentConfig::from_toml(&saved, Experiment::SinglePath, None).unwrap();
    assert_eq!(back.horizon, 5.0);
}

#[test]
fn reruns_are_byte_identical_and_seed_sensitive() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "experiment = \"ergodicity-sweep\"\nhorizon = 50.0\nn_list = [1, 10]\nr_list = [0.0, 0.05]\nrealizations = 5\n",
    );
    let run = |name: &str, seed: &str| {
        let out = dir.path().join(name);
        let res = srgbm(&["sweep", "--config", &cfg, "--seed", seed, "--out", out.to_str().unwrap()]);
        assert_eq!(res.status.code(), Some(0), "{}", String::from_utf8_lossy(&res.stderr));
        fs::read(out.join("ergodicity-sweep.csv")).unwrap()
    };
    let a = run("a", "7");
    assert_eq!(a, run("b", "7"));
    assert_ne!(a, run("c", "8"));
}

#[test]
fn bad_configuration_exits_with_2() {
    let dir = tempfile::tempdir().unwrap();
    let unknown = write_config(dir.path(), "experiment = \"single-path\"\nmoo = 1\n");
    assert_eq!(srgbm(&["simulate", "--config", &unknown]).status.code(), Some(2));
    let negative = write_config(dir.path(), "experiment = \"single-path\"\nr = -0.1\n");
    assert_eq!(srgbm(&["simulate", "--config", &negative]).status.code(), Some(2));
    let wrong = write_config(dir.path(), "experiment = \"self-averaging\"\n");
    assert_eq!(srgbm(&["sweep", "--config", &wrong]).status.code(), Some(2));
    assert_eq!(srgbm(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(srgbm(&["print-config", "nope"]).status.code(), Some(2));
}

#[test]
fn coarse_step_exits_with_3() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "experiment = \"single-path\"\nsigma2 = 100.0\ndt = 0.5\nr = 0.0\nhorizon = 100.0\n",
    );
    let out = dir.path().join("o");
    let res = srgbm(&["simulate", "--config", &cfg, "--out", out.to_str().unwrap()]);
    assert_eq!(res.status.code(), Some(3), "{}", String::from_utf8_lossy(&res.stderr));
}

#[test]
fn unwritable_output_exits_with_4() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    fs::write(&blocker, "x").unwrap();
    let out = blocker.join("sub");
    let res = srgbm(&["table", "--out", out.to_str().unwrap()]);
    assert_eq!(res.status.code(), Some(4), "{}", String::from_utf8_lossy(&res.stderr));
}

#[test]
fn print_config_round_trips_for_every_experiment() {
    for exp in Experiment::ALL {
        let res = srgbm(&["print-config", exp.name()]);
        assert_eq!(res.status.code(), Some(0));
        let text = String::from_utf8(res.stdout).unwrap();
        let parsed = ExperimentConfig::from_toml(&text, Experiment::SinglePath, None).unwrap();
        assert_eq!(parsed.experiment, exp);
        assert_eq!(parsed.hash(), ExperimentConfig::defaults(exp).hash());
    }
}

#[test]
fn help_and_version_exit_with_0() {
    assert_eq!(srgbm(&["--help"]).status.code(), Some(0));
    assert_eq!(srgbm(&["--version"]).status.code(), Some(0));
}
