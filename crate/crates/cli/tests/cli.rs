use std::path::Path;
use std::process::{Command, Output};

use confcalc::{list_suites, ExperimentConfig, CSV_HEADER};
use serde_json::Value;

fn confcalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_confcalc")).args(args).output().expect("binary runs")
}

fn write_config(dir: &Path, text: &str) -> String {
    let path = dir.join("config.toml");
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn report(dir: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(dir.join("report.json")).unwrap()).unwrap()
}

#[test]
fn suites_are_listed_in_order() {
    let names: Vec<&str> = list_suites().iter().map(|(n, _)| *n).collect();
    assert_eq!(
        names,
        ["ward-sphere", "ward-halfplane", "drc", "flow", "factorize", "schwarzian", "derivative-props", "all"]
    );
    assert!(list_suites().iter().all(|(_, d)| !d.is_empty() && !d.contains('\n')));
    let out = confcalc(&["--list"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 8);
}

#[test]
fn schwarzian_of_mobius_vanishes() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), "[schwarzian]\nmobius = [[2.0, 0.0], [1.0, 1.0], [0.0, 1.0], [1.0, 0.0]]\n");
    let out_dir = tmp.path().join("out");
    let out = confcalc(&["schwarzian", "--config", &cfg, "--out", out_dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let r = report(&out_dir);
    assert_eq!(r["suite"], "schwarzian");
    assert_eq!(r["pass"], true);
    let mobius: Vec<&Value> = r["checks"].as_array().unwrap().iter().filter(|c| c["name"].as_str().unwrap().starts_with("Mobius")).collect();
    assert_eq!(mobius.len(), 100);
    for c in mobius {
        assert!(c["residual"].as_f64().unwrap() < 1e-12);
        assert_eq!(c["oracle"], serde_json::json!([0.0, 0.0]));
    }
}

#[test]
fn ward_sphere_default_two_point() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), "");
    let out_dir = tmp.path().join("out");
    let out = confcalc(&["ward-sphere", "--config", &cfg, "--out", out_dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out_dir);
    let checks = r["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 20);
    for c in checks {
        let keys: Vec<&str> = c.as_object().unwrap().keys().map(|k| k.as_str()).collect();
        assert_eq!(keys.len(), 6, "{keys:?}");
        assert!(c["residual"].as_f64().unwrap() < 1e-6);
    }
    let csv = std::fs::read_to_string(out_dir.join("ward-sphere.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some(CSV_HEADER));
    assert_eq!(CSV_HEADER, "re_w,im_w,re_value,im_value,residual");
    assert_eq!(lines.count(), 20);
}

#[test]
fn inverted_annulus_is_a_config_error() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), "[factorize]\nrho_a = 1.5\nrho_b = 1.0\n");
    let out = confcalc(&["factorize", "--config", &cfg, "--out", tmp.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("rho_a"), "{err}");
    assert!(!tmp.path().join("report.json").exists());
}

#[test]
fn malformed_and_unknown_input_exit_2() {
    let tmp = tempfile::tempdir().unwrap();
    for text in ["seed = [", "sed = 3\n", "[sphere]\npoints = [[0.0, 0.0]]\ncharges = [1.0, 2.0]\n", "tol = -1.0\n"] {
        let cfg = write_config(tmp.path(), text);
        let out = confcalc(&["flow", "--config", &cfg, "--out", tmp.path().to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(2), "{text}");
        assert!(!out.stderr.is_empty());
    }
    let cfg = write_config(tmp.path(), "");
    assert_eq!(confcalc(&["no-such-suite", "--config", &cfg]).status.code(), Some(2));
    assert_eq!(confcalc(&["flow", "--config", "/nonexistent/config.toml"]).status.code(), Some(2));
}

#[test]
fn numeric_failure_exits_1() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), "");
    let out = confcalc(&["flow", "--config", &cfg, "--out", tmp.path().to_str().unwrap(), "--tol", "1e-300"]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(tmp.path());
    assert_eq!(r["pass"], false);
}

#[test]
fn output_is_deterministic() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), "seed = 7\n");
    let mut files = Vec::new();
    for k in 0..2 {
        let dir = tmp.path().join(format!("run{k}"));
        let out = confcalc(&["all", "--config", &cfg, "--out", dir.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
        let names = ["report.json", "ward-sphere.csv", "ward-halfplane.csv", "drc.csv"];
        files.push(names.map(|n| std::fs::read(dir.join(n)).unwrap()));
    }
    assert_eq!(files[0], files[1]);
    let r: Value = serde_json::from_slice(&files[0][0]).unwrap();
    assert_eq!(r["suite"], "all");
}

#[test]
fn seed_changes_the_trials() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), "[derivative_props]\ntrials = 2\n");
    let mut reports = Vec::new();
    for seed in ["0", "1"] {
        let dir = tmp.path().join(seed);
        let out = confcalc(&["derivative-props", "--config", &cfg, "--out", dir.to_str().unwrap(), "--seed", seed]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
        reports.push(std::fs::read_to_string(dir.join("report.json")).unwrap());
    }
    assert_ne!(reports[0], reports[1]);
}

#[test]
fn factorize_default_passes() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), "[factorize]\nterms = [{ power = -1, coeff = [0.02, 0.0] }, { power = 2, coeff = [0.02, 0.0] }]\n");
    let out = confcalc(&["factorize", "--config", &cfg, "--out", tmp.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(tmp.path());
    let names: Vec<&str> = r["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert!(names.contains(&"largest contraction ratio"));
}

#[test]
fn defaults_round_trip_through_empty_toml() {
    assert_eq!(ExperimentConfig::from_toml("").unwrap(), ExperimentConfig::default());
    assert!(ExperimentConfig::default().with_overrides(None, Some(0.0), None).is_err());
}

#[test]
fn shipped_config_matches_defaults() {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/configs/default.toml")).unwrap();
    let mut cfg = ExperimentConfig::from_toml(&text).unwrap();
    cfg.output.dir = None;
    assert_eq!(cfg, ExperimentConfig::default());
}
