//! Runs the `ntlf` binary end to end.

use ntlf::io::parse_touchstone;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const LPF1: &str = include_str!("../fixtures/lpf1.json");
const SYNTH: &str = include_str!("../fixtures/lpf2_synth.json");

fn ntlf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ntlf")).args(args).output().unwrap()
}

fn write_config(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn run_in(dir: &Path, mode: &str, config: &Path, extra: &[&str]) -> Output {
    let mut args = vec![mode, "--config", config.to_str().unwrap(), "--out-dir", dir.to_str().unwrap()];
    args.extend_from_slice(extra);
    ntlf(&args)
}

/// A small-budget synthesis job; the full defaults take minutes.
pub fn quick_synth() -> String {
    SYNTH.replace(r#""rng_seed": 42"#, r#""rng_seed": 42, "population": 12, "max_evals": 240"#)
}

#[test]
fn verify_reference_design_reports_failure_and_writes_files() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "lpf1.json", LPF1);
    let out = run_in(dir.path(), "verify", &cfg, &[]);
    assert_eq!(out.status.code(), Some(2), "{}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("transition") && stdout.contains("FAIL"));
    for name in ["lpf1.s2p", "lpf1_profile.csv", "lpf1_geometry.svg", "lpf1_report.json"] {
        assert!(dir.path().join(name).is_file(), "{name}");
    }

    let sweep = parse_touchstone(&std::fs::read_to_string(dir.path().join("lpf1.s2p")).unwrap()).unwrap();
    assert_eq!(sweep.entries.len(), 120);
    for p in &sweep.entries {
        // printed values carry 9 decimals
        let power = p.s11.norm_sqr() + p.s21.norm_sqr();
        assert!((power - 1.0).abs() < 1e-7, "{} {power}", p.f);
    }
}

#[test]
fn analyze_exits_zero_and_csv_ends_match() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "line.json", LPF1);
    let out = run_in(dir.path(), "analyze", &cfg, &[]);
    assert_eq!(out.status.code(), Some(0));
    let csv = std::fs::read_to_string(dir.path().join("line_profile.csv")).unwrap();
    let rows: Vec<&str> = csv.lines().collect();
    assert_eq!(rows[0], "z_m,w_over_h,z0_ohms,eps_eff");
    let parse = |row: &str| row.split(',').map(|v| v.parse::<f64>().unwrap()).collect::<Vec<_>>();
    let first = parse(rows[1]);
    let last = parse(rows[rows.len() - 1]);
    assert_eq!(first[0], 0.0);
    for (a, b) in first[1..].iter().zip(&last[1..]) {
        assert!((a - b).abs() <= 1e-12 * a.abs(), "{a} {b}");
    }
}

#[test]
fn configuration_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write_config(dir.path(), "bad.json", &LPF1.replace("\"f_s_hz\": 3e9", "\"f_s_hz\": 1e9"));
    let out = run_in(dir.path(), "verify", &bad, &[]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("f_p < f_s"));

    let unknown = write_config(dir.path(), "unknown.json", &LPF1.replacen('{', "{ \"colour\": 1,", 1));
    assert_eq!(run_in(dir.path(), "verify", &unknown, &[]).status.code(), Some(1));

    // synthesize refuses a config that already carries a profile
    let cfg = write_config(dir.path(), "lpf1.json", LPF1);
    assert_eq!(run_in(dir.path(), "synthesize", &cfg, &[]).status.code(), Some(1));

    let missing = dir.path().join("absent.json");
    assert_eq!(run_in(dir.path(), "verify", &missing, &[]).status.code(), Some(1));
}

#[test]
fn infeasible_synthesis_exits_two_with_report() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "quick.json", &quick_synth());
    let out = run_in(dir.path(), "synthesize", &cfg, &[]);
    assert_eq!(out.status.code(), Some(2), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("quick_report.json")).unwrap()).unwrap();
    assert_eq!(report["feasible"], false);
    assert!(report["evals_used"].as_u64().unwrap() <= 240);
}

#[test]
fn seed_flag_changes_the_search() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let cfg = write_config(a.path(), "quick.json", &quick_synth());
    run_in(a.path(), "synthesize", &cfg, &[]);
    run_in(b.path(), "synthesize", &cfg, &["--seed", "7"]);
    let read = |d: &Path| std::fs::read(d.join("quick_report.json")).unwrap();
    assert_ne!(read(a.path()), read(b.path()));
}
