//! Drives the `mstc` binary end to end.

use std::collections::HashMap;
use std::path::Path;
use std::process::{Command, Output};

use mstc_core::MetricSeries;

fn mstc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mstc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_ok(args: &[&str]) -> Output {
    let out = mstc(args);
    assert!(
        out.status.success(),
        "mstc {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

/// `(key, scheme) -> value` from `summary.csv`.
fn summary(dir: &Path) -> HashMap<(String, String), String> {
    let mut r = csv::Reader::from_path(dir.join("summary.csv")).unwrap();
    assert_eq!(r.headers().unwrap(), vec!["key", "scheme", "value"]);
    r.records()
        .map(|rec| {
            let rec = rec.unwrap();
            ((rec[0].to_string(), rec[1].to_string()), rec[2].to_string())
        })
        .collect()
}

fn num(s: &HashMap<(String, String), String>, key: &str, scheme: &str) -> f64 {
    s[&(key.to_string(), scheme.to_string())].parse().unwrap()
}

#[test]
fn complexity_summary() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    run_ok(&["--kind", "complexity", "--set", "n=128", "--out", out]);
    let s = summary(dir.path());
    for (scheme, m, a) in [("conventional", 1536.0, 2560.0), ("cstc", 640.0, 1088.0), ("mstc", 256.0, 448.0)] {
        assert_eq!(num(&s, "multiplications", scheme), m);
        assert_eq!(num(&s, "additions", scheme), a);
    }
    let series = MetricSeries::load(&dir.path().join("complexity_multiplications_mstc.csv")).unwrap();
    assert_eq!(series.x, vec![8.0, 16.0, 32.0, 64.0, 128.0]);
    assert_eq!(series.y.last(), Some(&256.0));
}

#[test]
fn timedomain_durations() {
    let dir = tempfile::tempdir().unwrap();
    run_ok(&["--kind", "timedomain", "--out", dir.path().to_str().unwrap()]);
    let s = summary(dir.path());
    for (scheme, us, ratio) in [("conventional", 83.33, "1"), ("cstc", 41.67, "1/2"), ("mstc", 20.83, "1/4")] {
        assert!((num(&s, "symbol_duration_us", scheme) - us).abs() < 0.005);
        assert_eq!(s[&("symbol_duration_ratio".to_string(), scheme.to_string())], ratio);
    }
    let td = MetricSeries::load(&dir.path().join("timedomain_mstc.csv")).unwrap();
    assert_eq!(td.len(), 80);
}

#[test]
fn outputs_are_byte_identical_for_same_seed() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for d in [&a, &b] {
        run_ok(&[
            "--kind", "papr_ccdf", "--seed", "9", "--set", "trials=20000", "--set", "sweep_sizes=32,64",
            "--jobs", "2", "--out", d.path().to_str().unwrap(),
        ]);
    }
    let mut names: Vec<_> = std::fs::read_dir(a.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    names.sort();
    assert_eq!(names.len(), 6);
    for n in names {
        assert_eq!(std::fs::read(a.path().join(&n)).unwrap(), std::fs::read(b.path().join(&n)).unwrap());
    }
    let s = summary(a.path());
    assert!(num(&s, "papr_reduction_db", "mstc") > 0.0);
    assert!(num(&s, "papr_db_at_ccdf_n64", "conventional") > 0.0);
}

#[test]
fn ber_runs_selected_schemes() {
    let dir = tempfile::tempdir().unwrap();
    run_ok(&[
        "--kind", "ber", "--schemes", "conventional,mstc", "--seed", "7",
        "--set", "ebn0_max=4", "--set", "ebn0_step=2", "--set", "min_bits=20000",
        "--set", "target_ber=0.02", "--out", dir.path().to_str().unwrap(),
    ]);
    let c = MetricSeries::load(&dir.path().join("ber_conventional_bpsk.csv")).unwrap();
    assert_eq!(c.x, vec![0.0, 2.0, 4.0]);
    assert!(c.y.windows(2).all(|w| w[1] < w[0]));
    assert!(!dir.path().join("ber_cstc_bpsk.csv").exists());
    let s = summary(dir.path());
    assert_eq!(num(&s, "bits_per_complex_sample", "mstc"), 2.0);
    assert!((num(&s, "ebn0_db_at_ber", "mstc") - num(&s, "ebn0_db_at_ber_theory", "mstc")).abs() < 0.5);
}

#[test]
fn qam_compare_gap() {
    let dir = tempfile::tempdir().unwrap();
    run_ok(&[
        "--kind", "ber_qam_compare", "--set", "ebn0_min=2", "--set", "ebn0_max=10",
        "--set", "min_bits=50000", "--set", "target_ber=0.01", "--out", dir.path().to_str().unwrap(),
    ]);
    let s = summary(dir.path());
    let gap = num(&s, "ebn0_gap_db", "-");
    let theory = num(&s, "ebn0_gap_db_theory", "-");
    assert!((gap - theory).abs() < 0.75, "gap {gap} vs {theory}");
    assert!((num(&s, "ebn0_gap_db_theory_at_1e-6", "-") - 3.9).abs() < 0.2);
    assert!(dir.path().join("ber_conventional_qam16.csv").exists());
    assert!(dir.path().join("ber_mstc_bpsk.csv").exists());
}

#[test]
fn psd_bandwidths() {
    let dir = tempfile::tempdir().unwrap();
    run_ok(&["--kind", "psd", "--set", "symbols=4000", "--out", dir.path().to_str().unwrap()]);
    let s = summary(dir.path());
    assert!((num(&s, "occupied_bandwidth_hz", "conventional") / 180e3 - 1.0).abs() < 0.05);
    assert!((num(&s, "bandwidth_ratio", "cstc") - 0.5).abs() < 0.02);
    assert!((num(&s, "bandwidth_ratio", "mstc") - 0.25).abs() < 0.02);
    let psd = MetricSeries::load(&dir.path().join("psd_mstc.csv")).unwrap();
    assert_eq!(psd.len(), 4096);
    assert_eq!(psd.meta["scheme"], "mstc");
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "n = 64\n").unwrap();
    let out = dir.path().join("out");
    let (c, o) = (cfg.to_str().unwrap(), out.to_str().unwrap());
    run_ok(&["--kind", "complexity", "--config", c, "--out", o]);
    assert_eq!(num(&summary(&out), "n", "-"), 64.0);
    run_ok(&["--kind", "complexity", "--config", c, "--set", "n=256", "--out", o]);
    assert_eq!(num(&summary(&out), "n", "-"), 256.0);
}

#[test]
fn list_kinds() {
    let out = run_ok(&["--kind", "list"]);
    let text = String::from_utf8(out.stdout).unwrap();
    for k in ["papr_ccdf", "ber", "ber_qam_compare", "psd", "timedomain", "complexity"] {
        assert!(text.lines().any(|l| l.starts_with(k)), "{k} missing");
    }
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let o = dir.path().to_str().unwrap();
    assert_eq!(mstc(&["--out", o]).status.code(), Some(1));
    assert_eq!(mstc(&["--kind", "nope", "--out", o]).status.code(), Some(1));
    assert_eq!(mstc(&["--kind", "psd", "--set", "n=4", "--out", o]).status.code(), Some(1));
    assert_eq!(mstc(&["--kind", "ber", "--set", "modulation=qam16", "--out", o]).status.code(), Some(1));
    assert_eq!(mstc(&["--help"]).status.code(), Some(0));

    let blocker = dir.path().join("file");
    std::fs::write(&blocker, "").unwrap();
    let under_file = blocker.join("sub");
    let out = mstc(&["--kind", "complexity", "--out", under_file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("sub"));
}
