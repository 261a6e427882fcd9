//! End-to-end tests of the command-line interface via the built binary.

use std::process::Command;

use dexcal::gauge::{self, GaugeField};
use dexcal::lattice::Lattice;
use dexcal::serial;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn dexcal() -> Command {
    Command::new(env!("CARGO_BIN_EXE_dexcal"))
}

#[test]
fn verify_passes_with_many_checks() {
    let out = dexcal().arg("verify").output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let passes = text.lines().filter(|l| l.starts_with("PASS")).count();
    assert!(passes >= 40, "only {passes} checks");
    assert!(!text.contains("FAIL"));
}

#[test]
fn verify_is_deterministic_under_fixed_seed() {
    let run = || dexcal().args(["verify", "--seed", "7"]).output().unwrap().stdout;
    assert_eq!(run(), run());
}

#[test]
fn verify_detects_injected_hodge_sign_flip() {
    let out = dexcal()
        .arg("verify")
        .env("DEXCAL_DEBUG_HODGE_SIGN_FLIP", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("first failure:"));
    assert!(text.contains("hodge-derivative-identity"));
}

#[test]
fn usage_errors_exit_two() {
    let out = dexcal().arg("no-such-command").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = dexcal()
        .args(["spectrum", "--dim", "0", "--size", "8", "--operator", "dk"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn spectrum_zero_counts() {
    for (op, expected) in [("dk", 1usize), ("naive", 4)] {
        let out = dexcal()
            .args(["spectrum", "--dim", "2", "--size", "8", "--operator", op])
            .output()
            .unwrap();
        assert!(out.status.success());
        let text = String::from_utf8(out.stdout).unwrap();
        assert_eq!(text.lines().next().unwrap(), "k1,k2,min_abs_eig,zero_flag");
        let zeros = text
            .lines()
            .skip(1)
            .filter(|l| l.ends_with(",1"))
            .count();
        assert_eq!(zeros, expected, "operator {op}");
    }
}

#[test]
fn graph_reports_dimensions_and_flags() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.json");
    std::fs::write(&path, r#"{"nodes":3,"edges":[[0,1],[1,2],[0,2]]}"#).unwrap();
    let out = dexcal().arg("graph").arg(&path).output().unwrap();
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["dims"], serde_json::json!([3, 3, 1]));
    assert_eq!(report["has_intermediate"], serde_json::json!(true));
    assert_eq!(report["has_opposite"], serde_json::json!(false));
}

#[test]
fn graph_rejects_malformed_json_with_line_number() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{\"nodes\":3,\n\"edges\":[[0,1],]}").unwrap();
    let out = dexcal().arg("graph").arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn wave_null_profile_residuals_vanish() {
    let out = dexcal().args(["wave", "--size", "16"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for line in text.lines().skip(1) {
        let r: f64 = line.rsplit(',').next().unwrap().parse().unwrap();
        assert!(r <= 1e-12, "{line}");
    }
    // A generic profile leaves a visible residual somewhere.
    let out = dexcal().args(["wave", "--size", "16", "--generic"]).output().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    let max: f64 = text
        .lines()
        .skip(1)
        .map(|l| l.rsplit(',').next().unwrap().parse::<f64>().unwrap())
        .fold(0.0, f64::max);
    assert!(max >= 1e-3);
}

#[test]
fn wilson_reads_configs_and_metrics() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("links.csv");
    let lat = Lattice::cubic(2, 4, 1.0);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut field = GaugeField::identity(&lat, 2);
    for a in 0..2 {
        for x in lat.nodes() {
            field.links[a][x] = gauge::random_special_unitary(2, 1.0, &mut rng);
        }
    }
    serial::write_gauge_config(&cfg, &field, "su2").unwrap();
    let out = dexcal().arg("wilson").arg("--config").arg(&cfg).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let header = text.lines().next().unwrap();
    assert!(header.starts_with("group su2, plaquettes 16, S = "));
    let s: f64 = header.rsplit(" = ").next().unwrap().parse().unwrap();
    let expected = field.wilson_action(&vec![1.0; lat.num_nodes()]);
    assert!((s - expected).abs() < 1e-12);
    // Histogram counts cover all 16 plaquettes.
    let total: usize = text
        .lines()
        .skip(2)
        .map(|l| l.rsplit(',').next().unwrap().parse::<usize>().unwrap())
        .sum();
    assert_eq!(total, 16);

    // The identity configuration has zero action regardless of metric.
    let trivial = GaugeField::identity(&lat, 2);
    let cfg2 = dir.path().join("trivial.csv");
    serial::write_gauge_config(&cfg2, &trivial, "su2").unwrap();
    let metric = dir.path().join("metric.json");
    std::fs::write(&metric, r#"{"kind":"diagonal","data":[2.0,3.0]}"#).unwrap();
    let out = dexcal()
        .arg("wilson")
        .arg("--config")
        .arg(&cfg2)
        .arg("--metric")
        .arg(&metric)
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().next().unwrap().ends_with("S = 0"));
}

#[test]
fn hodge_demo_prints_the_star_table() {
    let out = dexcal()
        .args(["hodge-demo", "--dim", "2", "--metric", "diamond"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("1,dX0^dX1,-1,0"));
    assert!(text.contains("dX0,dX0,-1,0"));
    assert!(text.contains("dX1,dX1,1,0"));
    assert!(text.contains("dX0^dX1,1,1,0"));
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("spec.csv");
    let out = dexcal()
        .args(["spectrum", "--dim", "1", "--size", "4", "--operator", "dk", "--out"])
        .arg(&path)
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("k1,min_abs_eig,zero_flag"));
}
