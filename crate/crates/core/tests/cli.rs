use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use xdiscord::cli::{read_campaign_csv, CampaignRecord, CAMPAIGN_COLUMNS};
use xdiscord::states::{classify_structure, read_density_matrix, Structure, DEFAULT_STRUCTURE_TOL};

fn xdiscord(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_xdiscord"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str]) -> Output {
    let out = xdiscord(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    out
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn gen_is_deterministic_and_structured() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    for out in [&a, &b] {
        ok(&["gen", "--count", "3", "--qubits", "3", "--seed", "7", "--x-project", "--out-dir", path(out)]);
    }
    let mut names: Vec<_> = fs::read_dir(&a).unwrap().map(|e| e.unwrap().file_name()).collect();
    names.sort();
    assert_eq!(names.len(), 3);
    for name in &names {
        let bytes = fs::read(a.join(name)).unwrap();
        assert_eq!(bytes, fs::read(b.join(name)).unwrap());
        let rho = read_density_matrix(&a.join(name)).unwrap();
        assert_eq!(rho.dim(), 8);
        assert_ne!(classify_structure(&rho, DEFAULT_STRUCTURE_TOL).tag, Structure::General);
    }

    let qutrit = dir.path().join("q");
    ok(&["gen", "--d", "3", "--out-dir", path(&qutrit)]);
    let rho = read_density_matrix(&qutrit.join("state_00000.json")).unwrap();
    assert_eq!((rho.dim_a(), rho.dim_b()), (2, 3));
}

#[test]
fn discord_named_states() {
    let out = ok(&["discord", "--state", "bell1", "--method", "both"]);
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!((report["entropic"]["discord"].as_f64().unwrap() - 1.0).abs() < 1e-6);
    assert!((report["geometric"]["discord"].as_f64().unwrap() - 0.5).abs() < 1e-9);
    assert_eq!(report["structure"], "x");
    assert!(report["entropic"]["elapsed_ms"].is_number());

    let out = ok(&["discord", "--state", "werner:0", "--method", "both"]);
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(report["entropic"]["discord"].as_f64().unwrap().abs() < 1e-12);
    assert!(report["geometric"]["discord"].as_f64().unwrap().abs() < 1e-12);
}

#[test]
fn discord_from_file_with_candidate_mode() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("ghz3.json");
    xdiscord::states::write_density_matrix(&xdiscord::states::named::ghz(3).unwrap(), &file).unwrap();
    let report_path = dir.path().join("report.json");
    ok(&["discord", "--input", path(&file), "--method", "entropic", "--opt", "candidate", "--json", path(&report_path)]);
    let report: Value = serde_json::from_str(&fs::read_to_string(&report_path).unwrap()).unwrap();
    let theta = report["entropic"]["optimal_angles"]["theta"].as_f64().unwrap();
    assert!(theta == 0.0 || (theta - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
    assert!(report["entropic"]["discord"].as_f64().unwrap().is_finite());
    assert!(report["geometric"].is_null());

    let full = ok(&["discord", "--input", path(&file), "--method", "entropic", "--opt", "full"]);
    let full: Value = serde_json::from_slice(&full.stdout).unwrap();
    let (c, f) = (report["entropic"]["discord"].as_f64().unwrap(), full["entropic"]["discord"].as_f64().unwrap());
    assert!((c - f).abs() < 1e-9, "{c} vs {f}");
}

#[test]
fn discord_rejects_bad_input() {
    assert!(!xdiscord(&["discord", "--state", "bell9"]).status.success());
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.json");
    fs::write(&file, r#"{"dim_a": 2, "dim_b": 2, "matrix": [[[1.0, 0.0]]]}"#).unwrap();
    assert!(!xdiscord(&["discord", "--input", path(&file)]).status.success());
}

#[test]
fn campaign_is_reproducible_across_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let mut csvs = Vec::new();
    for threads in ["1", "3"] {
        let csv = dir.path().join(format!("c{threads}.csv"));
        let json = dir.path().join(format!("c{threads}.json"));
        ok(&["campaign", "--n", "10", "--qubits", "3", "--seed", "11", "--threads", threads, "--csv", path(&csv), "--json", path(&json)]);
        csvs.push(fs::read(&csv).unwrap());
    }
    assert_eq!(csvs[0], csvs[1]);

    let text = String::from_utf8(csvs[0].clone()).unwrap();
    assert_eq!(text.lines().next().unwrap(), CAMPAIGN_COLUMNS.join(","));
    let records = read_campaign_csv(&dir.path().join("c1.csv")).unwrap();
    assert_eq!(records.len(), 10);
    for r in &records {
        assert!(r.discord_candidate >= r.discord_full - 1e-9);
        assert!(r.candidate_gap >= 0.0);
    }
    let summary: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("c1.json")).unwrap()).unwrap();
    for key in ["n", "qubits", "fraction_at_pole_or_equator", "angle_tol", "value_tol", "mean_candidate_gap", "max_candidate_gap"] {
        assert!(!summary[key].is_null(), "missing {key}");
    }
    assert_eq!(summary["angle_tol"], 1e-2);
    assert_eq!(summary["value_tol"], 1e-6);
}

#[test]
fn analyze_exports_points_and_statistics() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("c.csv");
    let summary = dir.path().join("s.json");
    ok(&["campaign", "--n", "20", "--qubits", "3", "--seed", "5", "--csv", path(&csv), "--json", path(&summary)]);
    let points = dir.path().join("p.csv");
    let stats = dir.path().join("a.json");
    ok(&["analyze", "--input", path(&csv), "--csv", path(&points), "--json", path(&stats)]);
    let summary: Value = serde_json::from_str(&fs::read_to_string(&summary).unwrap()).unwrap();
    let stats: Value = serde_json::from_str(&fs::read_to_string(&stats).unwrap()).unwrap();
    assert_eq!(summary["fraction_at_pole_or_equator"], stats["fraction_at_pole_or_equator"]);
    let bins = stats["candidate_gap_histogram"].as_array().unwrap();
    assert_eq!(bins.iter().map(|b| b["count"].as_u64().unwrap()).sum::<u64>(), 20);
    let text = fs::read_to_string(&points).unwrap();
    assert_eq!(text.lines().count(), 21);
    for line in text.lines().skip(1) {
        let v: Vec<f64> = line.split(',').skip(3).map(|s| s.parse().unwrap()).collect();
        assert!((v.iter().map(|c| c * c).sum::<f64>() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn analyze_pole_points_and_empty_input() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("pole.csv");
    let mut writer = csv::Writer::from_path(&csv).unwrap();
    for i in 0..3 {
        writer
            .serialize(CampaignRecord {
                index: i,
                seed: i,
                theta_opt: 0.0,
                phi_opt: 0.0,
                discord_full: 0.1,
                discord_candidate: 0.1,
                discord_geometric: 0.05,
                candidate_gap: 0.0,
                at_pole_or_equator: true,
            })
            .unwrap();
    }
    writer.flush().unwrap();
    drop(writer);
    let out = ok(&["analyze", "--input", path(&csv)]);
    let text = String::from_utf8(out.stdout).unwrap();
    for line in text.lines().skip(1) {
        let v: Vec<f64> = line.split(',').skip(3).map(|s| s.parse().unwrap()).collect();
        assert_eq!(v, vec![0.0, 0.0, 1.0]);
    }

    let empty = dir.path().join("empty.csv");
    fs::write(&empty, CAMPAIGN_COLUMNS.join(",") + "\n").unwrap();
    let out = xdiscord(&["analyze", "--input", path(&empty)]);
    assert!(!out.status.success());
    assert!(out.stdout.is_empty());
}
