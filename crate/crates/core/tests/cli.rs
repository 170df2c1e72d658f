use std::path::Path;
use std::process::{Command, Output};

use kpi_lab::spectral::load_snapshot;

fn kpi_lab(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kpi-lab")).args(args).current_dir(dir).output().expect("binary runs")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn soliton_snapshot_peaks_at_three_c() {
    let dir = tempfile::tempdir().unwrap();
    let o = kpi_lab(&["soliton", "--c", "1", "--nx", "256", "--ny", "4", "--Lx", "32pi", "--out", "q.kpf"], dir.path());
    assert!(o.status.success(), "{}", stderr(&o));
    let s = load_snapshot(dir.path().join("q.kpf")).unwrap();
    assert_eq!(s.t, 0.0);
    assert_eq!((s.field.grid().nx(), s.field.grid().ny()), (256, 4));
    let centre = s.field.at(128, 0);
    assert!((centre - 3.0).abs() < 1e-12 && (s.field.max() - 3.0).abs() < 1e-12);
}

#[test]
fn evolve_is_deterministic_and_chains_through_snapshots() {
    let dir = tempfile::tempdir().unwrap();
    let base = ["evolve", "--nx", "64", "--ny", "8", "--Lx", "8pi", "--seed", "5", "--dt", "1e-2", "--t-end", "0.5", "--record-every", "10"];
    for name in ["a.csv", "b.csv"] {
        let mut args = base.to_vec();
        args.extend(["--csv", name, "--out", "end.kpf"]);
        let o = kpi_lab(&args, dir.path());
        assert!(o.status.success(), "{}", stderr(&o));
    }
    let a = std::fs::read(dir.path().join("a.csv")).unwrap();
    assert_eq!(a, std::fs::read(dir.path().join("b.csv")).unwrap());
    let text = String::from_utf8(a).unwrap();
    assert!(text.starts_with("t,mass,energy,hamiltonian_c,energy_norm,linf,orbital_distance\n"));
    assert_eq!(text.lines().count(), 1 + 6);

    // continuing from the snapshot keeps absolute time
    let o = kpi_lab(&["evolve", "--input", "end.kpf", "--dt", "1e-2", "--t-end", "0.5", "--csv", "c.csv", "--out", "later.kpf"], dir.path());
    assert!(o.status.success(), "{}", stderr(&o));
    assert!((load_snapshot(dir.path().join("later.kpf")).unwrap().t - 1.0).abs() < 1e-12);
    let c = std::fs::read_to_string(dir.path().join("c.csv")).unwrap();
    assert!(c.lines().nth(1).unwrap().starts_with("0.5,"));
}

#[test]
fn rescale_stretches_the_grid() {
    let dir = tempfile::tempdir().unwrap();
    let o = kpi_lab(&["soliton", "--nx", "128", "--ny", "4", "--Lx", "32pi", "--out", "q.kpf"], dir.path());
    assert!(o.status.success());
    let o = kpi_lab(&["rescale", "--input", "q.kpf", "--lambda", "4", "--out", "r.kpf"], dir.path());
    assert!(o.status.success(), "{}", stderr(&o));
    let r = load_snapshot(dir.path().join("r.kpf")).unwrap();
    assert!((r.field.grid().length_x() - 64.0 * std::f64::consts::PI).abs() < 1e-9);
    assert_eq!(r.field.grid().lambda_y(), 4.0);
    assert!((r.field.max() - 0.75).abs() < 1e-12);

    let o = kpi_lab(&["rescale", "--input", "q.kpf", "--lambda", "3", "--out", "bad.kpf"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("kind=grid_incompatible"));
}

#[test]
fn spectrum_bisection_writes_every_evaluation() {
    let dir = tempfile::tempdir().unwrap();
    let o = kpi_lab(
        &["spectrum", "--bisect", "--c-min", "2.0", "--c-max", "2.6", "--steps", "6", "--n", "512", "--half-width", "30", "--out", "s.csv"],
        dir.path(),
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let csv = std::fs::read_to_string(dir.path().join("s.csv")).unwrap();
    assert_eq!(csv.lines().next().unwrap(), "c,min_eigenvalue,error_estimate,grid_n");
    assert_eq!(csv.lines().count(), 1 + 8);
    let stdout = String::from_utf8(o.stdout).unwrap();
    let speed: f64 = stdout.split_whitespace().nth(2).unwrap().parse().unwrap();
    assert!((speed - 4.0 / 3f64.sqrt()).abs() < 0.6 / 64.0);
}

#[test]
fn failures_map_to_exit_codes() {
    let dir = tempfile::tempdir().unwrap();

    let o = kpi_lab(&["soliton", "--nx", "7", "--out", "q.kpf"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).starts_with("error kind=invalid_grid code=1 message=\""));

    let o = kpi_lab(&["evolve", "--nx", "32", "--ny", "8", "--Lx", "10", "--amplitude", "1e7", "--csv", "d.csv"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("kind=blowup_detected"));
    assert!(dir.path().join("d.csv").exists());

    let o = kpi_lab(&["rescale", "--input", "missing.kpf", "--lambda", "4", "--out", "r.kpf"], dir.path());
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("kind=io"));

    std::fs::write(dir.path().join("junk.kpf"), b"not a snapshot").unwrap();
    let o = kpi_lab(&["rescale", "--input", "junk.kpf", "--lambda", "4", "--out", "r.kpf"], dir.path());
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("kind=format"));

    let o = kpi_lab(&["spectrum", "--bisect", "--c-min", "0.5", "--c-max", "1.5", "--steps", "2", "--n", "512", "--half-width", "30"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("kind=convergence_failure"));

    let o = kpi_lab(&["frobnicate"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("kind=usage"));

    let o = kpi_lab(&["--help"], dir.path());
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn verify_report_is_reproducible_json() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["r1.json", "r2.json"] {
        let o = kpi_lab(&["verify", "--suite", "resonance", "--samples", "500", "--seed", "3", "--report", name], dir.path());
        assert!(o.status.success(), "{}", stderr(&o));
    }
    let a = std::fs::read(dir.path().join("r1.json")).unwrap();
    assert_eq!(a, std::fs::read(dir.path().join("r2.json")).unwrap());
    let v: serde_json::Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(v[0]["name"], "resonance");
    assert_eq!(v[0]["samples"], 500);
    assert_eq!(v[0]["failures"], 0);
    assert_eq!(v[0]["seed"], 3);
}
