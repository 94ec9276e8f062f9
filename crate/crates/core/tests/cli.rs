use std::path::Path;
use std::process::{Command, Output};

fn spinflip(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spinflip")).current_dir(dir).args(args).output().expect("binary runs")
}

fn header(path: &Path) -> String {
    std::fs::read_to_string(path).unwrap().lines().next().unwrap().to_string()
}

#[test]
fn figure_4a_writes_normalized_stokes_columns() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("f4a.csv");
    let o = spinflip(dir.path(), &["--out", out.to_str().unwrap(), "figure", "4a"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(header(&out), "omega_ghz,s1_norm,s2_norm,s3_norm");
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().count(), 2002);
    let first: Vec<f64> = text.lines().nth(1).unwrap().split(',').map(|x| x.parse().unwrap()).collect();
    assert_eq!(first[0], 0.0);
    assert!((first[1] - 0.28).abs() < 1e-12);
}

#[test]
fn config_file_and_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "# coarse run\nkappa_a = 10\nomega_points = 50\ngrid_kind = log\n").unwrap();
    let out = dir.path().join("c23.csv");
    let o = spinflip(
        dir.path(),
        &["--config", cfg.to_str().unwrap(), "--set", "omega_points=20", "--out", out.to_str().unwrap(), "c23"],
    );
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(header(&out), "omega_ghz,c23");
    assert_eq!(std::fs::read_to_string(&out).unwrap().lines().count(), 21);
}

#[test]
fn below_threshold_exits_with_physics_code() {
    let dir = tempfile::tempdir().unwrap();
    let o = spinflip(dir.path(), &["--set", "r=0.5", "steady"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("threshold"));
}

#[test]
fn unknown_config_key_exits_with_config_code() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.cfg");
    std::fs::write(&cfg, "r = 2\nbogus = 1\n").unwrap();
    let o = spinflip(dir.path(), &["--config", cfg.to_str().unwrap(), "steady"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
}

#[test]
fn steady_reports_relaxation_frequencies() {
    let dir = tempfile::tempdir().unwrap();
    let o = spinflip(dir.path(), &["steady"]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    let omega1: f64 = text
        .lines()
        .find_map(|l| l.strip_prefix("omega1 = "))
        .expect("omega1 line")
        .parse()
        .unwrap();
    assert!((omega1 / 982f64.sqrt() - 1.0).abs() < 1e-6);
    assert!(text.contains("stability = Stable"));
}

#[test]
fn verify_on_defaults_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("residuals.csv");
    let o = spinflip(dir.path(), &["--out", out.to_str().unwrap(), "verify"]);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("PASS oracle_sxx")));
    assert_eq!(header(&out), "omega_ghz,channel,closed,oracle,rel_residual");
    let failing: Vec<&str> = text.lines().filter(|l| l.starts_with("FAIL")).collect();
    assert_eq!(o.status.code(), Some(0), "failing checks: {failing:?}");
}

#[test]
fn verify_failure_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let o = spinflip(dir.path(), &["--set", "omega_points=100", "verify"]);
    let text = String::from_utf8(o.stdout).unwrap();
    if text.lines().any(|l| l.starts_with("FAIL")) {
        assert_eq!(o.status.code(), Some(3));
        assert!(text.ends_with("verify: FAILED\n"));
    } else {
        assert_eq!(o.status.code(), Some(0));
    }
}

#[test]
fn identical_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let out = dir.path().join(name);
        let o = spinflip(dir.path(), &["--set", "omega_points=300", "--out", out.to_str().unwrap(), "spectra"]);
        assert_eq!(o.status.code(), Some(0));
        std::fs::read(out).unwrap()
    };
    assert_eq!(run("a.csv"), run("b.csv"));
}

#[test]
fn simulate_emits_trajectory() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("traj.csv");
    let o = spinflip(
        dir.path(),
        &["--set", "sim_duration=0.1", "--set", "sim_stride=100", "--out", out.to_str().unwrap(), "simulate"],
    );
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(header(&out), "t,re_a_plus,im_a_plus,re_a_minus,im_a_minus,D,d");
    assert_eq!(std::fs::read_to_string(&out).unwrap().lines().count(), 12);
}
