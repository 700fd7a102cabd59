use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn cdd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cdd"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn prefix(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_string()
}

fn read(path: impl AsRef<Path>) -> String {
    fs::read_to_string(path).unwrap()
}

fn summary(prefix: &str) -> Vec<(String, f64)> {
    read(format!("{prefix}_fig1_summary.csv"))
        .lines()
        .skip(1)
        .map(|l| {
            let (name, f) = l.split_once(',').unwrap();
            (name.to_string(), f.parse().unwrap())
        })
        .collect()
}

fn column(csv: &str, idx: usize) -> Vec<f64> {
    csv.lines()
        .skip(1)
        .map(|l| l.split(',').nth(idx).unwrap().parse().unwrap())
        .collect()
}

fn write_config(dir: &TempDir, name: &str, body: &str) -> String {
    let p = dir.path().join(name);
    fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn fig1_defaults_reproduce_headline_values() {
    let dir = TempDir::new().unwrap();
    let p = prefix(&dir, "run");
    let out = cdd(&["fig1", "--out", &p]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let s = summary(&p);
    let names: Vec<&str> = s.iter().map(|(n, _)| n.as_str()).collect();
    assert_eq!(names, ["baseline", "control", "tilt10", "tilt30"]);
    assert!((s[0].1 - 0.7199).abs() < 0.005, "{}", s[0].1);
    assert!((s[1].1 - 0.9965).abs() < 0.003, "{}", s[1].1);
    for (name, _) in &s {
        let traj = read(format!("{p}_fig1_{name}.csv"));
        assert!(traj.starts_with("t_over_tau,fidelity,rx,ry,rz,purity\n"));
        assert_eq!(traj.lines().count(), 4096 + 2);
    }
}

#[test]
fn fig1_zero_lambda_gives_unit_fidelity() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(&dir, "zero.cfg", "lambda_re = 0 0 0\nlambda_im = 0 0 0\n");
    let p = prefix(&dir, "z");
    let out = cdd(&["fig1", "--config", &cfg, "--out", &p, "--steps", "128"]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    for (name, f) in summary(&p) {
        assert_eq!(f, 1.0);
        assert!(column(&read(format!("{p}_fig1_{name}.csv")), 1)
            .iter()
            .all(|v| *v == 1.0));
    }
}

#[test]
fn zero_tilt_duplicates_control_curve() {
    let dir = TempDir::new().unwrap();
    let p = prefix(&dir, "t");
    assert!(
        cdd(&["fig1", "--out", &p, "--steps", "128", "--tilt-deg", "0"])
            .status
            .success()
    );
    assert_eq!(
        read(format!("{p}_fig1_control.csv")),
        read(format!("{p}_fig1_tilt0.csv"))
    );
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let dir = TempDir::new().unwrap();
    let (a, b) = (prefix(&dir, "a"), prefix(&dir, "b"));
    for p in [&a, &b] {
        assert!(cdd(&["fig1", "--out", p, "--steps", "128"])
            .status
            .success());
        assert!(cdd(&[
            "sweep-initial",
            "--out",
            p,
            "--steps",
            "128",
            "--nphi",
            "6",
            "--ntheta",
            "3"
        ])
        .status
        .success());
        assert!(cdd(&[
            "inset", "--out", p, "--steps", "128", "--temps", "0.2,0.4", "--cycles", "2,3"
        ])
        .status
        .success());
        assert!(cdd(&["waveform", "--out", p, "--samples", "64"])
            .status
            .success());
    }
    for suffix in [
        "fig1_baseline.csv",
        "fig1_control.csv",
        "fig1_tilt10.csv",
        "fig1_tilt30.csv",
        "fig1_summary.csv",
        "sweep.csv",
        "sweep_summary.csv",
        "inset.csv",
        "inset_long.csv",
        "waveform.csv",
    ] {
        assert_eq!(
            fs::read(format!("{a}_{suffix}")).unwrap(),
            fs::read(format!("{b}_{suffix}")).unwrap(),
            "{suffix}"
        );
    }
}

#[test]
fn single_cell_sweep_and_inset_match_fig1() {
    let dir = TempDir::new().unwrap();
    let p = prefix(&dir, "c");
    assert!(cdd(&["fig1", "--out", &p, "--steps", "256"])
        .status
        .success());
    assert!(cdd(&[
        "sweep-initial",
        "--out",
        &p,
        "--steps",
        "256",
        "--nphi",
        "1",
        "--ntheta",
        "1"
    ])
    .status
    .success());
    assert!(
        cdd(&["inset", "--out", &p, "--steps", "256", "--temps", "0.25", "--cycles", "5"])
            .status
            .success()
    );
    let control = summary(&p)[1].1;
    assert_eq!(column(&read(format!("{p}_sweep.csv")), 2), vec![control]);
    assert_eq!(
        read(format!("{p}_inset.csv")).lines().next().unwrap(),
        "T_kelvin,n_5"
    );
    assert_eq!(column(&read(format!("{p}_inset.csv")), 1), vec![control]);
    assert_eq!(
        column(&read(format!("{p}_inset_long.csv")), 2),
        vec![control]
    );
}

#[test]
fn smoke_sweep_has_eight_finite_rows() {
    let dir = TempDir::new().unwrap();
    let p = prefix(&dir, "s");
    let out = cdd(&[
        "sweep-initial",
        "--out",
        &p,
        "--steps",
        "128",
        "--nphi",
        "4",
        "--ntheta",
        "2",
    ]);
    assert!(out.status.success());
    let csv = read(format!("{p}_sweep.csv"));
    assert_eq!(csv.lines().next().unwrap(), "phi,theta,fidelity_tau");
    let f = column(&csv, 2);
    assert_eq!(f.len(), 8);
    assert!(f.iter().all(|v| v.is_finite() && *v > 0.0 && *v <= 1.0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("min ="));
}

#[test]
fn inset_table_shape() {
    let dir = TempDir::new().unwrap();
    let p = prefix(&dir, "i");
    assert!(cdd(&[
        "inset",
        "--out",
        &p,
        "--steps",
        "128",
        "--temps",
        "0.1,0.5,1",
        "--cycles",
        "1,5"
    ])
    .status
    .success());
    let rect = read(format!("{p}_inset.csv"));
    assert_eq!(rect.lines().next().unwrap(), "T_kelvin,n_1,n_5");
    assert_eq!(column(&rect, 0), vec![0.1, 0.5, 1.0]);
    let long = read(format!("{p}_inset_long.csv"));
    assert_eq!(long.lines().count(), 1 + 6);
}

#[test]
fn waveform_exports() {
    let dir = TempDir::new().unwrap();
    let p = prefix(&dir, "w");
    assert!(cdd(&["waveform", "--out", &p, "--samples", "0"])
        .status
        .success());
    assert_eq!(read(format!("{p}_waveform.csv")), "t_over_tau,ox,oy,oz\n");

    let cfg = write_config(&dir, "gate.cfg", "control_mode = gate-only\ncycles = 0\n");
    assert!(
        cdd(&["waveform", "--config", &cfg, "--out", &p, "--samples", "10"])
            .status
            .success()
    );
    let csv = read(format!("{p}_waveform.csv"));
    let expect = std::f64::consts::FRAC_PI_2 / 1e-10 / 2f64.sqrt();
    for (idx, want) in [(1, expect), (2, 0.0), (3, expect)] {
        let col = column(&csv, idx);
        assert_eq!(col.len(), 10);
        assert!(col.iter().all(|v| (v - want).abs() <= 1e-12 * expect));
    }

    let free = write_config(&dir, "free.cfg", "control_mode = free\n");
    assert_eq!(
        cdd(&["waveform", "--config", &free, "--out", &p])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn selftest_passes_on_defaults() {
    let out = cdd(&["selftest"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(out.status.code(), Some(0), "{text}");
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 4);
}

#[test]
fn selftest_reports_parallel_axis_violation() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(&dir, "par.cfg", "u_c = 0.8 0 0.565685424949238\n");
    let out = cdd(&["selftest", "--config", &cfg]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(out.status.code(), Some(1));
    let line = text
        .lines()
        .find(|l| l.contains("decoupling residual"))
        .unwrap();
    assert!(
        line.starts_with("FAIL") && line.contains("violated"),
        "{line}"
    );
}

#[test]
fn config_and_usage_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    let bad = write_config(&dir, "bad.cfg", "eta = 0.1\nomega_c_tau = oops\n");
    let out = cdd(&["selftest", "--config", &bad]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(
        err.contains("line 2") && err.contains("omega_c_tau"),
        "{err}"
    );

    let missing = dir.path().join("missing.cfg");
    assert_eq!(
        cdd(&["fig1", "--config", missing.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(cdd(&["fig1", "--steps", "15"]).status.code(), Some(2));
    assert_eq!(cdd(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(cdd(&["inset", "--temps", "-1"]).status.code(), Some(2));
}

#[test]
fn show_config_round_trips() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(
        &dir,
        "c.cfg",
        "# custom run\ntemperature_K = 0.5\ngate = custom\ngate_axis = 0 0 1\ngate_angle = 0.3\n",
    );
    let first = cdd(&["show-config", "--config", &cfg]);
    assert!(first.status.success());
    let canon = write_config(
        &dir,
        "canon.cfg",
        &String::from_utf8(first.stdout.clone()).unwrap(),
    );
    let second = cdd(&["show-config", "--config", &canon]);
    assert_eq!(first.stdout, second.stdout);
    assert!(String::from_utf8_lossy(&first.stdout).contains("temperature_K = 0.5\n"));
}

#[test]
fn kernel_dump_has_header_and_rows() {
    let dir = TempDir::new().unwrap();
    let p = prefix(&dir, "k");
    assert!(cdd(&["kernels", "--out", &p, "--steps", "16"])
        .status
        .success());
    let csv = read(format!("{p}_kernels.csv"));
    assert_eq!(
        csv.lines().next().unwrap(),
        "t_over_tau,re_i1,im_i1,re_i2,im_i2"
    );
    assert_eq!(csv.lines().count(), 1 + 33);
}

#[test]
fn strong_coupling_warns_without_failing() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(&dir, "strong.cfg", "eta = 3\n");
    let out = cdd(&[
        "fig1",
        "--config",
        &cfg,
        "--out",
        &prefix(&dir, "w"),
        "--steps",
        "256",
    ]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning: tilt30: Bloch norm reached"));
    let quiet = cdd(&["fig1", "--out", &prefix(&dir, "q"), "--steps", "256"]);
    assert!(quiet.stderr.is_empty());
}
