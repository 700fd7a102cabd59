use std::f64::consts::PI;
use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use cdd_core::control::{decoupling_residual, drive_field, write_waveform_csv};
use cdd_core::engine::{
    csv, density_matrix_oracle, integrate_trajectory, sweep_initial_states,
    sweep_temperature_cycles, SimGrid, TrajectoryResult,
};
use cdd_core::geometry::tilt_toward;
use cdd_core::kernels::{build_kernel_table, kernel_i1, kernel_i2, kernel_quadrature, KernelKind};
use cdd_core::specfun::trigamma;
use cdd_core::{Complex64, ComplexVec3, ControlProgram, Vec3};
use thiserror::Error;

use crate::config::{ConfigError, ExperimentConfig};

/// Initial state used by every single-trajectory command.
pub const R0: Vec3 = Vec3::new(0.5, 0.0, 0.0);

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] cdd_core::Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{0} check(s) failed")]
    ChecksFailed(usize),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) | CliError::Usage(_) => 2,
            CliError::Core(_) | CliError::Io { .. } | CliError::ChecksFailed(_) => 1,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

fn output_path(prefix: &str, suffix: &str) -> PathBuf {
    PathBuf::from(format!("{prefix}_{suffix}"))
}

fn write_file<F>(path: &Path, body: F) -> CliResult<()>
where
    F: FnOnce(&mut BufWriter<File>) -> io::Result<()>,
{
    let wrap = |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    };
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(wrap)?;
    }
    let mut w = BufWriter::new(File::create(path).map_err(wrap)?);
    body(&mut w).and_then(|_| w.flush()).map_err(wrap)?;
    println!("wrote {}", path.display());
    Ok(())
}

fn warn_purity(label: &str, traj: &TrajectoryResult) {
    if traj.purity_excess {
        eprintln!(
            "warning: {label}: Bloch norm reached {:.6}, coupling may be outside the weak-coupling regime",
            traj.max_bloch_norm
        );
    }
}

fn run_curve(
    cfg: &ExperimentConfig,
    prog: &ControlProgram,
    label: &str,
) -> CliResult<TrajectoryResult> {
    let traj = integrate_trajectory(prog, cfg.lambda(), &cfg.bath()?, cfg.grid()?, R0)?;
    warn_purity(label, &traj);
    Ok(traj)
}

fn curve_name(tilt: f64) -> String {
    format!("tilt{tilt}")
}

/// Baseline, protected and tilted-axis trajectories.
pub fn fig1(cfg: &ExperimentConfig, tilts: &[f64]) -> CliResult<()> {
    let baseline = ControlProgram::gate_only(cfg.gate_spec()?, cfg.tau_seconds)?;
    let control = cfg.full_program(cfg.cycles)?;
    let mut curves = vec![
        ("baseline".to_string(), baseline),
        ("control".to_string(), control),
    ];
    for &deg in tilts {
        let axis = tilt_toward(control.control_axis, cfg.tilt_toward.unit(), deg)?;
        curves.push((curve_name(deg), control.with_control_axis(axis)));
    }

    let mut summary = Vec::new();
    for (name, prog) in &curves {
        let traj = run_curve(cfg, prog, name)?;
        write_file(
            &output_path(&cfg.output, &format!("fig1_{name}.csv")),
            |w| csv::write_trajectory(&traj, w),
        )?;
        summary.push((name.clone(), traj.final_fidelity()));
    }
    write_file(&output_path(&cfg.output, "fig1_summary.csv"), |w| {
        writeln!(w, "curve,fidelity_tau")?;
        for (name, f) in &summary {
            writeln!(w, "{name},{}", csv::format_float(*f))?;
        }
        Ok(())
    })?;
    for (name, f) in &summary {
        println!("{name}: F(tau) = {f:.6}");
    }
    Ok(())
}

pub fn sweep_initial(cfg: &ExperimentConfig, n_phi: usize, n_theta: usize) -> CliResult<()> {
    if n_phi == 0 || n_theta == 0 {
        return Err(CliError::Usage(
            "--nphi and --ntheta must be positive".into(),
        ));
    }
    let s = sweep_initial_states(
        &cfg.program()?,
        cfg.lambda(),
        &cfg.bath()?,
        cfg.grid()?,
        n_phi,
        n_theta,
    )?;
    write_file(&output_path(&cfg.output, "sweep.csv"), |w| {
        csv::write_sweep(&s, w)
    })?;
    write_file(&output_path(&cfg.output, "sweep_summary.csv"), |w| {
        writeln!(w, "n_phi,n_theta,min,max,mean")?;
        writeln!(
            w,
            "{n_phi},{n_theta},{},{},{}",
            csv::format_float(s.min),
            csv::format_float(s.max),
            csv::format_float(s.mean)
        )
    })?;
    println!(
        "sweep {n_phi}x{n_theta}: min = {:.6}, max = {:.6}, mean = {:.6}",
        s.min, s.max, s.mean
    );
    Ok(())
}

pub fn inset(cfg: &ExperimentConfig, temps: &[f64], cycles: &[u32]) -> CliResult<()> {
    if temps.is_empty() || cycles.is_empty() {
        return Err(CliError::Usage(
            "--temps and --cycles must be non-empty".into(),
        ));
    }
    if let Some(t) = temps.iter().find(|t| !(**t > 0.0 && t.is_finite())) {
        return Err(CliError::Usage(format!("temperature {t} must be positive")));
    }
    if cycles.contains(&0) {
        return Err(CliError::Usage("cycle counts must be at least 1".into()));
    }
    let prog = cfg.full_program(cycles[0])?;
    let table = sweep_temperature_cycles(
        &prog,
        cfg.lambda(),
        &cfg.bath()?,
        cfg.grid()?,
        R0,
        temps,
        cycles,
    )?;
    write_file(&output_path(&cfg.output, "inset.csv"), |w| {
        csv::write_inset_table(&table, w)
    })?;
    write_file(&output_path(&cfg.output, "inset_long.csv"), |w| {
        csv::write_inset_long(&table, w)
    })?;
    for (t, row) in table.temperatures.iter().zip(&table.fidelity) {
        let cells: Vec<String> = table
            .cycles
            .iter()
            .zip(row)
            .map(|(n, f)| format!("n={n}: {f:.6}"))
            .collect();
        println!("T = {t} K: {}", cells.join(", "));
    }
    Ok(())
}

pub fn waveform(cfg: &ExperimentConfig, samples: usize) -> CliResult<()> {
    let field = drive_field(&cfg.program()?)?;
    write_file(&output_path(&cfg.output, "waveform.csv"), |w| {
        write_waveform_csv(&field, cfg.tau_seconds, samples, w)
    })
}

pub fn kernels(cfg: &ExperimentConfig) -> CliResult<()> {
    let grid = cfg.grid()?;
    let table = build_kernel_table(
        &cfg.bath()?.scaled(cfg.tau_seconds),
        grid.half_step(),
        grid.nodes() - 1,
    )?;
    write_file(&output_path(&cfg.output, "kernels.csv"), |w| {
        table.write_csv(w)
    })
}

type Check = Result<String, String>;

fn verdict(ok: bool, detail: String) -> Check {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn check_kernels(cfg: &ExperimentConfig) -> CliResult<Check> {
    let b = cfg.bath()?.scaled(cfg.tau_seconds);
    let mut worst: f64 = 0.0;
    for k in 0..50 {
        let t = 2.0 * k as f64 / 49.0;
        let q1 = kernel_quadrature(t, &b, KernelKind::I1)?;
        let q2 = kernel_quadrature(t, &b, KernelKind::I2)?;
        let e1 = (kernel_i1(t, &b)? - q1).norm() / q1.norm().max(f64::MIN_POSITIVE);
        let e2 = (kernel_i2(t, &b) - q2).norm() / q2.norm().max(f64::MIN_POSITIVE);
        worst = worst.max(e1).max(e2);
    }
    Ok(verdict(
        worst < 1e-8,
        format!("max relative error {worst:.2e} on 50 points over [0, 2 tau]"),
    ))
}

fn check_trigamma() -> CliResult<Check> {
    let rel = |a: Complex64, b: Complex64| (a - b).norm() / b.norm();
    let mut worst = rel(trigamma(1.0.into())?, (PI * PI / 6.0).into());
    worst = worst.max(rel(trigamma(0.5.into())?, (PI * PI / 2.0).into()));
    let mut refl: f64 = 0.0;
    for i in 0..9 {
        for j in 0..5 {
            let z = Complex64::new(-4.3 + 1.1 * i as f64, -1.0 + 0.45 * j as f64);
            let recur = trigamma(z)? - trigamma(z + 1.0)?;
            worst = worst.max(rel(recur, (z * z).inv()));
            let s = (z * PI).sin();
            refl = refl.max(rel(trigamma(z)? + trigamma(1.0 - z)?, PI * PI / (s * s)));
        }
    }
    Ok(verdict(
        worst < 1e-12 && refl < 1e-10,
        format!("special values and recurrence {worst:.1e}, reflection {refl:.1e}"),
    ))
}

fn check_decoupling(cfg: &ExperimentConfig) -> CliResult<Check> {
    let lam = cfg.lambda();
    let axis = cfg.control_axis()?;
    let res = decoupling_residual(lam, axis, cfg.cycles.max(1), cfg.tau_seconds)?.norm();
    let overlap = ComplexVec3::from(axis.vec()).dot(lam).norm();
    let detail = format!("|residual| = {res:.2e}, |u_c . lambda| = {overlap:.2e}");
    if res <= 1e-12 {
        Ok(verdict(true, detail))
    } else {
        Ok(verdict(
            false,
            format!(
                "{detail}; control axis is not orthogonal to lambda, decoupling condition violated"
            ),
        ))
    }
}

fn check_oracle(cfg: &ExperimentConfig) -> CliResult<Check> {
    let prog = cfg.program()?;
    let grid = SimGrid::new(512)?;
    let bath = cfg.bath()?;
    let a = integrate_trajectory(&prog, cfg.lambda(), &bath, grid, R0)?;
    let b = density_matrix_oracle(&prog, cfg.lambda(), &bath, grid, R0)?;
    let worst = a
        .bloch
        .iter()
        .zip(&b.trajectory.bloch)
        .map(|(x, y)| (*x - *y).max_abs())
        .fold(0.0, f64::max);
    Ok(verdict(
        worst <= 1e-10 && b.max_trace_error <= 1e-12,
        format!(
            "max |r_bloch - r_rho| = {worst:.2e}, trace drift {:.1e} at N=512",
            b.max_trace_error
        ),
    ))
}

pub fn selftest(cfg: &ExperimentConfig) -> CliResult<()> {
    let checks = [
        ("kernel closed forms", check_kernels(cfg)?),
        ("trigamma identities", check_trigamma()?),
        ("decoupling residual", check_decoupling(cfg)?),
        ("oracle equivalence", check_oracle(cfg)?),
    ];
    let mut failed = 0;
    for (name, outcome) in &checks {
        match outcome {
            Ok(d) => println!("PASS  {name}: {d}"),
            Err(d) => {
                failed += 1;
                println!("FAIL  {name}: {d}");
            }
        }
    }
    println!(
        "selftest: {} passed, {failed} failed",
        checks.len() - failed
    );
    if failed > 0 {
        return Err(CliError::ChecksFailed(failed));
    }
    Ok(())
}
