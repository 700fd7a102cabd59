//! Parallel parameter sweeps. Results are assembled in input order, so
//! output is identical for any worker count.

use std::f64::consts::{PI, TAU};

use rayon::prelude::*;

use super::{integrate_trajectory, prepare_trace, propagate, SimGrid};
use crate::error::{Error, Result};
use crate::types::{BathSpec, ControlProgram};
use crate::vec3::{ComplexVec3, Vec3};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepCell {
    pub phi: f64,
    pub theta: f64,
    pub fidelity: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSummary {
    pub n_phi: usize,
    pub n_theta: usize,
    /// Row-major in `phi`: cell `(j, k)` sits at `j * n_theta + k`.
    pub cells: Vec<SweepCell>,
    pub min: f64,
    pub max: f64,
    pub mean: f64,
}

/// Pure initial state `½(sin θ cos φ, sin θ sin φ, cos θ)`.
pub fn pure_state(phi: f64, theta: f64) -> Vec3 {
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    Vec3::new(st * cp, st * sp, ct) * 0.5
}

/// Fidelity at `t = τ` over the grid `φ_j = 2πj/n_phi`,
/// `θ_k = π(k + ½)/n_theta`.
pub fn sweep_initial_states(
    prog: &ControlProgram,
    lambda: ComplexVec3,
    bath: &BathSpec,
    grid: SimGrid,
    n_phi: usize,
    n_theta: usize,
) -> Result<SweepSummary> {
    if n_phi == 0 || n_theta == 0 {
        return Err(Error::InvalidParameter(
            "sweep grid must be non-empty".into(),
        ));
    }
    let trace = prepare_trace(prog, lambda, bath, grid)?;
    let cells = (0..n_phi * n_theta)
        .into_par_iter()
        .map(|idx| {
            let (j, k) = (idx / n_theta, idx % n_theta);
            let phi = TAU * j as f64 / n_phi as f64;
            let theta = PI * (k as f64 + 0.5) / n_theta as f64;
            let traj = propagate(&trace, pure_state(phi, theta))?;
            Ok(SweepCell {
                phi,
                theta,
                fidelity: traj.final_fidelity(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let min = cells
        .iter()
        .map(|c| c.fidelity)
        .fold(f64::INFINITY, f64::min);
    let max = cells
        .iter()
        .map(|c| c.fidelity)
        .fold(f64::NEG_INFINITY, f64::max);
    let mean = cells.iter().map(|c| c.fidelity).sum::<f64>() / cells.len() as f64;
    Ok(SweepSummary {
        n_phi,
        n_theta,
        cells,
        min,
        max,
        mean,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct InsetTable {
    pub temperatures: Vec<f64>,
    pub cycles: Vec<u32>,
    /// `fidelity[i][j]` at `temperatures[i]`, `cycles[j]`.
    pub fidelity: Vec<Vec<f64>>,
}

/// Final fidelity for every `(T, n)` pair, with the program's control axis
/// held fixed.
pub fn sweep_temperature_cycles(
    prog: &ControlProgram,
    lambda: ComplexVec3,
    bath: &BathSpec,
    grid: SimGrid,
    r0: Vec3,
    temperatures: &[f64],
    cycles: &[u32],
) -> Result<InsetTable> {
    if temperatures.is_empty() || cycles.is_empty() {
        return Err(Error::InvalidParameter(
            "temperature and cycle lists must be non-empty".into(),
        ));
    }
    let nc = cycles.len();
    let flat = (0..temperatures.len() * nc)
        .into_par_iter()
        .map(|idx| {
            let b = bath.with_temperature(temperatures[idx / nc])?;
            let p = prog.with_cycles(cycles[idx % nc])?;
            Ok(integrate_trajectory(&p, lambda, &b, grid, r0)?.final_fidelity())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(InsetTable {
        temperatures: temperatures.to_vec(),
        cycles: cycles.to_vec(),
        fidelity: flat.chunks(nc).map(<[f64]>::to_vec).collect(),
    })
}
