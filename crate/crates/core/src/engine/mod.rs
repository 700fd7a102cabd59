//! Integration of the second-order time-local Bloch equation
//!
//! ```text
//! dr/dt = 4 Re{Λ* × [(2F + G) × r]} - 2 Im[Λ* × G]
//! ```
//!
//! with memory vectors `F(t) = ∫₀ᵗ Λ(t') I₁(t-t') dt'` and
//! `G(t) = ∫₀ᵗ Λ(t') I₂(t-t') dt'`.
//!
//! Everything lives on a half-step grid of spacing `h/2 = 1/(2N)` (in units
//! of the gate time), so the classical RK4 stages at `t`, `t + h/2`,
//! `t + h` land on grid nodes and never interpolate. `F` and `G` depend on
//! `Λ` only, so one [`MemoryTrace`] serves any number of initial states.

pub mod csv;
mod oracle;
pub mod sweep;

pub use oracle::{density_matrix_oracle, master_rhs, OracleTrajectory};
pub use sweep::{
    sweep_initial_states, sweep_temperature_cycles, InsetTable, SweepCell, SweepSummary,
};

use crate::control::lambda_of_t;
use crate::error::{Error, Result};
use crate::kernels::{build_kernel_table, KernelTable};
use crate::types::{BathSpec, ControlProgram};
use crate::vec3::{ComplexVec3, Vec3};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimGrid {
    /// Full RK4 steps over `[0, τ]`.
    pub steps: usize,
    /// Purity-excess flag raised when `max |r| > 1/2 + threshold`.
    pub purity_warning_threshold: f64,
}

impl SimGrid {
    pub const DEFAULT_STEPS: usize = 4096;
    pub const SWEEP_STEPS: usize = 2048;

    pub fn new(steps: usize) -> Result<Self> {
        if steps < 16 || !steps.is_multiple_of(2) {
            return Err(Error::InvalidParameter(format!(
                "step count must be even and at least 16, got {steps}"
            )));
        }
        Ok(Self {
            steps,
            purity_warning_threshold: 0.05,
        })
    }

    pub fn step(&self) -> f64 {
        1.0 / self.steps as f64
    }

    pub fn half_step(&self) -> f64 {
        0.5 / self.steps as f64
    }

    /// Number of half-step nodes including both ends.
    pub fn nodes(&self) -> usize {
        2 * self.steps + 1
    }
}

impl Default for SimGrid {
    fn default() -> Self {
        Self::new(Self::DEFAULT_STEPS).expect("valid default")
    }
}

/// Right-hand side of the Bloch equation, evaluated literally.
pub fn bloch_rhs(r: Vec3, lam: ComplexVec3, f_mem: ComplexVec3, g_mem: ComplexVec3) -> Vec3 {
    let lc = lam.conj();
    let drift = lc.cross((f_mem * 2.0 + g_mem).cross(ComplexVec3::from(r)));
    drift.re() * 4.0 - lc.cross(g_mem).im() * 2.0
}

/// `Tr[ρ ρ₀] = 1/2 + 2 r·r₀` for `ρ = I/2 + r·σ`.
pub fn fidelity(r: Vec3, r0: Vec3) -> f64 {
    0.5 + 2.0 * r.dot(r0)
}

/// Running memory integrals over the history of `Λ` on the half-step grid.
#[derive(Debug, Clone, PartialEq)]
pub struct MemoryState {
    pub f_mem: ComplexVec3,
    pub g_mem: ComplexVec3,
    pub history: Vec<ComplexVec3>,
    pub dt: f64,
}

impl MemoryState {
    pub fn new(dt: f64) -> Self {
        Self {
            f_mem: ComplexVec3::ZERO,
            g_mem: ComplexVec3::ZERO,
            history: Vec::new(),
            dt,
        }
    }

    pub fn with_history(dt: f64, history: Vec<ComplexVec3>) -> Self {
        Self {
            history,
            ..Self::new(dt)
        }
    }

    fn node_index(&self, t: f64, table: &KernelTable) -> Result<usize> {
        let x = t / self.dt;
        let j = x.round();
        if !(j >= 0.0) || (x - j).abs() > 1e-9 || table.dt != self.dt {
            return Err(Error::GridMisaligned(t));
        }
        let j = j as usize;
        if j >= self.history.len() || j >= table.len() {
            return Err(Error::GridMisaligned(t));
        }
        Ok(j)
    }
}

/// Recomputes `F(t)` and `G(t)` by the trapezoid rule over the stored
/// history, reading kernels at exact node differences.
pub fn update_memory(state: &mut MemoryState, t: f64, table: &KernelTable) -> Result<()> {
    let j = state.node_index(t, table)?;
    let (mut f, mut g) = (ComplexVec3::ZERO, ComplexVec3::ZERO);
    if j > 0 {
        for (m, lam) in state.history[..=j].iter().enumerate() {
            let w = if m == 0 || m == j { 0.5 } else { 1.0 };
            let k = j - m;
            f += lam.scale(table.i1[k] * w);
            g += lam.scale(table.i2[k] * w);
        }
    }
    state.f_mem = f * state.dt;
    state.g_mem = g * state.dt;
    Ok(())
}

/// `Λ`, `F`, `G` sampled on every half-step node of a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct MemoryTrace {
    pub grid: SimGrid,
    pub lambda: Vec<ComplexVec3>,
    pub f: Vec<ComplexVec3>,
    pub g: Vec<ComplexVec3>,
}

pub fn prepare_trace(
    prog: &ControlProgram,
    lambda: ComplexVec3,
    bath: &BathSpec,
    grid: SimGrid,
) -> Result<MemoryTrace> {
    let dt = grid.half_step();
    let nodes = grid.nodes();
    let table = build_kernel_table(&bath.scaled(prog.gate_time), dt, nodes - 1)?;
    let history: Vec<_> = (0..nodes)
        .map(|j| lambda_of_t(j as f64 * dt, lambda, prog))
        .collect();
    let mut state = MemoryState::with_history(dt, history);
    let mut f = Vec::with_capacity(nodes);
    let mut g = Vec::with_capacity(nodes);
    for j in 0..nodes {
        update_memory(&mut state, j as f64 * dt, &table)?;
        f.push(state.f_mem);
        g.push(state.g_mem);
    }
    Ok(MemoryTrace {
        grid,
        lambda: state.history,
        f,
        g,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryResult {
    /// Sample times as fractions of the gate time.
    pub times: Vec<f64>,
    pub bloch: Vec<Vec3>,
    pub fidelity: Vec<f64>,
    pub max_bloch_norm: f64,
    /// Set when the Bloch vector left the ball by more than the grid
    /// threshold, a sign the weak-coupling regime is violated.
    pub purity_excess: bool,
}

impl TrajectoryResult {
    fn from_samples(bloch: Vec<Vec3>, r0: Vec3, grid: &SimGrid) -> Self {
        let h = grid.step();
        let times = (0..bloch.len()).map(|i| i as f64 * h).collect();
        let fidelity = bloch.iter().map(|r| fidelity(*r, r0)).collect();
        let max_bloch_norm = bloch.iter().map(|r| r.norm()).fold(0.0, f64::max);
        let purity_excess = max_bloch_norm > 0.5 + grid.purity_warning_threshold;
        Self {
            times,
            bloch,
            fidelity,
            max_bloch_norm,
            purity_excess,
        }
    }

    pub fn final_fidelity(&self) -> f64 {
        *self.fidelity.last().expect("trajectory has samples")
    }

    pub fn final_bloch(&self) -> Vec3 {
        *self.bloch.last().expect("trajectory has samples")
    }
}

fn check_initial_state(r0: Vec3) -> Result<()> {
    let n = r0.norm();
    if !r0.is_finite() || n > 0.5 + 1e-12 {
        return Err(Error::InvalidInitialState(n));
    }
    Ok(())
}

/// Classical RK4 over a precomputed trace.
pub fn propagate(trace: &MemoryTrace, r0: Vec3) -> Result<TrajectoryResult> {
    check_initial_state(r0)?;
    let n = trace.grid.steps;
    let h = trace.grid.step();
    let rhs = |k: usize, r: Vec3| bloch_rhs(r, trace.lambda[k], trace.f[k], trace.g[k]);
    let mut bloch = Vec::with_capacity(n + 1);
    let mut r = r0;
    bloch.push(r);
    for i in 0..n {
        let k = 2 * i;
        let k1 = rhs(k, r);
        let k2 = rhs(k + 1, r + k1 * (0.5 * h));
        let k3 = rhs(k + 1, r + k2 * (0.5 * h));
        let k4 = rhs(k + 2, r + k3 * h);
        r += (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);
        bloch.push(r);
    }
    Ok(TrajectoryResult::from_samples(bloch, r0, &trace.grid))
}

/// Solves the Bloch equation over `[0, τ]` from `r0`.
pub fn integrate_trajectory(
    prog: &ControlProgram,
    lambda: ComplexVec3,
    bath: &BathSpec,
    grid: SimGrid,
    r0: Vec3,
) -> Result<TrajectoryResult> {
    check_initial_state(r0)?;
    let trace = prepare_trace(prog, lambda, bath, grid)?;
    propagate(&trace, r0)
}
