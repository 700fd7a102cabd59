//! Density-matrix form of the master equation, used to cross-check the
//! Bloch-vector integrator.
//!
//! ```text
//! dρ/dt = Σ_ab D_ab [σ_a, ρ σ_b] + D*_ab [σ_b ρ, σ_a]
//! D_ab  = 2 Re{Λ*_a F_b} + Λ*_a G_b
//! ```

use num_complex::Complex64;

use super::{check_initial_state, prepare_trace, SimGrid, TrajectoryResult};
use crate::error::Result;
use crate::pauli::Mat2;
use crate::types::{BathSpec, ControlProgram};
use crate::vec3::{ComplexVec3, Vec3};

pub fn master_rhs(rho: &Mat2, lam: ComplexVec3, f_mem: ComplexVec3, g_mem: ComplexVec3) -> Mat2 {
    let lc = lam.conj().to_array();
    let f = f_mem.to_array();
    let g = g_mem.to_array();
    let sigma = [Mat2::sigma(0), Mat2::sigma(1), Mat2::sigma(2)];
    let mut out = Mat2::ZERO;
    for a in 0..3 {
        for b in 0..3 {
            let d = Complex64::new(2.0 * (lc[a] * f[b]).re, 0.0) + lc[a] * g[b];
            let (sa, sb) = (sigma[a], sigma[b]);
            let first = sa * *rho * sb - *rho * sb * sa;
            let second = sb * *rho * sa - sa * sb * *rho;
            out = out + first.scale(d) + second.scale(d.conj());
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleTrajectory {
    pub trajectory: TrajectoryResult,
    /// Largest `|Tr ρ(t) - 1|` seen along the trajectory.
    pub max_trace_error: f64,
}

/// Integrates the density-matrix master equation with the same grid,
/// kernel table and memory quadrature as the Bloch integrator.
pub fn density_matrix_oracle(
    prog: &ControlProgram,
    lambda: ComplexVec3,
    bath: &BathSpec,
    grid: SimGrid,
    r0: Vec3,
) -> Result<OracleTrajectory> {
    check_initial_state(r0)?;
    let trace = prepare_trace(prog, lambda, bath, grid)?;
    let h = grid.step();
    let rhs = |k: usize, rho: &Mat2| master_rhs(rho, trace.lambda[k], trace.f[k], trace.g[k]);
    let mut rho = Mat2::from_bloch(r0);
    let mut bloch = vec![rho.bloch()];
    let mut max_trace_error = 0.0f64;
    let c = |x: f64| Complex64::new(x, 0.0);
    for i in 0..grid.steps {
        let k = 2 * i;
        let k1 = rhs(k, &rho);
        let k2 = rhs(k + 1, &(rho + k1.scale(c(0.5 * h))));
        let k3 = rhs(k + 1, &(rho + k2.scale(c(0.5 * h))));
        let k4 = rhs(k + 2, &(rho + k3.scale(c(h))));
        rho = rho + (k1 + k2.scale(c(2.0)) + k3.scale(c(2.0)) + k4).scale(c(h / 6.0));
        max_trace_error = max_trace_error.max((rho.trace() - 1.0).norm());
        bloch.push(rho.bloch());
    }
    Ok(OracleTrajectory {
        trajectory: TrajectoryResult::from_samples(bloch, r0, &grid),
        max_trace_error,
    })
}
