//! Control synthesis: the composed unitary `U(t) = U_c(t) U_0(t)`, the
//! rotated error vector `Λ(t)` and the laboratory drive field `Ω(t)`.
//!
//! Times passed as `s` are fractions of the gate time (`s = t/τ`).

use std::f64::consts::TAU;
use std::io::{self, Write};

use crate::error::{Error, Result};
use crate::quad::gauss_legendre;
use crate::types::{ControlMode, ControlProgram};
use crate::vec3::{ComplexVec3, UnitVec3, Vec3};

/// Below this `|sin α|` the rotation axis is treated as undefined.
const DEGENERATE_SIN: f64 = 1e-15;

/// The pair `(α, û)` with `U = I cos α - i σ·û sin α`.
///
/// Also carries `cos α` and `û sin α` as computed, which stay well defined
/// when `sin α = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvolutionParams {
    pub alpha: f64,
    pub axis: Vec3,
    pub degenerate: bool,
    pub cos_alpha: f64,
    pub axis_sin: Vec3,
}

impl EvolutionParams {
    fn from_components(cos_alpha: f64, axis_sin: Vec3) -> Self {
        let sin_alpha = axis_sin.norm();
        let alpha = sin_alpha.atan2(cos_alpha);
        let degenerate = sin_alpha <= DEGENERATE_SIN;
        let axis = if degenerate {
            Vec3::ZERO
        } else {
            axis_sin * (1.0 / sin_alpha)
        };
        Self {
            alpha,
            axis,
            degenerate,
            cos_alpha,
            axis_sin,
        }
    }

    pub fn unit_axis(&self) -> Option<UnitVec3> {
        (!self.degenerate)
            .then(|| UnitVec3::new(self.axis).ok())
            .flatten()
    }
}

/// `(α(s), û(s))` of the composed control unitary.
///
/// With `a = 2nπs` and `b = θ₀s`:
/// `cos α = cos a cos b - (û_c·û₀) sin a sin b` and
/// `û sin α = (û_c×û₀) sin a sin b + û_c sin a cos b + û₀ cos a sin b`.
pub fn evolution_params(s: f64, prog: &ControlProgram) -> EvolutionParams {
    match prog.mode {
        ControlMode::Free => EvolutionParams::from_components(1.0, Vec3::ZERO),
        ControlMode::GateOnly => {
            let (sb, cb) = (prog.gate.angle * s).sin_cos();
            EvolutionParams::from_components(cb, prog.gate.axis.vec() * sb)
        }
        ControlMode::FullControl => {
            let (sa, ca) = (TAU * prog.cycles as f64 * s).sin_cos();
            let (sb, cb) = (prog.gate.angle * s).sin_cos();
            let uc = prog.control_axis.vec();
            let u0 = prog.gate.axis.vec();
            let cos_alpha = ca * cb - uc.dot(u0) * sa * sb;
            let axis_sin = uc.cross(u0) * (sa * sb) + uc * (sa * cb) + u0 * (ca * sb);
            EvolutionParams::from_components(cos_alpha, axis_sin)
        }
    }
}

/// Rotated error vector `Λ = λ cos 2α + (λ×û) sin 2α + û(û·λ)(1 - cos 2α)`
/// for the unitary described by `p`.
///
/// Evaluated through `cos α` and `v = û sin α`:
/// `Λ = λ(cos²α - |v|²) + 2 cos α (λ×v) + 2 v(v·λ)`, which needs no axis
/// when `sin α = 0` (there `Λ = λ cos 2α`).
pub fn rotate_error_vector(lambda: ComplexVec3, p: &EvolutionParams) -> ComplexVec3 {
    let c = p.cos_alpha;
    if p.degenerate {
        return lambda * (c * c - p.axis_sin.dot(p.axis_sin));
    }
    let v = ComplexVec3::from(p.axis_sin);
    let vv = p.axis_sin.dot(p.axis_sin);
    lambda * (c * c - vv) + lambda.cross(v) * (2.0 * c) + v.scale(v.dot(lambda) * 2.0)
}

/// `Λ(s)` for the program at gate fraction `s`.
pub fn lambda_of_t(s: f64, lambda: ComplexVec3, prog: &ControlProgram) -> ComplexVec3 {
    rotate_error_vector(lambda, &evolution_params(s, prog))
}

/// Laboratory field `Ω(t) = static + cos_part cos(ωt) + sin_part sin(ωt)`
/// in rad/s, with `ω = rotation_rate`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DriveField {
    pub static_part: Vec3,
    pub cos_part: Vec3,
    pub sin_part: Vec3,
    pub rotation_rate: f64,
}

impl DriveField {
    /// Field at time `t` in seconds.
    pub fn at(&self, t: f64) -> Vec3 {
        let (s, c) = (self.rotation_rate * t).sin_cos();
        self.static_part + self.cos_part * c + self.sin_part * s
    }
}

/// Closed-form drive field of the program.
///
/// Full control gives a static field `[(2nπ/τ) + (θ₀/τ)(û_c·û₀)] û_c`
/// plus a circular field of amplitude `θ₀/τ` perpendicular to it, rotating
/// about `û_c` at `4nπ/τ` (the Bloch-sphere rate of `U_c`, twice its
/// phase rate). Gate-only gives the static field `(θ₀/τ) û₀`.
pub fn drive_field(prog: &ControlProgram) -> Result<DriveField> {
    let tau = prog.gate_time;
    let g = prog.gate.angle / tau;
    let u0 = prog.gate.axis.vec();
    match prog.mode {
        ControlMode::Free => Err(Error::ModeMismatch(ControlMode::Free.name())),
        ControlMode::GateOnly => Ok(DriveField {
            static_part: u0 * g,
            cos_part: Vec3::ZERO,
            sin_part: Vec3::ZERO,
            rotation_rate: 0.0,
        }),
        ControlMode::FullControl => {
            let uc = prog.control_axis.vec();
            let w = TAU * prog.cycles as f64 / tau;
            Ok(DriveField {
                static_part: uc * (w + g * uc.dot(u0)),
                cos_part: uc.cross(u0.cross(uc)) * g,
                sin_part: uc.cross(u0) * g,
                rotation_rate: 2.0 * w,
            })
        }
    }
}

/// `Ω(t)` from `Ω = α' û + sin α cos α û' + sin²α û×û'`, with the
/// derivatives of `(α, û)` taken by centered differences of step `1e-6 τ`.
/// `t` is in seconds and must lie strictly inside `(0, τ)`.
pub fn field_from_unitary(t: f64, prog: &ControlProgram) -> Result<Vec3> {
    const STEP: f64 = 1e-6;
    let tau = prog.gate_time;
    let s = t / tau;
    if !(s > 0.0 && s < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "t/tau = {s} outside (0, 1)"
        )));
    }
    if prog.mode == ControlMode::Free {
        return Ok(Vec3::ZERO);
    }
    let lo = evolution_params(s - STEP, prog);
    let mid = evolution_params(s, prog);
    let hi = evolution_params(s + STEP, prog);
    let near_zero = |p: &EvolutionParams| p.degenerate || p.axis_sin.norm() < 1e-8;
    if near_zero(&lo) || near_zero(&mid) || near_zero(&hi) {
        return Err(Error::DegenerateAxis(s));
    }
    let d_alpha = (hi.alpha - lo.alpha) / (2.0 * STEP);
    let d_axis = (hi.axis - lo.axis) * (1.0 / (2.0 * STEP));
    let (sa, ca) = mid.alpha.sin_cos();
    let omega = mid.axis * d_alpha + d_axis * (sa * ca) + mid.axis.cross(d_axis) * (sa * sa);
    Ok(omega * (1.0 / tau))
}

/// Average of `Λ_c(t)` over one control period `t_c = τ/n`, where `Λ_c`
/// rotates `λ` with `U_c` alone.
///
/// Uses composite Gauss-Legendre, 64 nodes per period. The exact value is
/// `û_c (û_c·λ)`, which vanishes iff the control axis is orthogonal to
/// both `Re λ` and `Im λ`.
pub fn decoupling_residual(
    lambda: ComplexVec3,
    u_c: UnitVec3,
    n: u32,
    tau: f64,
) -> Result<ComplexVec3> {
    const PANELS: usize = 4;
    const NODES: usize = 16;
    if n == 0 {
        return Err(Error::InvalidParameter(
            "decoupling needs at least one cycle".into(),
        ));
    }
    if !(tau > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "gate time must be positive, got {tau}"
        )));
    }
    let period = tau / n as f64;
    let rate = TAU * n as f64 / tau;
    let (x, w) = gauss_legendre(NODES);
    let uc = u_c.vec();
    let panel = period / PANELS as f64;
    let mut acc = ComplexVec3::ZERO;
    for k in 0..PANELS {
        let centre = (k as f64 + 0.5) * panel;
        for (xi, wi) in x.iter().zip(&w) {
            let t = centre + 0.5 * panel * xi;
            let (sa, ca) = (rate * t).sin_cos();
            let p = EvolutionParams::from_components(ca, uc * sa);
            acc += rotate_error_vector(lambda, &p) * (wi * 0.5 * panel);
        }
    }
    Ok(acc * (1.0 / period))
}

/// Writes `samples` rows of `Ω(t)` at `t = kτ/samples`, columns
/// `t_over_tau, ox, oy, oz` (rad/s).
pub fn write_waveform_csv<W: Write>(
    field: &DriveField,
    gate_time: f64,
    samples: usize,
    mut w: W,
) -> io::Result<()> {
    writeln!(w, "t_over_tau,ox,oy,oz")?;
    for k in 0..samples {
        let s = k as f64 / samples as f64;
        let o = field.at(s * gate_time);
        crate::engine::csv::write_row(&mut w, &[s, o.x, o.y, o.z])?;
    }
    Ok(())
}

/// Explicit SU(2) matrix of the program at gate fraction `s`.
pub fn unitary(s: f64, prog: &ControlProgram) -> crate::pauli::Mat2 {
    let p = evolution_params(s, prog);
    crate::pauli::Mat2::su2(p.cos_alpha, p.axis_sin)
}
