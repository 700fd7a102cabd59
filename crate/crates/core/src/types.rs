//! Gate, bath and control-program value types.

use std::f64::consts::{PI, TAU};

use crate::consts::{HBAR, K_B};
use crate::error::{Error, Result};
use crate::vec3::UnitVec3;

/// Target single-qubit gate `U = I cos(angle) - i σ·axis sin(angle)`.
///
/// The angle is kept in `[0, π]`; larger angles are folded by flipping the
/// axis, which leaves the unitary unchanged.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GateSpec {
    pub axis: UnitVec3,
    pub angle: f64,
}

impl GateSpec {
    pub fn new(axis: UnitVec3, angle: f64) -> Result<Self> {
        if !angle.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "gate angle {angle} is not finite"
            )));
        }
        let mut angle = angle.rem_euclid(TAU);
        let mut axis = axis;
        if angle > PI {
            angle = TAU - angle;
            axis = -axis;
        }
        Ok(Self { axis, angle })
    }
}

/// Thermal ohmic bath in SI units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BathSpec {
    eta: f64,
    omega_c: f64,
    temperature: f64,
    beta: f64,
}

impl BathSpec {
    /// `eta` is dimensionless, `omega_c` in rad/s, `temperature` in kelvin.
    pub fn new(eta: f64, omega_c: f64, temperature: f64) -> Result<Self> {
        for (name, v) in [
            ("eta", eta),
            ("omega_c", omega_c),
            ("temperature", temperature),
        ] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "{name} must be positive, got {v}"
                )));
            }
        }
        let beta = HBAR / (K_B * temperature);
        Ok(Self {
            eta,
            omega_c,
            temperature,
            beta,
        })
    }

    /// Builds a bath whose cutoff is given as the product `omega_c * tau`.
    pub fn with_cutoff_product(
        eta: f64,
        omega_c_tau: f64,
        temperature: f64,
        tau: f64,
    ) -> Result<Self> {
        if !(tau > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "gate time must be positive, got {tau}"
            )));
        }
        Self::new(eta, omega_c_tau / tau, temperature)
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn omega_c(&self) -> f64 {
        self.omega_c
    }

    pub fn temperature(&self) -> f64 {
        self.temperature
    }

    /// `ħ / (k_B T)` in seconds.
    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn with_temperature(&self, temperature: f64) -> Result<Self> {
        Self::new(self.eta, self.omega_c, temperature)
    }

    /// Parameters in SI time units (seconds).
    pub fn physical(&self) -> KernelBath {
        KernelBath {
            eta: self.eta,
            omega_c: self.omega_c,
            beta: self.beta,
        }
    }

    /// Parameters in units where time is measured in multiples of `tau`.
    pub fn scaled(&self, tau: f64) -> KernelBath {
        KernelBath {
            eta: self.eta,
            omega_c: self.omega_c * tau,
            beta: self.beta / tau,
        }
    }
}

/// Ohmic bath parameters in one consistent (but arbitrary) time unit.
///
/// Kernels evaluated with a `KernelBath` carry units of `1/unit^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelBath {
    pub eta: f64,
    pub omega_c: f64,
    pub beta: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ControlMode {
    /// Decoupling plus gate: `U(t) = U_c(t) U_0(t)`.
    FullControl,
    /// Gate drive only, `H_c = 0`.
    GateOnly,
    /// No drive at all.
    Free,
}

impl ControlMode {
    pub fn name(self) -> &'static str {
        match self {
            ControlMode::FullControl => "full",
            ControlMode::GateOnly => "gate-only",
            ControlMode::Free => "free",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ControlProgram {
    pub gate: GateSpec,
    pub control_axis: UnitVec3,
    pub cycles: u32,
    /// Gate time `tau` in seconds.
    pub gate_time: f64,
    pub mode: ControlMode,
}

impl ControlProgram {
    pub fn full(
        gate: GateSpec,
        control_axis: UnitVec3,
        cycles: u32,
        gate_time: f64,
    ) -> Result<Self> {
        Self {
            gate,
            control_axis,
            cycles,
            gate_time,
            mode: ControlMode::FullControl,
        }
        .validated()
    }

    pub fn gate_only(gate: GateSpec, gate_time: f64) -> Result<Self> {
        Self {
            gate,
            control_axis: gate.axis,
            cycles: 0,
            gate_time,
            mode: ControlMode::GateOnly,
        }
        .validated()
    }

    pub fn free(gate_time: f64) -> Result<Self> {
        let gate = GateSpec {
            axis: UnitVec3::Z,
            angle: 0.0,
        };
        Self {
            gate,
            control_axis: UnitVec3::Z,
            cycles: 0,
            gate_time,
            mode: ControlMode::Free,
        }
        .validated()
    }

    pub fn validated(self) -> Result<Self> {
        if !(self.gate_time > 0.0) || !self.gate_time.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "gate time must be positive, got {}",
                self.gate_time
            )));
        }
        if self.mode == ControlMode::FullControl && self.cycles == 0 {
            return Err(Error::InvalidParameter(
                "full control needs at least one cycle".into(),
            ));
        }
        Ok(self)
    }

    pub fn with_cycles(self, cycles: u32) -> Result<Self> {
        Self { cycles, ..self }.validated()
    }

    pub fn with_control_axis(self, control_axis: UnitVec3) -> Self {
        Self {
            control_axis,
            ..self
        }
    }
}
