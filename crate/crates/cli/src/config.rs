//! Flat `key = value` experiment configuration.
//!
//! Blank lines and `#` comments are ignored, keys may appear in any order
//! and missing keys keep their defaults. [`ExperimentConfig::to_canonical`]
//! always emits every key in a fixed order with round-trip float formatting,
//! so parsing the canonical text reproduces the same value.

use std::f64::consts::TAU;
use std::fmt::Write as _;

use cdd_core::engine::SimGrid;
use cdd_core::geometry::{hadamard_gate, make_unit, orthogonal_control_axis, tilt_toward};
use cdd_core::{BathSpec, ComplexVec3, ControlMode, ControlProgram, GateSpec, UnitVec3, Vec3};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
#[error("config line {line}, field `{field}`: {message}")]
pub struct ConfigError {
    /// 1-based; 0 when the problem is not tied to a line.
    pub line: usize,
    pub field: String,
    pub message: String,
}

impl ConfigError {
    fn new(line: usize, field: &str, message: impl Into<String>) -> Self {
        Self {
            line,
            field: field.to_string(),
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Gate {
    Hadamard,
    Custom { axis: [f64; 3], angle: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AxisChoice {
    /// Cross product of the real and imaginary parts of λ.
    Auto,
    Explicit([f64; 3]),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NamedAxis {
    X,
    Y,
    Z,
}

impl NamedAxis {
    fn name(self) -> &'static str {
        match self {
            NamedAxis::X => "x",
            NamedAxis::Y => "y",
            NamedAxis::Z => "z",
        }
    }

    pub fn unit(self) -> UnitVec3 {
        match self {
            NamedAxis::X => UnitVec3::X,
            NamedAxis::Y => UnitVec3::Y,
            NamedAxis::Z => UnitVec3::Z,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub lambda_re: [f64; 3],
    pub lambda_im: [f64; 3],
    pub gate: Gate,
    pub control_mode: ControlMode,
    pub cycles: u32,
    pub tilt_deg: f64,
    pub tilt_toward: NamedAxis,
    pub u_c: AxisChoice,
    pub eta: f64,
    pub omega_c_tau: f64,
    pub temperature_k: f64,
    pub tau_seconds: f64,
    pub steps: usize,
    pub output: String,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        let uc = make_unit(Vec3::new(1.0, 0.0, -2f64.sqrt()))
            .expect("nonzero")
            .vec();
        Self {
            lambda_re: [0.8, 0.0, 2.0 * 2f64.sqrt() / 5.0],
            lambda_im: [0.0, 0.2, 0.0],
            gate: Gate::Hadamard,
            control_mode: ControlMode::FullControl,
            cycles: 5,
            tilt_deg: 0.0,
            tilt_toward: NamedAxis::X,
            u_c: AxisChoice::Explicit(uc.to_array()),
            eta: 0.0625,
            omega_c_tau: TAU,
            temperature_k: 0.25,
            tau_seconds: 1e-10,
            steps: SimGrid::DEFAULT_STEPS,
            output: "cdd".to_string(),
        }
    }
}

const KEYS: [&str; 16] = [
    "lambda_re",
    "lambda_im",
    "gate",
    "gate_axis",
    "gate_angle",
    "control_mode",
    "cycles",
    "tilt_deg",
    "tilt_toward",
    "u_c",
    "eta",
    "omega_c_tau",
    "temperature_K",
    "tau_seconds",
    "steps",
    "output",
];

fn parse_f64(line: usize, key: &str, text: &str) -> Result<f64, ConfigError> {
    let v: f64 = text
        .parse()
        .map_err(|_| ConfigError::new(line, key, format!("`{text}` is not a number")))?;
    if !v.is_finite() {
        return Err(ConfigError::new(line, key, "value must be finite"));
    }
    Ok(v)
}

fn parse_triple(line: usize, key: &str, text: &str) -> Result<[f64; 3], ConfigError> {
    let parts: Vec<&str> = text.split_whitespace().collect();
    if parts.len() != 3 {
        return Err(ConfigError::new(
            line,
            key,
            format!("expected 3 numbers, found {}", parts.len()),
        ));
    }
    let mut out = [0.0; 3];
    for (o, p) in out.iter_mut().zip(parts) {
        *o = parse_f64(line, key, p)?;
    }
    Ok(out)
}

fn fmt_triple(v: [f64; 3]) -> String {
    format!("{:?} {:?} {:?}", v[0], v[1], v[2])
}

impl ExperimentConfig {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut cfg = Self::default();
        let mut seen: Vec<(&str, usize)> = Vec::new();
        let mut gate_axis = None;
        let mut gate_angle = None;
        let mut gate_custom = false;

        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let Some((key, value)) = content.split_once('=') else {
                return Err(ConfigError::new(line, content, "expected `key = value`"));
            };
            let (key, value) = (key.trim(), value.trim());
            let Some(&known) = KEYS.iter().find(|k| **k == key) else {
                return Err(ConfigError::new(line, key, "unknown key"));
            };
            if let Some((_, first)) = seen.iter().find(|(k, _)| *k == known) {
                return Err(ConfigError::new(
                    line,
                    key,
                    format!("duplicate key, first set on line {first}"),
                ));
            }
            seen.push((known, line));

            match known {
                "lambda_re" => cfg.lambda_re = parse_triple(line, key, value)?,
                "lambda_im" => cfg.lambda_im = parse_triple(line, key, value)?,
                "gate" => match value {
                    "hadamard" => gate_custom = false,
                    "custom" => gate_custom = true,
                    _ => {
                        return Err(ConfigError::new(
                            line,
                            key,
                            "expected `hadamard` or `custom`",
                        ))
                    }
                },
                "gate_axis" => gate_axis = Some((line, parse_triple(line, key, value)?)),
                "gate_angle" => gate_angle = Some((line, parse_f64(line, key, value)?)),
                "control_mode" => {
                    cfg.control_mode = match value {
                        "full" => ControlMode::FullControl,
                        "gate-only" => ControlMode::GateOnly,
                        "free" => ControlMode::Free,
                        _ => {
                            return Err(ConfigError::new(
                                line,
                                key,
                                "expected `full`, `gate-only` or `free`",
                            ))
                        }
                    }
                }
                "cycles" => {
                    cfg.cycles = value.parse().map_err(|_| {
                        ConfigError::new(
                            line,
                            key,
                            format!("`{value}` is not a non-negative integer"),
                        )
                    })?
                }
                "tilt_deg" => cfg.tilt_deg = parse_f64(line, key, value)?,
                "tilt_toward" => {
                    cfg.tilt_toward = match value {
                        "x" => NamedAxis::X,
                        "y" => NamedAxis::Y,
                        "z" => NamedAxis::Z,
                        _ => return Err(ConfigError::new(line, key, "expected `x`, `y` or `z`")),
                    }
                }
                "u_c" => {
                    cfg.u_c = if value == "auto" {
                        AxisChoice::Auto
                    } else {
                        let v = parse_triple(line, key, value)?;
                        if Vec3::from(v).norm() == 0.0 {
                            return Err(ConfigError::new(
                                line,
                                key,
                                "control axis must be nonzero",
                            ));
                        }
                        AxisChoice::Explicit(v)
                    }
                }
                "eta" => {
                    cfg.eta = parse_f64(line, key, value)?;
                    if cfg.eta < 0.0 {
                        return Err(ConfigError::new(line, key, "must be non-negative"));
                    }
                }
                "omega_c_tau" => {
                    cfg.omega_c_tau = parse_f64(line, key, value)?;
                    if cfg.omega_c_tau <= 0.0 {
                        return Err(ConfigError::new(line, key, "must be positive"));
                    }
                }
                "temperature_K" => {
                    cfg.temperature_k = parse_f64(line, key, value)?;
                    if cfg.temperature_k <= 0.0 {
                        return Err(ConfigError::new(line, key, "must be positive"));
                    }
                }
                "tau_seconds" => {
                    cfg.tau_seconds = parse_f64(line, key, value)?;
                    if cfg.tau_seconds <= 0.0 {
                        return Err(ConfigError::new(line, key, "must be positive"));
                    }
                }
                "steps" => {
                    let steps: usize = value.parse().map_err(|_| {
                        ConfigError::new(line, key, format!("`{value}` is not an integer"))
                    })?;
                    SimGrid::new(steps).map_err(|e| ConfigError::new(line, key, e.to_string()))?;
                    cfg.steps = steps;
                }
                "output" => {
                    if value.is_empty() {
                        return Err(ConfigError::new(
                            line,
                            key,
                            "output prefix must not be empty",
                        ));
                    }
                    cfg.output = value.to_string();
                }
                _ => unreachable!("key list and match arms agree"),
            }
        }

        if gate_custom {
            let (_, axis) = gate_axis
                .ok_or_else(|| ConfigError::new(0, "gate_axis", "required for a custom gate"))?;
            let (_, angle) = gate_angle
                .ok_or_else(|| ConfigError::new(0, "gate_angle", "required for a custom gate"))?;
            if Vec3::from(axis).norm() == 0.0 {
                let line = seen
                    .iter()
                    .find(|(k, _)| *k == "gate_axis")
                    .map_or(0, |(_, l)| *l);
                return Err(ConfigError::new(
                    line,
                    "gate_axis",
                    "gate axis must be nonzero",
                ));
            }
            cfg.gate = Gate::Custom { axis, angle };
        } else {
            for (field, line) in [
                ("gate_axis", gate_axis.map(|g| g.0)),
                ("gate_angle", gate_angle.map(|g| g.0)),
            ] {
                if let Some(line) = line {
                    return Err(ConfigError::new(
                        line,
                        field,
                        "only allowed with `gate = custom`",
                    ));
                }
            }
            cfg.gate = Gate::Hadamard;
        }
        if cfg.control_mode == ControlMode::FullControl && cfg.cycles == 0 {
            let line = seen
                .iter()
                .find(|(k, _)| *k == "cycles")
                .map_or(0, |(_, l)| *l);
            return Err(ConfigError::new(
                line,
                "cycles",
                "full control needs at least one cycle",
            ));
        }
        Ok(cfg)
    }

    pub fn to_canonical(&self) -> String {
        let mut s = String::new();
        let mut put = |k: &str, v: String| {
            let _ = writeln!(s, "{k} = {v}");
        };
        put("lambda_re", fmt_triple(self.lambda_re));
        put("lambda_im", fmt_triple(self.lambda_im));
        match &self.gate {
            Gate::Hadamard => put("gate", "hadamard".into()),
            Gate::Custom { axis, angle } => {
                put("gate", "custom".into());
                put("gate_axis", fmt_triple(*axis));
                put("gate_angle", format!("{angle:?}"));
            }
        }
        put("control_mode", self.control_mode.name().into());
        put("cycles", self.cycles.to_string());
        put("tilt_deg", format!("{:?}", self.tilt_deg));
        put("tilt_toward", self.tilt_toward.name().into());
        put(
            "u_c",
            match self.u_c {
                AxisChoice::Auto => "auto".into(),
                AxisChoice::Explicit(v) => fmt_triple(v),
            },
        );
        put("eta", format!("{:?}", self.eta));
        put("omega_c_tau", format!("{:?}", self.omega_c_tau));
        put("temperature_K", format!("{:?}", self.temperature_k));
        put("tau_seconds", format!("{:?}", self.tau_seconds));
        put("steps", self.steps.to_string());
        put("output", self.output.clone());
        s
    }

    pub fn lambda(&self) -> ComplexVec3 {
        ComplexVec3::from_parts(Vec3::from(self.lambda_re), Vec3::from(self.lambda_im))
    }

    pub fn gate_spec(&self) -> cdd_core::Result<GateSpec> {
        match &self.gate {
            Gate::Hadamard => Ok(hadamard_gate()),
            Gate::Custom { axis, angle } => GateSpec::new(make_unit(Vec3::from(*axis))?, *angle),
        }
    }

    /// Control axis before any tilt.
    pub fn base_axis(&self) -> cdd_core::Result<UnitVec3> {
        match self.u_c {
            AxisChoice::Auto => orthogonal_control_axis(self.lambda()),
            AxisChoice::Explicit(v) => make_unit(Vec3::from(v)),
        }
    }

    /// Control axis after the configured tilt.
    pub fn control_axis(&self) -> cdd_core::Result<UnitVec3> {
        tilt_toward(self.base_axis()?, self.tilt_toward.unit(), self.tilt_deg)
    }

    pub fn bath(&self) -> cdd_core::Result<BathSpec> {
        BathSpec::with_cutoff_product(
            self.eta,
            self.omega_c_tau,
            self.temperature_k,
            self.tau_seconds,
        )
    }

    pub fn grid(&self) -> cdd_core::Result<SimGrid> {
        SimGrid::new(self.steps)
    }

    /// Program for the configured mode.
    pub fn program(&self) -> cdd_core::Result<ControlProgram> {
        match self.control_mode {
            ControlMode::FullControl => self.full_program(self.cycles),
            ControlMode::GateOnly => ControlProgram::gate_only(self.gate_spec()?, self.tau_seconds),
            ControlMode::Free => ControlProgram::free(self.tau_seconds),
        }
    }

    pub fn full_program(&self, cycles: u32) -> cdd_core::Result<ControlProgram> {
        ControlProgram::full(
            self.gate_spec()?,
            self.control_axis()?,
            cycles,
            self.tau_seconds,
        )
    }
}
