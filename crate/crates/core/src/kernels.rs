//! Bath correlation kernels for the ohmic spectral density.
//!
//! `I₁(t) = ∫ J(ω) e^{iωt} / (e^{βω} - 1) dω` (thermal part) and
//! `I₂(t) = ∫ J(ω) e^{iωt} dω` (zero-point part), with
//! `J(ω) = η ω exp(-ω/ω_c)`. Both have closed forms; the quadrature route
//! exists to check them.

use std::io::{self, Write};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quad::{integrate_adaptive, AdaptiveOptions};
use crate::specfun::trigamma;
use crate::types::KernelBath;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectralForm {
    Ohmic,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralDensity {
    pub form: SpectralForm,
    pub eta: f64,
    pub omega_c: f64,
}

impl SpectralDensity {
    pub fn ohmic(eta: f64, omega_c: f64) -> Self {
        Self {
            form: SpectralForm::Ohmic,
            eta,
            omega_c,
        }
    }

    pub fn eval(&self, omega: f64) -> f64 {
        match self.form {
            SpectralForm::Ohmic => self.eta * omega * (-omega / self.omega_c).exp(),
        }
    }
}

impl From<&KernelBath> for SpectralDensity {
    fn from(b: &KernelBath) -> Self {
        SpectralDensity::ohmic(b.eta, b.omega_c)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelKind {
    I1,
    I2,
}

/// `I₁(t) = (η/β²) ψ⁽¹⁾(1 + 1/(βω_c) - i t/β)`.
pub fn kernel_i1(t: f64, bath: &KernelBath) -> Result<Complex64> {
    let z = Complex64::new(1.0 + 1.0 / (bath.beta * bath.omega_c), -t / bath.beta);
    Ok(trigamma(z)? * (bath.eta / (bath.beta * bath.beta)))
}

/// `I₂(t) = η ω_c² / (1 - i ω_c t)²`.
pub fn kernel_i2(t: f64, bath: &KernelBath) -> Complex64 {
    let d = Complex64::new(1.0, -bath.omega_c * t);
    Complex64::new(bath.eta * bath.omega_c * bath.omega_c, 0.0) / (d * d)
}

/// Integrand of `I₁` or `I₂` at frequency `omega`. The thermal integrand
/// takes its finite limit `η/β` at `ω = 0`.
pub fn kernel_integrand(omega: f64, t: f64, bath: &KernelBath, which: KernelKind) -> Complex64 {
    let phase = Complex64::from_polar(1.0, omega * t);
    let cutoff = (-omega / bath.omega_c).exp();
    let weight = match which {
        KernelKind::I2 => bath.eta * omega * cutoff,
        KernelKind::I1 if omega == 0.0 => bath.eta / bath.beta,
        KernelKind::I1 => bath.eta * omega / (bath.beta * omega).exp_m1() * cutoff,
    };
    phase * weight
}

/// Numerically integrates the defining frequency integral of `I₁` or `I₂`
/// to a relative accuracy of `1e-10`.
///
/// The range is cut at `ω_up`, grown until the analytic tail bound is
/// negligible; the initial subdivision scales with the number of
/// oscillations `ω_up t / π`.
pub fn kernel_quadrature(t: f64, bath: &KernelBath, which: KernelKind) -> Result<Complex64> {
    const REL_TOL: f64 = 1e-10;
    let scale = bath.eta * bath.omega_c * bath.omega_c;
    let tail_bound = |w: f64| {
        let base = bath.eta * bath.omega_c * (w + bath.omega_c) * (-w / bath.omega_c).exp();
        match which {
            KernelKind::I2 => base,
            KernelKind::I1 => base / (bath.beta * w).exp_m1(),
        }
    };
    let mut upper = 40.0 * bath.omega_c;
    while tail_bound(upper) > 1e-16 * scale {
        upper += 5.0 * bath.omega_c;
    }
    let oscillations = (upper * t.abs() / std::f64::consts::PI).ceil() as usize;
    let opts = AdaptiveOptions {
        initial_pieces: 16 + oscillations,
        abs_tol: 1e-16 * scale,
        rel_tol: 0.01 * REL_TOL,
        max_segments: 200_000,
    };
    let (value, err) =
        integrate_adaptive(|w| kernel_integrand(w, t, bath, which), 0.0, upper, opts)?;
    let total_err = err + tail_bound(upper);
    if total_err > REL_TOL * value.norm() && total_err > 1e-14 * scale {
        return Err(Error::QuadratureNotConverged {
            estimate: total_err,
        });
    }
    Ok(value)
}

/// Closed-form kernel samples at `t = m·dt`, `m = 0..=samples`.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelTable {
    pub dt: f64,
    pub i1: Vec<Complex64>,
    pub i2: Vec<Complex64>,
}

pub fn build_kernel_table(bath: &KernelBath, dt: f64, samples: usize) -> Result<KernelTable> {
    if !(dt > 0.0) || !dt.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "table step must be positive, got {dt}"
        )));
    }
    if samples < 2 {
        return Err(Error::InvalidParameter(format!(
            "need at least 2 samples, got {samples}"
        )));
    }
    let mut i1 = Vec::with_capacity(samples + 1);
    let mut i2 = Vec::with_capacity(samples + 1);
    for m in 0..=samples {
        let t = m as f64 * dt;
        i1.push(kernel_i1(t, bath)?);
        i2.push(kernel_i2(t, bath));
    }
    Ok(KernelTable { dt, i1, i2 })
}

impl KernelTable {
    pub fn len(&self) -> usize {
        self.i1.len()
    }

    pub fn is_empty(&self) -> bool {
        self.i1.is_empty()
    }

    /// CSV columns `t_over_tau, re_i1, im_i1, re_i2, im_i2`, assuming the
    /// table was built in units of the gate time.
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "t_over_tau,re_i1,im_i1,re_i2,im_i2")?;
        for (m, (a, b)) in self.i1.iter().zip(&self.i2).enumerate() {
            crate::engine::csv::write_row(&mut w, &[m as f64 * self.dt, a.re, a.im, b.re, b.im])?;
        }
        Ok(())
    }
}
