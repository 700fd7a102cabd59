//! Continuous dynamical decoupling of single-qubit gates from a thermal
//! bath of scalar bosons.
//!
//! The crate synthesizes the control unitary `U(t) = U_c(t) U_0(t)` that
//! realizes a target gate while averaging away a known error coupling,
//! computes the ohmic bath correlation kernels, and integrates the
//! second-order time-local (non-Markovian) Bloch equation in the
//! interaction picture to obtain gate fidelities.
//!
//! All dynamics run in dimensionless time `s = t / tau` where `tau` is the
//! gate time; kernels are stored multiplied by `tau^2`.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod consts;
pub mod control;
pub mod engine;
pub mod error;
pub mod geometry;
pub mod kernels;
pub mod pauli;
pub mod quad;
pub mod specfun;
pub mod types;
pub mod vec3;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use types::{BathSpec, ControlMode, ControlProgram, GateSpec, KernelBath};
pub use vec3::{ComplexVec3, UnitVec3, Vec3};
