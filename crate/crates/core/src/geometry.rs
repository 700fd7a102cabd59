//! Control-geometry constructors.

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};
use crate::types::GateSpec;
use crate::vec3::{ComplexVec3, UnitVec3, Vec3};

pub type Mat3 = [[f64; 3]; 3];

pub fn make_unit(v: Vec3) -> Result<UnitVec3> {
    UnitVec3::new(v)
}

/// Unit vector orthogonal to both `Re λ` and `Im λ`.
///
/// Independent real and imaginary parts give `Re λ × Im λ` (sign kept as
/// computed). Otherwise the candidate among `ẑ`, `x̂` least aligned with
/// the nonzero part is Gram-Schmidt projected; ties prefer `ẑ`.
pub fn orthogonal_control_axis(lambda: ComplexVec3) -> Result<UnitVec3> {
    let (re, im) = (lambda.re(), lambda.im());
    let (nr, ni) = (re.norm(), im.norm());
    if !(nr.max(ni) > 1e-300) {
        return Err(Error::ZeroErrorVector);
    }
    let c = re.cross(im);
    if c.norm() > 1e-10 * nr * ni {
        return UnitVec3::new(c);
    }
    let p = if nr >= ni {
        re * (1.0 / nr)
    } else {
        im * (1.0 / ni)
    };
    let candidate = if p.z.abs() <= p.x.abs() {
        Vec3::Z
    } else {
        Vec3::X
    };
    UnitVec3::new(candidate - p * candidate.dot(p))
}

/// Hadamard (up to global phase): axis `(x̂ + ẑ)/√2`, angle `π/2`.
pub fn hadamard_gate() -> GateSpec {
    let axis = UnitVec3::new(Vec3::new(1.0, 0.0, 1.0)).expect("nonzero");
    GateSpec {
        axis,
        angle: FRAC_PI_2,
    }
}

/// Rotates `axis` by `degrees` within the plane it spans with `toward`.
pub fn tilt_toward(axis: UnitVec3, toward: UnitVec3, degrees: f64) -> Result<UnitVec3> {
    if degrees == 0.0 {
        return Ok(axis);
    }
    let a = axis.vec();
    let perp = UnitVec3::new(toward.vec() - a * a.dot(toward.vec())).map_err(|_| {
        Error::InvalidParameter("tilt target is parallel to the control axis".into())
    })?;
    let t = degrees.to_radians();
    UnitVec3::new(a * t.cos() + perp.vec() * t.sin())
}

/// Bloch-vector rotation induced by `U = I cos α - i σ·û sin α`, i.e. the
/// map `r ↦ R r` with `U (r·σ) U† = (R r)·σ`: a right-handed rotation by
/// `2α` about `û`.
pub fn bloch_rotation(alpha: f64, axis: Vec3) -> Mat3 {
    let (s, c) = (2.0 * alpha).sin_cos();
    let k = axis.to_array();
    let mut r = [[0.0; 3]; 3];
    for (i, row) in r.iter_mut().enumerate() {
        for (j, e) in row.iter_mut().enumerate() {
            let delta = if i == j { 1.0 } else { 0.0 };
            *e = c * delta + (1.0 - c) * k[i] * k[j];
        }
    }
    r[0][1] -= s * k[2];
    r[0][2] += s * k[1];
    r[1][0] += s * k[2];
    r[1][2] -= s * k[0];
    r[2][0] -= s * k[1];
    r[2][1] += s * k[0];
    r
}

pub fn mat_vec(m: &Mat3, v: Vec3) -> Vec3 {
    let v = v.to_array();
    let row = |r: &[f64; 3]| r[0] * v[0] + r[1] * v[1] + r[2] * v[2];
    Vec3::new(row(&m[0]), row(&m[1]), row(&m[2]))
}

pub fn determinant(m: &Mat3) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Largest entry of `Mᵀ M - I`.
pub fn orthogonality_error(m: &Mat3) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..3 {
        for j in 0..3 {
            let d: f64 = (0..3).map(|k| m[k][i] * m[k][j]).sum();
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((d - target).abs());
        }
    }
    worst
}
