//! Complex trigamma function `ψ⁽¹⁾(z) = d²/dz² ln Γ(z)`.

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type ComplexScalar = Complex64;

/// Below this real part the argument is shifted up by the recurrence.
const SHIFT_THRESHOLD: f64 = 10.0;

const POLE_TOLERANCE: f64 = 1e-12;

/// Bernoulli numbers B_2 .. B_16.
const BERNOULLI: [f64; 8] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
];

/// Evaluates `ψ⁽¹⁾(z)`.
///
/// Uses `ψ⁽¹⁾(z) = ψ⁽¹⁾(z+1) + 1/z²` until `Re z ≥ 10`, then the asymptotic
/// series `1/z + 1/(2z²) + Σ B_2k / z^(2k+1)`. Relative error stays below
/// `1e-12` for `|Im z| ≤ 100`, `Re z ≥ -50` away from the poles.
pub fn trigamma(z: ComplexScalar) -> Result<ComplexScalar> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "trigamma argument {z} is not finite"
        )));
    }
    let nearest = z.re.round();
    if nearest <= 0.0 && (z - Complex64::new(nearest, 0.0)).norm() < POLE_TOLERANCE {
        return Err(Error::PoleArgument { re: z.re, im: z.im });
    }

    let mut w = z;
    let mut shifted = Complex64::new(0.0, 0.0);
    while w.re < SHIFT_THRESHOLD {
        shifted += (w * w).inv();
        w += 1.0;
    }

    let inv = w.inv();
    let inv2 = inv * inv;
    let mut tail = Complex64::new(0.0, 0.0);
    for &b in BERNOULLI.iter().rev() {
        tail = (tail + b) * inv2;
    }
    Ok(shifted + inv + 0.5 * inv2 + inv * tail)
}
