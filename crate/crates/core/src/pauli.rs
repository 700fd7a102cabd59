//! Minimal 2×2 complex matrix algebra for density matrices and SU(2).

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::vec3::Vec3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2(pub [[Complex64; 2]; 2]);

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

impl Mat2 {
    pub const ZERO: Mat2 = Mat2([[ZERO, ZERO], [ZERO, ZERO]]);
    pub const IDENTITY: Mat2 = Mat2([[ONE, ZERO], [ZERO, ONE]]);

    /// Pauli matrix σ_x, σ_y, σ_z for `k = 0, 1, 2`.
    pub fn sigma(k: usize) -> Mat2 {
        match k {
            0 => Mat2([[ZERO, ONE], [ONE, ZERO]]),
            1 => Mat2([[ZERO, -I], [I, ZERO]]),
            2 => Mat2([[ONE, ZERO], [ZERO, -ONE]]),
            _ => panic!("Pauli index {k} out of range"),
        }
    }

    /// `Σ v_k σ_k` for a complex 3-vector given as components.
    pub fn pauli_sum(v: [Complex64; 3]) -> Mat2 {
        (0..3).fold(Mat2::ZERO, |acc, k| acc + Mat2::sigma(k).scale(v[k]))
    }

    /// `I/2 + r·σ`.
    pub fn from_bloch(r: Vec3) -> Mat2 {
        let r = r.to_array();
        Mat2::IDENTITY.scale(0.5.into()) + Mat2::pauli_sum([r[0].into(), r[1].into(), r[2].into()])
    }

    /// `I cos α - i σ·û sin α`, with `u_sin` passed as `û sin α`.
    pub fn su2(cos_alpha: f64, u_sin: Vec3) -> Mat2 {
        let v = u_sin.to_array();
        Mat2::IDENTITY.scale(cos_alpha.into())
            - Mat2::pauli_sum([v[0].into(), v[1].into(), v[2].into()]).scale(I)
    }

    /// Real Bloch components `Re Tr(ρ σ_k) / 2`.
    pub fn bloch(&self) -> Vec3 {
        let c = |k| (*self * Mat2::sigma(k)).trace().re * 0.5;
        Vec3::new(c(0), c(1), c(2))
    }

    pub fn scale(&self, c: Complex64) -> Mat2 {
        let m = &self.0;
        Mat2([[m[0][0] * c, m[0][1] * c], [m[1][0] * c, m[1][1] * c]])
    }

    pub fn adjoint(&self) -> Mat2 {
        let m = &self.0;
        Mat2([
            [m[0][0].conj(), m[1][0].conj()],
            [m[0][1].conj(), m[1][1].conj()],
        ])
    }

    pub fn trace(&self) -> Complex64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn max_abs(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|c| c.norm())
            .fold(0.0, f64::max)
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, o: Mat2) -> Mat2 {
        let (a, b) = (&self.0, &o.0);
        Mat2([
            [a[0][0] + b[0][0], a[0][1] + b[0][1]],
            [a[1][0] + b[1][0], a[1][1] + b[1][1]],
        ])
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, o: Mat2) -> Mat2 {
        self + o.scale((-1.0).into())
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, o: Mat2) -> Mat2 {
        let (a, b) = (&self.0, &o.0);
        let e = |i: usize, j: usize| a[i][0] * b[0][j] + a[i][1] * b[1][j];
        Mat2([[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]])
    }
}
