//! SU(2) as 2×2 complex matrices, with `su(2)` embedded through
//! `e_j = -(i/2)σ_j` so that `[e₁, e₂] = e₃` cyclically.

use nalgebra::{Complex, Matrix2, Vector3};
use serde::{Deserialize, Serialize};

use crate::algebra::LieAlgebra;
use crate::error::{Error, Result};

pub type C64 = Complex<f64>;
pub type Mat = Matrix2<C64>;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn identity() -> Mat {
    Mat::identity()
}

/// `e_j = -(i/2)σ_j`, `j ∈ {0, 1, 2}`.
pub fn basis(j: usize) -> Mat {
    let h = 0.5;
    match j {
        0 => Mat::new(c(0.0, 0.0), c(0.0, -h), c(0.0, -h), c(0.0, 0.0)),
        1 => Mat::new(c(0.0, 0.0), c(-h, 0.0), c(h, 0.0), c(0.0, 0.0)),
        2 => Mat::new(c(0.0, -h), c(0.0, 0.0), c(0.0, 0.0), c(0.0, h)),
        _ => panic!("su(2) basis index {j} out of range"),
    }
}

/// `Σ a_j e_j`.
pub fn embed(a: &Vector3<f64>) -> Mat {
    basis(0) * c(a[0], 0.0) + basis(1) * c(a[1], 0.0) + basis(2) * c(a[2], 0.0)
}

/// Coordinates in the basis `e_j`, `a_j = -2 Re tr(A e_j)`.
pub fn coords(m: &Mat) -> Vector3<f64> {
    Vector3::from_fn(|j, _| -2.0 * (m * basis(j)).trace().re)
}

/// Skew-Hermitian traceless part `(A - A†)/2 - tr(·)/2`.
pub fn project_algebra(m: &Mat) -> Mat {
    let skew = (m - m.adjoint()) * c(0.5, 0.0);
    let tr = skew.trace() * c(0.5, 0.0);
    skew - Mat::identity() * tr
}

/// `exp(Σ a_j e_j) = cos(|a|/2) I - i sin(|a|/2) (a·σ)/|a|`.
pub fn exp(a: &Vector3<f64>) -> Mat {
    let r = a.norm();
    if r == 0.0 {
        return Mat::identity();
    }
    let (s, co) = (0.5 * r).sin_cos();
    // -i (a·σ)/|a| = 2 embed(a)/|a|
    Mat::identity() * c(co, 0.0) + embed(a) * c(2.0 * s / r, 0.0)
}

/// Nearest element of the form `[[a, -b̄], [b, ā]]` with `|a|² + |b|² = 1`,
/// built from the normalized first column.
pub fn reproject(m: &Mat) -> Mat {
    let (a, b) = (m[(0, 0)], m[(1, 0)]);
    let n = (a.norm_sqr() + b.norm_sqr()).sqrt();
    let (a, b) = (a / n, b / n);
    Mat::new(a, -b.conj(), b, a.conj())
}

/// `‖M†M - I‖ + |det M - 1|`.
pub fn unitarity_defect(m: &Mat) -> f64 {
    (m.adjoint() * m - Mat::identity()).norm() + (m.determinant() - c(1.0, 0.0)).norm()
}

/// `⟨A, B⟩ = scale · (-2) Re tr(AB)` on `su(2)`; `scale = 1` matches
/// `B = I` on the basis `e_j`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TracePairing {
    pub scale: f64,
}

impl Default for TracePairing {
    fn default() -> Self {
        Self { scale: 1.0 }
    }
}

impl TracePairing {
    pub fn new(scale: f64) -> Self {
        Self { scale }
    }

    pub fn pair(&self, a: &Mat, b: &Mat) -> f64 {
        -2.0 * self.scale * (a * b).trace().re
    }

    /// Checks that the embedding is a Lie algebra map and that the pairing
    /// reproduces the algebra's form on embedded basis elements.
    pub fn validate(&self, algebra: &LieAlgebra, tol: f64) -> Result<()> {
        if algebra.dim() != 3 {
            return Err(Error::DimensionMismatch {
                expected: 3,
                got: algebra.dim(),
            });
        }
        for i in 0..3 {
            for j in 0..3 {
                let commutator = basis(i) * basis(j) - basis(j) * basis(i);
                let expected = embed(&Vector3::from_fn(|k, _| algebra.c(i, j, k)));
                if (commutator - expected).norm() > tol {
                    return Err(Error::InvalidPresentation(format!(
                        "{} does not match the su(2) matrix embedding at [e{}, e{}]",
                        algebra.name(),
                        i + 1,
                        j + 1
                    )));
                }
                let b = algebra.form()[(i, j)];
                let p = self.pair(&basis(i), &basis(j));
                if (p - b).abs() > tol {
                    return Err(Error::InvalidPresentation(format!(
                        "trace pairing scale {} gives ⟨e{},e{}⟩ = {p}, the form has {b}",
                        self.scale,
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(())
    }
}
