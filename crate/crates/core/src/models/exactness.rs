use std::sync::Arc;

use num::{BigRational, Zero};
use serde::Serialize;

use super::{El, Gk, Lambda, LoopSpace, Phi, Pkg};
use crate::algebra::LieAlgebra;
use crate::error::{Error, Result};
use crate::linfty::{LInftyHom, TwoTermLInfinity};
use crate::path::{CentralVector, PolyPath};
use crate::space::Vector;

/// Ranks certifying `0 → ℰΩ𝔤 → 𝒫ₖ𝔤 → 𝔤ₖ → 0` is exact on paths of degree
/// at most `degree`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExactnessReport {
    pub dim: usize,
    pub degree: usize,
    pub dim_paths: usize,
    pub dim_loops: usize,
    pub rank_phi0: usize,
    pub rank_phi1: usize,
    pub rank_lambda0: usize,
    pub rank_lambda1: usize,
    pub dim_ker_phi0: usize,
    pub dim_ker_phi1: usize,
    /// `φ₀∘λ₀ = 0` and `φ₁∘λ₁ = 0` exactly.
    pub composites_vanish: bool,
    pub pass: bool,
}

/// Exact (rational) rank computations on coordinate bases: `λ₀`, `λ₁`
/// injective, `φ₀`, `φ₁` surjective, `im λᵢ ⊆ ker φᵢ` with equal dimensions.
pub fn exactness_check(algebra: Arc<LieAlgebra>, k: f64, degree: usize) -> Result<ExactnessReport> {
    if degree < 2 {
        return Err(Error::OutOfRange(format!(
            "exactness needs ambient degree at least 2, got {degree}"
        )));
    }
    let n = algebra.dim();
    let pkg = Pkg::new(algebra.clone(), k, degree);
    let phi = Phi::new(pkg.clone(), Gk::new(algebra.clone(), k));
    let lambda = Lambda::new(El::new(LoopSpace::new(algebra.clone(), degree)), pkg);

    let paths = PolyPath::basis_based(&algebra, degree);
    let loops = PolyPath::basis_loop(&algebra, degree);
    let mut v1_basis: Vec<CentralVector> = loops
        .iter()
        .map(|l| CentralVector::new(l.clone(), 0.0))
        .collect::<Result<_>>()?;
    v1_basis.push(CentralVector::central(algebra.clone(), 1.0));

    let phi0 = columns(paths.iter().map(|p| phi.phi0(p).as_slice().to_vec()))?;
    let phi1 = columns(v1_basis.iter().map(|h| vec![phi.phi1(h)]))?;
    let lambda0 = columns(
        loops
            .iter()
            .map(|l| path_coords(&lambda.phi0(l), degree))
            .collect::<Result<Vec<_>>>()?,
    )?;
    let lambda1 = columns(
        loops
            .iter()
            .map(|l| central_coords(&lambda.phi1(l), degree))
            .collect::<Result<Vec<_>>>()?,
    )?;
    // φ₁ in the same embedding of V₁ used by λ₁: only the central slot counts.
    let mut phi1_embedded = vec![vec![BigRational::zero(); n * degree + 1]];
    phi1_embedded[0][n * degree] = rational(1.0)?;

    let composites_vanish = is_zero(&product(&phi0, &lambda0)) && is_zero(&product(&phi1_embedded, &lambda1));

    let dim_paths = n * degree;
    let dim_loops = n * (degree - 1);
    let rank_phi0 = rank(phi0);
    let rank_phi1 = rank(phi1);
    let rank_lambda0 = rank(lambda0);
    let rank_lambda1 = rank(lambda1);
    let dim_ker_phi0 = dim_paths - rank_phi0;
    let dim_ker_phi1 = dim_loops + 1 - rank_phi1;
    let pass = composites_vanish
        && rank_phi0 == n
        && rank_phi1 == 1
        && rank_lambda0 == dim_loops
        && rank_lambda1 == dim_loops
        && dim_ker_phi0 == rank_lambda0
        && dim_ker_phi1 == rank_lambda1;
    Ok(ExactnessReport {
        dim: n,
        degree,
        dim_paths,
        dim_loops,
        rank_phi0,
        rank_phi1,
        rank_lambda0,
        rank_lambda1,
        dim_ker_phi0,
        dim_ker_phi1,
        composites_vanish,
        pass,
    })
}

/// Largest deviation, over pairs of basis loops, between `λ₂` and the value
/// forced by the second homomorphism equation given the chain map. Since
/// `d = 1` on `ℰΩ𝔤`, that equation reads
/// `λ₂(ℓ₁, ℓ₂) = λ₁([ℓ₁, ℓ₂]) - l₂(λ₀ℓ₁, λ₁ℓ₂)` and determines `λ₂`.
pub fn lambda2_uniqueness_residual(algebra: Arc<LieAlgebra>, k: f64, degree: usize) -> f64 {
    let el = El::new(LoopSpace::new(algebra.clone(), degree));
    let pkg = Pkg::new(algebra.clone(), k, degree);
    let lambda = Lambda::new(el.clone(), pkg.clone());
    let basis = PolyPath::basis_loop(&algebra, degree);
    let mut worst = 0.0f64;
    for a in &basis {
        for b in &basis {
            let forced = lambda
                .phi1(&el.l2_01(a, b))
                .sub(&pkg.l2_01(&lambda.phi0(a), &lambda.phi1(b)));
            worst = worst.max(forced.sub(&lambda.phi2(a, b)).norm());
        }
    }
    worst
}

type Matrix = Vec<Vec<BigRational>>;

fn rational(v: f64) -> Result<BigRational> {
    BigRational::from_float(v).ok_or_else(|| Error::Parse(format!("non-finite matrix entry {v}")))
}

/// Builds a matrix from its columns.
fn columns(cols: impl IntoIterator<Item = Vec<f64>>) -> Result<Matrix> {
    let cols: Vec<Vec<f64>> = cols.into_iter().collect();
    let rows = cols.first().map_or(0, Vec::len);
    (0..rows)
        .map(|i| cols.iter().map(|c| rational(c[i])).collect())
        .collect()
}

/// Coordinates of a based path in the basis `u^d e_i`, `d = 1..=degree`.
fn path_coords(p: &PolyPath, degree: usize) -> Result<Vec<f64>> {
    if p.degree() > degree {
        return Err(Error::OutOfRange(format!("path of degree {} above {degree}", p.degree())));
    }
    let c = p.coeffs();
    let mut out = Vec::with_capacity(c.nrows() * degree);
    for i in 0..c.nrows() {
        for d in 1..=degree {
            out.push(if d < c.ncols() { c[(i, d)] } else { 0.0 });
        }
    }
    Ok(out)
}

fn central_coords(h: &CentralVector, degree: usize) -> Result<Vec<f64>> {
    let mut out = path_coords(&h.ell, degree)?;
    out.push(h.c);
    Ok(out)
}

fn product(a: &Matrix, b: &Matrix) -> Matrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(BigRational::zero(), |acc, t| acc + &row[t] * &b[t][j]))
                .collect()
        })
        .collect()
}

fn is_zero(m: &Matrix) -> bool {
    m.iter().flatten().all(Zero::is_zero)
}

/// Rank by Gaussian elimination over the rationals.
fn rank(mut m: Matrix) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(pivot) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pivot);
        let lead = m[r][c].clone();
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let factor = &m[i][c] / &lead;
                for j in c..cols {
                    let delta = &factor * &m[r][j];
                    m[i][j] -= delta;
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::Signed;

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    #[test]
    fn rank_of_small_matrices() {
        assert_eq!(rank(vec![vec![q(1), q(2)], vec![q(2), q(4)]]), 1);
        assert_eq!(rank(vec![vec![q(0), q(1)], vec![q(1), q(0)]]), 2);
        assert_eq!(rank(vec![vec![q(0), q(0)]]), 0);
        assert_eq!(rank(Vec::new()), 0);
        let m = vec![
            vec![q(1), q(2), q(3)],
            vec![q(4), q(5), q(6)],
            vec![q(7), q(8), q(9)],
        ];
        assert_eq!(rank(m), 2);
    }

    #[test]
    fn rank_is_exact_for_nearly_dependent_rows() {
        let eps = BigRational::new(1.into(), num::BigInt::from(10).pow(40));
        let m = vec![vec![q(1), q(1)], vec![q(1), q(1) + eps.clone()]];
        assert_eq!(rank(m), 2);
        assert!(eps.is_positive());
    }

    #[test]
    fn su2_degree_four_dimensions() {
        let r = exactness_check(Arc::new(LieAlgebra::su2()), 1.0, 4).unwrap();
        assert_eq!(r.dim_paths, 12);
        assert_eq!(r.dim_ker_phi0, 9);
        assert_eq!(r.rank_lambda0, 9);
        assert_eq!(r.rank_phi0, 3);
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn passes_for_every_small_degree() {
        for degree in 2..=6 {
            for k in [-2.0, 0.0, 1.0] {
                let r = exactness_check(Arc::new(LieAlgebra::su2()), k, degree).unwrap();
                assert!(r.pass, "degree {degree}, k {k}: {r:?}");
            }
        }
    }

    #[test]
    fn rejects_degree_below_two() {
        assert!(matches!(
            exactness_check(Arc::new(LieAlgebra::su2()), 1.0, 1),
            Err(Error::OutOfRange(_))
        ));
    }

    #[test]
    fn lambda2_is_forced() {
        for k in [-1.0, 0.5, 2.0] {
            assert!(lambda2_uniqueness_residual(Arc::new(LieAlgebra::su2()), k, 4) < 1e-12);
        }
    }
}
