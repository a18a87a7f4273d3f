//! Exact polynomial model of based paths `P₀𝔤` and loops `Ω𝔤` on `[0, 2π]`.
//!
//! Each coordinate of a path is a polynomial in `u = θ/2π ∈ [0, 1]`. All
//! factors of 2π live in [`PolyPath::derivative`] (×1/2π) and in the
//! integrals (×2π), so coefficients stay well conditioned. Degrees grow under
//! products and are never truncated; every identity checked on these paths is
//! exact up to floating-point roundoff.

use std::sync::Arc;

use nalgebra::DMatrix;
use rand::Rng;
use serde_json::{json, Value};

use crate::algebra::{GVector, LieAlgebra};
use crate::error::{Error, Result};
use crate::space::Vector;

pub const TWO_PI: f64 = 2.0 * std::f64::consts::PI;

/// Absolute tolerance for endpoint conditions.
pub const ENDPOINT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum PathKind {
    /// No endpoint guarantees (e.g. derivatives).
    Free,
    /// `p(0) = 0`.
    Based,
    /// `p(0) = p(2π) = 0`.
    Loop,
}

impl PathKind {
    /// Kind of a linear combination.
    fn join(self, other: Self) -> Self {
        self.min(other)
    }

    fn as_str(self) -> &'static str {
        match self {
            PathKind::Free => "free",
            PathKind::Based => "based",
            PathKind::Loop => "loop",
        }
    }
}

pub(crate) fn same_algebra(a: &Arc<LieAlgebra>, b: &Arc<LieAlgebra>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// A 𝔤-valued polynomial path; row `i` holds the coefficients of coordinate
/// `i` in powers of `u`.
#[derive(Debug, Clone)]
pub struct PolyPath {
    algebra: Arc<LieAlgebra>,
    coeffs: DMatrix<f64>,
    kind: PathKind,
}

impl PolyPath {
    /// Validates the endpoint conditions implied by `kind`.
    pub fn new(algebra: Arc<LieAlgebra>, coeffs: DMatrix<f64>, kind: PathKind) -> Result<Self> {
        if coeffs.nrows() != algebra.dim() {
            return Err(Error::DimensionMismatch {
                expected: algebra.dim(),
                got: coeffs.nrows(),
            });
        }
        if coeffs.ncols() == 0 {
            return Err(Error::PathConstraint("a path needs at least one coefficient".into()));
        }
        let path = Self {
            algebra,
            coeffs,
            kind,
        };
        path.check_kind(kind)?;
        Ok(path)
    }

    pub fn zero(algebra: Arc<LieAlgebra>, kind: PathKind) -> Self {
        let n = algebra.dim();
        Self {
            algebra,
            coeffs: DMatrix::zeros(n, 1),
            kind,
        }
    }

    /// `u^degree · x`.
    pub fn monomial(algebra: Arc<LieAlgebra>, degree: usize, x: &GVector, kind: PathKind) -> Result<Self> {
        let n = algebra.dim();
        if x.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: x.len() });
        }
        let mut coeffs = DMatrix::zeros(n, degree + 1);
        coeffs.set_column(degree, x);
        Self::new(algebra, coeffs, kind)
    }

    /// `f(u) · x` for a scalar polynomial `f`.
    pub fn scalar_times(algebra: Arc<LieAlgebra>, f: &ScalarPoly, x: &GVector, kind: PathKind) -> Result<Self> {
        let n = algebra.dim();
        if x.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: x.len() });
        }
        let coeffs = DMatrix::from_fn(n, f.coeffs.len(), |i, d| x[i] * f.coeffs[d]);
        Self::new(algebra, coeffs, kind)
    }

    /// Random path of the given degree: coefficients iid uniform on `[-1, 1]`,
    /// then projected onto the constraints of `kind` (constant term removed;
    /// for loops the value at `u = 1` is subtracted along `u`).
    pub fn random<R: Rng + ?Sized>(algebra: Arc<LieAlgebra>, degree: usize, kind: PathKind, rng: &mut R) -> Self {
        let n = algebra.dim();
        let mut coeffs = DMatrix::from_fn(n, degree + 1, |_, _| rng.random_range(-1.0..1.0));
        if kind >= PathKind::Based {
            coeffs.column_mut(0).fill(0.0);
        }
        if kind == PathKind::Loop && degree >= 1 {
            for i in 0..n {
                let at_one: f64 = coeffs.row(i).iter().sum();
                coeffs[(i, 1)] -= at_one;
            }
        }
        Self {
            algebra,
            coeffs,
            kind,
        }
    }

    /// Coordinate basis `u^d e_i`, `d = 1..=degree`, of based paths.
    pub fn basis_based(algebra: &Arc<LieAlgebra>, degree: usize) -> Vec<Self> {
        let mut out = Vec::new();
        for i in 0..algebra.dim() {
            for d in 1..=degree {
                out.push(Self::monomial(algebra.clone(), d, &algebra.basis(i), PathKind::Based).expect("basis path"));
            }
        }
        out
    }

    /// Basis `(u^d - u) e_i`, `d = 2..=degree`, of loops.
    pub fn basis_loop(algebra: &Arc<LieAlgebra>, degree: usize) -> Vec<Self> {
        let n = algebra.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for d in 2..=degree {
                let mut coeffs = DMatrix::zeros(n, degree + 1);
                coeffs[(i, d)] = 1.0;
                coeffs[(i, 1)] = -1.0;
                out.push(Self::new(algebra.clone(), coeffs, PathKind::Loop).expect("basis loop"));
            }
        }
        out
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.algebra
    }

    pub fn coeffs(&self) -> &DMatrix<f64> {
        &self.coeffs
    }

    pub fn kind(&self) -> PathKind {
        self.kind
    }

    /// Polynomial degree bound (number of coefficients minus one).
    pub fn degree(&self) -> usize {
        self.coeffs.ncols() - 1
    }

    fn scale_ref(&self) -> f64 {
        1.0 + self.coeffs.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    fn check_kind(&self, kind: PathKind) -> Result<()> {
        let tol = ENDPOINT_TOL * self.scale_ref();
        if kind >= PathKind::Based {
            if let Some(v) = self.coeffs.column(0).iter().find(|v| v.abs() > tol) {
                return Err(Error::PathConstraint(format!("based path has p(0) component {v}")));
            }
        }
        if kind == PathKind::Loop {
            let end = self.endpoint();
            if end.amax() > tol {
                return Err(Error::PathConstraint(format!("loop has p(2π) of size {}", end.amax())));
            }
        }
        Ok(())
    }

    /// Reinterprets the path as a different kind after checking the endpoint
    /// conditions.
    pub fn with_kind(mut self, kind: PathKind) -> Result<Self> {
        self.check_kind(kind)?;
        self.kind = kind;
        Ok(self)
    }

    /// Value at `u ∈ [0, 1]` (θ = 2πu).
    pub fn eval(&self, u: f64) -> GVector {
        let n = self.algebra.dim();
        GVector::from_fn(n, |i, _| {
            self.coeffs.row(i).iter().rev().fold(0.0, |acc, c| acc * u + c)
        })
    }

    /// `p(2π)`, the row sums of the coefficient matrix.
    pub fn endpoint(&self) -> GVector {
        let n = self.algebra.dim();
        GVector::from_fn(n, |i, _| self.coeffs.row(i).iter().sum())
    }

    /// `dp/dθ = (1/2π) dp/du`; the result carries no endpoint guarantees.
    pub fn derivative(&self) -> PolyPath {
        let n = self.algebra.dim();
        let deg = self.degree();
        let coeffs = if deg == 0 {
            DMatrix::zeros(n, 1)
        } else {
            DMatrix::from_fn(n, deg, |i, d| self.coeffs[(i, d + 1)] * (d + 1) as f64 / TWO_PI)
        };
        PolyPath {
            algebra: self.algebra.clone(),
            coeffs,
            kind: PathKind::Free,
        }
    }

    /// Pointwise bracket `[p, q](θ) = [p(θ), q(θ)]`, exactly antisymmetric
    /// in floating point (see [`LieAlgebra::bracket`]).
    pub fn pointwise_bracket(&self, other: &PolyPath) -> Result<PolyPath> {
        if !same_algebra(&self.algebra, &other.algebra) {
            return Err(Error::AlgebraMismatch);
        }
        let coeffs = (self.convolve_brackets(other) - other.convolve_brackets(self)) * 0.5;
        let kind = match (self.kind, other.kind) {
            (PathKind::Free, _) | (_, PathKind::Free) => PathKind::Free,
            (PathKind::Loop, _) | (_, PathKind::Loop) => PathKind::Loop,
            _ => PathKind::Based,
        };
        Ok(PolyPath {
            algebra: self.algebra.clone(),
            coeffs,
            kind,
        })
    }

    /// `Σ_{a+b=d} S(p_a, q_b)` with `S` the unsymmetrized structure sum.
    fn convolve_brackets(&self, other: &PolyPath) -> DMatrix<f64> {
        let g = &self.algebra;
        let (da, db) = (self.degree(), other.degree());
        let mut coeffs = DMatrix::zeros(g.dim(), da + db + 1);
        for a in 0..=da {
            let pa = self.coeffs.column(a);
            if pa.iter().all(|v| *v == 0.0) {
                continue;
            }
            for b in 0..=db {
                let qb = other.coeffs.column(b);
                if qb.iter().all(|v| *v == 0.0) {
                    continue;
                }
                let mut col = coeffs.column_mut(a + b);
                col += g.structure_sum(pa.as_slice(), qb.as_slice());
            }
        }
        coeffs
    }

    /// `∫₀^{2π} ⟨p(θ), q(θ)⟩ dθ`, integrated exactly monomial by monomial:
    /// `∫₀^{2π} u^a u^b dθ = 2π/(a+b+1)`.
    pub fn integral_pairing(&self, other: &PolyPath) -> Result<f64> {
        if !same_algebra(&self.algebra, &other.algebra) {
            return Err(Error::AlgebraMismatch);
        }
        let form = self.algebra.form();
        // Bq has rows indexed like p; pair each coefficient column.
        let bq = form * &other.coeffs;
        let mut total = 0.0;
        for a in 0..=self.degree() {
            for b in 0..=other.degree() {
                let dot = self.coeffs.column(a).dot(&bq.column(b));
                if dot != 0.0 {
                    total += dot / (a + b + 1) as f64;
                }
            }
        }
        Ok(TWO_PI * total)
    }

    /// `∫₀^{2π} ⟨p, q′⟩ dθ`.
    pub fn pairing_with_derivative(&self, other: &PolyPath) -> Result<f64> {
        self.integral_pairing(&other.derivative())
    }

    fn combine(&self, other: &PolyPath, a: f64, b: f64) -> PolyPath {
        assert!(
            same_algebra(&self.algebra, &other.algebra),
            "linear combination of paths over different Lie algebras"
        );
        let n = self.algebra.dim();
        let cols = self.coeffs.ncols().max(other.coeffs.ncols());
        let coeffs = DMatrix::from_fn(n, cols, |i, d| {
            let x = if d < self.coeffs.ncols() { self.coeffs[(i, d)] } else { 0.0 };
            let y = if d < other.coeffs.ncols() { other.coeffs[(i, d)] } else { 0.0 };
            a * x + b * y
        });
        PolyPath {
            algebra: self.algebra.clone(),
            coeffs,
            kind: self.kind.join(other.kind),
        }
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Vec<f64>> = (0..self.coeffs.nrows())
            .map(|i| self.coeffs.row(i).iter().copied().collect())
            .collect();
        json!({ "kind": self.kind.as_str(), "coeffs": rows })
    }
}

impl Vector for PolyPath {
    fn add(&self, other: &Self) -> Self {
        self.combine(other, 1.0, 1.0)
    }

    fn sub(&self, other: &Self) -> Self {
        self.combine(other, 1.0, -1.0)
    }

    fn scale(&self, a: f64) -> Self {
        PolyPath {
            algebra: self.algebra.clone(),
            coeffs: &self.coeffs * a,
            kind: self.kind,
        }
    }

    /// `L²` norm in the normalized measure `du`, summed over coordinates:
    /// `Σ_i Σ_{a,b} c_ia c_ib / (a+b+1)`.
    fn norm(&self) -> f64 {
        let mut total = 0.0;
        for i in 0..self.coeffs.nrows() {
            for a in 0..self.coeffs.ncols() {
                for b in 0..self.coeffs.ncols() {
                    total += self.coeffs[(i, a)] * self.coeffs[(i, b)] / (a + b + 1) as f64;
                }
            }
        }
        total.max(0.0).sqrt()
    }

    fn to_json(&self) -> Value {
        PolyPath::to_json(self)
    }
}

/// An element `(ℓ, c)` of the centrally extended loop algebra `Ω𝔤 ⊕ ℝ`.
#[derive(Debug, Clone)]
pub struct CentralVector {
    pub ell: PolyPath,
    pub c: f64,
}

impl CentralVector {
    pub fn new(ell: PolyPath, c: f64) -> Result<Self> {
        if ell.kind() != PathKind::Loop {
            return Err(Error::PathConstraint(format!(
                "central vector needs a loop, got a {} path",
                ell.kind().as_str()
            )));
        }
        Ok(Self { ell, c })
    }

    pub fn zero(algebra: Arc<LieAlgebra>) -> Self {
        Self {
            ell: PolyPath::zero(algebra, PathKind::Loop),
            c: 0.0,
        }
    }

    pub fn central(algebra: Arc<LieAlgebra>, c: f64) -> Self {
        Self {
            ell: PolyPath::zero(algebra, PathKind::Loop),
            c,
        }
    }

    pub fn random<R: Rng + ?Sized>(algebra: Arc<LieAlgebra>, degree: usize, rng: &mut R) -> Self {
        let ell = PolyPath::random(algebra, degree, PathKind::Loop, rng);
        Self {
            ell,
            c: rng.random_range(-1.0..1.0),
        }
    }
}

impl Vector for CentralVector {
    fn add(&self, other: &Self) -> Self {
        Self {
            ell: self.ell.add(&other.ell),
            c: self.c + other.c,
        }
    }

    fn sub(&self, other: &Self) -> Self {
        Self {
            ell: self.ell.sub(&other.ell),
            c: self.c - other.c,
        }
    }

    fn scale(&self, a: f64) -> Self {
        Self {
            ell: self.ell.scale(a),
            c: self.c * a,
        }
    }

    fn norm(&self) -> f64 {
        (self.ell.norm().powi(2) + self.c * self.c).sqrt()
    }

    fn to_json(&self) -> Value {
        json!({ "loop": self.ell.to_json(), "c": self.c })
    }
}

/// A real polynomial in `u = θ/2π`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarPoly {
    coeffs: Vec<f64>,
}

impl ScalarPoly {
    pub fn new(coeffs: Vec<f64>) -> Self {
        let coeffs = if coeffs.is_empty() { vec![0.0] } else { coeffs };
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn eval(&self, u: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * u + c)
    }

    pub fn mul(&self, other: &ScalarPoly) -> ScalarPoly {
        let mut out = vec![0.0; self.coeffs.len() + other.coeffs.len() - 1];
        for (a, x) in self.coeffs.iter().enumerate() {
            for (b, y) in other.coeffs.iter().enumerate() {
                out[a + b] += x * y;
            }
        }
        ScalarPoly::new(out)
    }

    pub fn sub(&self, other: &ScalarPoly) -> ScalarPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        let get = |v: &[f64], i: usize| v.get(i).copied().unwrap_or(0.0);
        ScalarPoly::new((0..len).map(|i| get(&self.coeffs, i) - get(&other.coeffs, i)).collect())
    }

    /// `d/dθ`.
    pub fn derivative(&self) -> ScalarPoly {
        if self.coeffs.len() == 1 {
            return ScalarPoly::new(vec![0.0]);
        }
        ScalarPoly::new(
            (1..self.coeffs.len())
                .map(|d| self.coeffs[d] * d as f64 / TWO_PI)
                .collect(),
        )
    }

    /// `∫₀^{2π} self · other dθ`.
    pub fn integral_product(&self, other: &ScalarPoly) -> f64 {
        let mut total = 0.0;
        for (a, x) in self.coeffs.iter().enumerate() {
            for (b, y) in other.coeffs.iter().enumerate() {
                total += x * y / (a + b + 1) as f64;
            }
        }
        TWO_PI * total
    }
}

/// A splitting function `f` with `f(0) = 0` and `f(2π) = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Splitting {
    poly: ScalarPoly,
}

impl Splitting {
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        let poly = ScalarPoly::new(coeffs);
        check_splitting(&poly)?;
        Ok(Self { poly })
    }

    /// `f(u) = u`.
    pub fn linear() -> Self {
        Self {
            poly: ScalarPoly::new(vec![0.0, 1.0]),
        }
    }

    /// `f(u) = 3u² - 2u³`.
    pub fn smoothstep() -> Self {
        Self {
            poly: ScalarPoly::new(vec![0.0, 0.0, 3.0, -2.0]),
        }
    }

    /// Random admissible splitting of the given degree: higher coefficients
    /// iid uniform on `[-1, 1]`, linear coefficient fixed by `f(1) = 1`.
    pub fn random<R: Rng + ?Sized>(degree: usize, rng: &mut R) -> Self {
        let degree = degree.max(1);
        let mut coeffs = vec![0.0; degree + 1];
        for c in coeffs.iter_mut().skip(2) {
            *c = rng.random_range(-1.0..1.0);
        }
        coeffs[1] = 1.0 - coeffs[2..].iter().sum::<f64>();
        Self {
            poly: ScalarPoly::new(coeffs),
        }
    }

    pub fn poly(&self) -> &ScalarPoly {
        &self.poly
    }

    /// `f - f²`, which vanishes at both endpoints.
    pub fn defect(&self) -> ScalarPoly {
        self.poly.sub(&self.poly.mul(&self.poly))
    }
}

fn check_splitting(f: &ScalarPoly) -> Result<()> {
    let at0 = f.eval(0.0);
    let at1 = f.eval(1.0);
    if at0.abs() > ENDPOINT_TOL || (at1 - 1.0).abs() > ENDPOINT_TOL {
        return Err(Error::InvalidSplitting(format!(
            "need f(0) = 0 and f(2π) = 1, got f(0) = {at0}, f(2π) = {at1}"
        )));
    }
    Ok(())
}

/// `∫₀^{2π} f · (f - f²)′ dθ`, integrated exactly. Equals `-1/6` for every
/// `f` with `f(0) = 0`, `f(2π) = 1`.
pub fn universal_integral(f: &ScalarPoly) -> Result<f64> {
    check_splitting(f)?;
    let defect = f.sub(&f.mul(f));
    Ok(f.integral_product(&defect.derivative()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn su2() -> Arc<LieAlgebra> {
        Arc::new(LieAlgebra::su2())
    }

    fn e(i: usize) -> GVector {
        LieAlgebra::su2().basis(i)
    }

    fn path(g: &Arc<LieAlgebra>, terms: &[(usize, GVector)], kind: PathKind) -> PolyPath {
        let mut p = PolyPath::zero(g.clone(), PathKind::Loop);
        for (d, x) in terms {
            p = p.add(&PolyPath::monomial(g.clone(), *d, x, PathKind::Free).unwrap());
        }
        p.with_kind(kind).unwrap()
    }

    #[test]
    fn derivative_examples() {
        let g = su2();
        let x = GVector::from_column_slice(&[1.0, -2.0, 0.5]);
        let p = PolyPath::monomial(g.clone(), 1, &x, PathKind::Based).unwrap();
        let dp = p.derivative();
        assert_eq!(dp.degree(), 0);
        assert!((dp.eval(0.3) - &x / TWO_PI).amax() < 1e-15);
        assert_eq!(PolyPath::zero(g.clone(), PathKind::Based).derivative().norm(), 0.0);
        let q = PolyPath::monomial(g, 2, &x, PathKind::Based).unwrap();
        // p′(2π) = 2x/2π = x/π
        assert!((q.derivative().endpoint() - &x / std::f64::consts::PI).amax() < 1e-15);
    }

    #[test]
    fn pointwise_bracket_examples() {
        let g = su2();
        let p = PolyPath::monomial(g.clone(), 1, &e(0), PathKind::Based).unwrap();
        let q = PolyPath::monomial(g.clone(), 1, &e(1), PathKind::Based).unwrap();
        let r = p.pointwise_bracket(&q).unwrap();
        assert_eq!(r.coeffs().column(2).clone_owned(), e(2));
        assert_eq!(r.kind(), PathKind::Based);
        assert_eq!(p.pointwise_bracket(&p).unwrap().norm(), 0.0);

        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = PolyPath::random(g.clone(), 4, PathKind::Based, &mut rng);
        let b = PolyPath::random(g.clone(), 3, PathKind::Loop, &mut rng);
        let ab = a.pointwise_bracket(&b).unwrap();
        assert_eq!(ab.kind(), PathKind::Loop);
        assert_eq!(ab.degree(), 7);
        let expect = g.bracket(&a.endpoint(), &b.endpoint()).unwrap();
        assert!((ab.endpoint() - expect).amax() < 1e-14);
        let u = 0.37;
        let expect = g.bracket(&a.eval(u), &b.eval(u)).unwrap();
        assert!((ab.eval(u) - expect).amax() < 1e-14);
        // Antisymmetry holds bit for bit, not just to roundoff.
        assert_eq!(b.pointwise_bracket(&a).unwrap().coeffs(), &(-ab.coeffs()));
    }

    #[test]
    fn bracket_rejects_other_algebra() {
        let p = PolyPath::monomial(su2(), 1, &e(0), PathKind::Based).unwrap();
        let q = PolyPath::monomial(Arc::new(LieAlgebra::sl2()), 1, &e(0), PathKind::Based).unwrap();
        assert!(matches!(p.pointwise_bracket(&q), Err(Error::AlgebraMismatch)));
        assert!(matches!(p.integral_pairing(&q), Err(Error::AlgebraMismatch)));
    }

    #[test]
    fn integral_pairing_examples() {
        let g = su2();
        let p = PolyPath::monomial(g.clone(), 1, &e(0), PathKind::Based).unwrap();
        let q = PolyPath::monomial(g.clone(), 1, &e(1), PathKind::Based).unwrap();
        assert!((p.integral_pairing(&p).unwrap() - TWO_PI / 3.0).abs() < 1e-15);
        assert_eq!(p.integral_pairing(&q).unwrap(), 0.0);
        assert_eq!(PolyPath::zero(g, PathKind::Based).integral_pairing(&p).unwrap(), 0.0);
    }

    #[test]
    fn endpoint_examples() {
        let g = su2();
        let x = GVector::from_column_slice(&[0.25, 1.0, -3.0]);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        assert!(PolyPath::random(g.clone(), 5, PathKind::Loop, &mut rng).endpoint().amax() < 1e-15);
        assert_eq!(PolyPath::monomial(g.clone(), 1, &x, PathKind::Based).unwrap().endpoint(), x);
        let l = path(&g, &[(1, x.clone()), (2, -x.clone())], PathKind::Loop);
        assert_eq!(l.endpoint(), GVector::zeros(3));
    }

    #[test]
    fn kinds_are_enforced() {
        let g = su2();
        let p = PolyPath::monomial(g.clone(), 1, &e(0), PathKind::Based).unwrap();
        assert!(p.clone().with_kind(PathKind::Loop).is_err());
        assert!(PolyPath::monomial(g.clone(), 0, &e(0), PathKind::Based).is_err());
        assert!(CentralVector::new(p, 1.0).is_err());
    }

    #[test]
    fn integration_by_parts() {
        let g = su2();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..50 {
            let p = PolyPath::random(g.clone(), 4, PathKind::Based, &mut rng);
            let q = PolyPath::random(g.clone(), 5, PathKind::Based, &mut rng);
            let lhs = p.integral_pairing(&q.derivative()).unwrap() + p.derivative().integral_pairing(&q).unwrap();
            let rhs = g.pair(&p.endpoint(), &q.endpoint()).unwrap();
            assert!((lhs - rhs).abs() < 1e-12, "{lhs} vs {rhs}");

            let l = PolyPath::random(g.clone(), 3, PathKind::Loop, &mut rng);
            let a = p.pairing_with_derivative(&l).unwrap();
            let b = p.derivative().integral_pairing(&l).unwrap();
            assert!((a + b).abs() < 1e-12);
        }
    }

    #[test]
    fn norm_is_positive_definite() {
        let g = su2();
        assert_eq!(PolyPath::zero(g.clone(), PathKind::Based).norm(), 0.0);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            assert!(PolyPath::random(g.clone(), 6, PathKind::Based, &mut rng).norm() > 0.0);
        }
    }

    #[test]
    fn universal_integral_examples() {
        for coeffs in [vec![0.0, 1.0], vec![0.0, 0.0, 3.0, -2.0], vec![0.0, 0.0, 0.0, 0.0, 0.0, 1.0]] {
            let v = universal_integral(&ScalarPoly::new(coeffs)).unwrap();
            assert!((v + 1.0 / 6.0).abs() < 1e-12, "{v}");
        }
        assert!(matches!(
            universal_integral(&ScalarPoly::new(vec![0.0, 2.0])),
            Err(Error::InvalidSplitting(_))
        ));
        assert!(Splitting::new(vec![0.1, 0.9]).is_err());
    }

    #[test]
    fn random_splittings_are_admissible() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for d in 1..=8 {
            let f = Splitting::random(d, &mut rng);
            assert!(Splitting::new(f.poly().coeffs().to_vec()).is_ok());
            let defect = f.defect();
            assert!(defect.eval(0.0).abs() < 1e-12 && defect.eval(1.0).abs() < 1e-12);
        }
    }
}
