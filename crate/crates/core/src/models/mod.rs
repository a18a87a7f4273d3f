//! Concrete 2-term L∞-algebras: the skeletal `𝔤ₖ`, the path model `𝒫ₖ𝔤`,
//! the contractible `ℰL` and the trivial algebra `0`, together with the
//! homomorphisms relating them.

mod exactness;
mod homs;

pub use exactness::{exactness_check, lambda2_uniqueness_residual, ExactnessReport};
pub use homs::{
    equivalence_suite, paper_tau, trivial_homotopy, Beta, EquivalenceReport, Gamma, Lambda, PaperTau, Phi, Psi,
    TrivialHomotopy,
};

use std::sync::Arc;

use rand::Rng;

use crate::algebra::{GVector, LieAlgebra};
use crate::linfty::TwoTermLInfinity;
use crate::path::{same_algebra, CentralVector, PathKind, PolyPath};
use crate::space::Vector;

fn random_gvector<R: Rng + ?Sized>(n: usize, rng: &mut R) -> GVector {
    GVector::from_fn(n, |_, _| rng.random_range(-1.0..1.0))
}

/// `𝔤ₖ`: `V₀ = 𝔤`, `V₁ = ℝ`, `d = 0`, `l₂` the bracket on `V₀` and zero on
/// `V₀ × V₁`, `l₃ = k⟨x, [y, z]⟩`.
#[derive(Debug, Clone)]
pub struct Gk {
    algebra: Arc<LieAlgebra>,
    k: f64,
}

impl Gk {
    pub fn new(algebra: Arc<LieAlgebra>, k: f64) -> Self {
        Self { algebra, k }
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.algebra
    }
}

impl TwoTermLInfinity for Gk {
    type V0 = GVector;
    type V1 = f64;

    fn name(&self) -> String {
        format!("g_k[{}, k={}]", self.algebra.name(), self.k)
    }
    fn level(&self) -> f64 {
        self.k
    }
    fn d(&self, _: &f64) -> GVector {
        self.algebra.zero()
    }
    fn l2_00(&self, x: &GVector, y: &GVector) -> GVector {
        self.algebra.bracket(x, y).expect("vectors of the algebra's dimension")
    }
    fn l2_01(&self, _: &GVector, _: &f64) -> f64 {
        0.0
    }
    fn l3(&self, x: &GVector, y: &GVector, z: &GVector) -> f64 {
        self.k * self.algebra.nu(x, y, z).expect("vectors of the algebra's dimension")
    }
    fn zero0(&self) -> GVector {
        self.algebra.zero()
    }
    fn zero1(&self) -> f64 {
        0.0
    }
    fn sample0<R: Rng + ?Sized>(&self, rng: &mut R) -> GVector {
        random_gvector(self.algebra.dim(), rng)
    }
    fn sample1<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        rng.random_range(-1.0..1.0)
    }
    fn same_as(&self, other: &Self) -> bool {
        same_algebra(&self.algebra, &other.algebra) && self.k == other.k
    }
}

/// `𝒫ₖ𝔤`: `V₀ = P₀𝔤` (based paths), `V₁ = Ω𝔤 ⊕ ℝ`, `d(ℓ, c) = ℓ`,
/// `l₂(p, q) = [p, q]`, `l₂(p, (ℓ, c)) = ([p, ℓ], 2k∫⟨p, ℓ′⟩dθ)`, `l₃ = 0`.
///
/// `degree` only controls the polynomial degree of random samples.
#[derive(Debug, Clone)]
pub struct Pkg {
    algebra: Arc<LieAlgebra>,
    k: f64,
    degree: usize,
}

impl Pkg {
    pub fn new(algebra: Arc<LieAlgebra>, k: f64, degree: usize) -> Self {
        Self {
            algebra,
            k,
            degree: degree.max(2),
        }
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.algebra
    }

    pub fn sample_degree(&self) -> usize {
        self.degree
    }
}

pub(crate) fn as_based(ell: &PolyPath) -> PolyPath {
    ell.clone().with_kind(PathKind::Based).expect("a loop is a based path")
}

impl TwoTermLInfinity for Pkg {
    type V0 = PolyPath;
    type V1 = CentralVector;

    fn name(&self) -> String {
        format!("P_k g[{}, k={}]", self.algebra.name(), self.k)
    }
    fn level(&self) -> f64 {
        self.k
    }
    fn d(&self, h: &CentralVector) -> PolyPath {
        as_based(&h.ell)
    }
    fn l2_00(&self, p: &PolyPath, q: &PolyPath) -> PolyPath {
        p.pointwise_bracket(q).expect("paths over the same algebra")
    }
    fn l2_01(&self, p: &PolyPath, h: &CentralVector) -> CentralVector {
        let ell = p.pointwise_bracket(&h.ell).expect("paths over the same algebra");
        let c = 2.0 * self.k * p.pairing_with_derivative(&h.ell).expect("paths over the same algebra");
        CentralVector::new(ell, c).expect("bracket with a loop is a loop")
    }
    fn l3(&self, _: &PolyPath, _: &PolyPath, _: &PolyPath) -> CentralVector {
        self.zero1()
    }
    fn zero0(&self) -> PolyPath {
        PolyPath::zero(self.algebra.clone(), PathKind::Based)
    }
    fn zero1(&self) -> CentralVector {
        CentralVector::zero(self.algebra.clone())
    }
    fn sample0<R: Rng + ?Sized>(&self, rng: &mut R) -> PolyPath {
        PolyPath::random(self.algebra.clone(), self.degree, PathKind::Based, rng)
    }
    fn sample1<R: Rng + ?Sized>(&self, rng: &mut R) -> CentralVector {
        CentralVector::random(self.algebra.clone(), self.degree, rng)
    }
    fn same_as(&self, other: &Self) -> bool {
        same_algebra(&self.algebra, &other.algebra) && self.k == other.k
    }
}

/// A Lie algebra `L` whose elements are used pointwise in `ℰL`.
pub trait BracketSpace: Clone + Send + Sync {
    type Elem: Vector;

    fn name(&self) -> String;
    fn bracket(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn zero(&self) -> Self::Elem;
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;
    fn same_as(&self, other: &Self) -> bool;
}

/// `𝔤` itself.
#[derive(Debug, Clone)]
pub struct GSpace {
    algebra: Arc<LieAlgebra>,
}

impl GSpace {
    pub fn new(algebra: Arc<LieAlgebra>) -> Self {
        Self { algebra }
    }
}

impl BracketSpace for GSpace {
    type Elem = GVector;

    fn name(&self) -> String {
        self.algebra.name().to_string()
    }
    fn bracket(&self, a: &GVector, b: &GVector) -> GVector {
        self.algebra.bracket(a, b).expect("vectors of the algebra's dimension")
    }
    fn zero(&self) -> GVector {
        self.algebra.zero()
    }
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> GVector {
        random_gvector(self.algebra.dim(), rng)
    }
    fn same_as(&self, other: &Self) -> bool {
        same_algebra(&self.algebra, &other.algebra)
    }
}

/// The polynomial loop algebra `Ω𝔤` with the pointwise bracket.
#[derive(Debug, Clone)]
pub struct LoopSpace {
    algebra: Arc<LieAlgebra>,
    degree: usize,
}

impl LoopSpace {
    pub fn new(algebra: Arc<LieAlgebra>, degree: usize) -> Self {
        Self {
            algebra,
            degree: degree.max(2),
        }
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.algebra
    }
}

impl BracketSpace for LoopSpace {
    type Elem = PolyPath;

    fn name(&self) -> String {
        format!("Omega {}", self.algebra.name())
    }
    fn bracket(&self, a: &PolyPath, b: &PolyPath) -> PolyPath {
        a.pointwise_bracket(b).expect("loops over the same algebra")
    }
    fn zero(&self) -> PolyPath {
        PolyPath::zero(self.algebra.clone(), PathKind::Loop)
    }
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> PolyPath {
        PolyPath::random(self.algebra.clone(), self.degree, PathKind::Loop, rng)
    }
    fn same_as(&self, other: &Self) -> bool {
        same_algebra(&self.algebra, &other.algebra)
    }
}

/// `ℰL`: `V₀ = V₁ = L`, `d = 1`, both `l₂` the bracket, `l₃ = 0`.
#[derive(Debug, Clone)]
pub struct El<S> {
    space: S,
}

impl<S: BracketSpace> El<S> {
    pub fn new(space: S) -> Self {
        Self { space }
    }

    pub fn space(&self) -> &S {
        &self.space
    }
}

impl<S: BracketSpace> TwoTermLInfinity for El<S> {
    type V0 = S::Elem;
    type V1 = S::Elem;

    fn name(&self) -> String {
        format!("E({})", self.space.name())
    }
    fn level(&self) -> f64 {
        0.0
    }
    fn d(&self, h: &S::Elem) -> S::Elem {
        h.clone()
    }
    fn l2_00(&self, x: &S::Elem, y: &S::Elem) -> S::Elem {
        self.space.bracket(x, y)
    }
    fn l2_01(&self, x: &S::Elem, h: &S::Elem) -> S::Elem {
        self.space.bracket(x, h)
    }
    fn l3(&self, _: &S::Elem, _: &S::Elem, _: &S::Elem) -> S::Elem {
        self.space.zero()
    }
    fn zero0(&self) -> S::Elem {
        self.space.zero()
    }
    fn zero1(&self) -> S::Elem {
        self.space.zero()
    }
    fn sample0<R: Rng + ?Sized>(&self, rng: &mut R) -> S::Elem {
        self.space.sample(rng)
    }
    fn sample1<R: Rng + ?Sized>(&self, rng: &mut R) -> S::Elem {
        self.space.sample(rng)
    }
    fn same_as(&self, other: &Self) -> bool {
        self.space.same_as(&other.space)
    }
}

/// The trivial Lie 2-algebra `0`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Trivial;

impl TwoTermLInfinity for Trivial {
    type V0 = ();
    type V1 = ();

    fn name(&self) -> String {
        "0".into()
    }
    fn level(&self) -> f64 {
        0.0
    }
    fn d(&self, _: &()) {}
    fn l2_00(&self, _: &(), _: &()) {}
    fn l2_01(&self, _: &(), _: &()) {}
    fn l3(&self, _: &(), _: &(), _: &()) {}
    fn zero0(&self) {}
    fn zero1(&self) {}
    fn sample0<R: Rng + ?Sized>(&self, _: &mut R) {}
    fn sample1<R: Rng + ?Sized>(&self, _: &mut R) {}
    fn same_as(&self, _: &Self) -> bool {
        true
    }
}

#[cfg(test)]
mod tests;
