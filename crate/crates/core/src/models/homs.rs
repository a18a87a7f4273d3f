use std::sync::Arc;

use rand::Rng;

use super::{as_based, BracketSpace, El, Gk, LoopSpace, Pkg, Trivial};
use crate::algebra::{GVector, LieAlgebra};
use crate::error::Result;
use crate::linfty::{
    compose, relative, two_hom_residual, Composite, Homotopy, Identity, LInftyHom, TwoHomResiduals, TwoTermLInfinity,
};
use crate::path::{CentralVector, PathKind, PolyPath, Splitting};
use crate::space::Vector;

/// `φ: 𝒫ₖ𝔤 → 𝔤ₖ` with `φ₀(p) = p(2π)`, `φ₁(ℓ, c) = c` and
/// `φ₂(p₁, p₂) = k∫(⟨p₁, p₂′⟩ - ⟨p₁′, p₂⟩)dθ`.
#[derive(Debug, Clone)]
pub struct Phi {
    src: Pkg,
    dst: Gk,
}

impl Phi {
    pub fn new(src: Pkg, dst: Gk) -> Self {
        Self { src, dst }
    }
}

impl LInftyHom for Phi {
    type Src = Pkg;
    type Dst = Gk;

    fn src(&self) -> &Pkg {
        &self.src
    }
    fn dst(&self) -> &Gk {
        &self.dst
    }
    fn phi0(&self, p: &PolyPath) -> GVector {
        p.endpoint()
    }
    fn phi1(&self, h: &CentralVector) -> f64 {
        h.c
    }
    fn phi2(&self, p1: &PolyPath, p2: &PolyPath) -> f64 {
        let a = p1.pairing_with_derivative(p2).expect("paths over the same algebra");
        let b = p1.derivative().integral_pairing(p2).expect("paths over the same algebra");
        self.src.level() * (a - b)
    }
}

/// `ψ: 𝔤ₖ → 𝒫ₖ𝔤` built from a splitting `f`: `ψ₀(x) = x f`,
/// `ψ₁(c) = (0, c)`, `ψ₂(x₁, x₂) = ([x₁, x₂](f - f²), 0)`.
#[derive(Debug, Clone)]
pub struct Psi {
    src: Gk,
    dst: Pkg,
    f: Splitting,
}

impl Psi {
    pub fn new(src: Gk, dst: Pkg, f: Splitting) -> Self {
        Self { src, dst, f }
    }

    pub fn splitting(&self) -> &Splitting {
        &self.f
    }
}

impl LInftyHom for Psi {
    type Src = Gk;
    type Dst = Pkg;

    fn src(&self) -> &Gk {
        &self.src
    }
    fn dst(&self) -> &Pkg {
        &self.dst
    }
    fn phi0(&self, x: &GVector) -> PolyPath {
        PolyPath::scalar_times(self.dst.algebra().clone(), self.f.poly(), x, PathKind::Based)
            .expect("f(0) = 0 makes x f a based path")
    }
    fn phi1(&self, c: &f64) -> CentralVector {
        CentralVector::central(self.dst.algebra().clone(), *c)
    }
    fn phi2(&self, x1: &GVector, x2: &GVector) -> CentralVector {
        let br = self.src.l2_00(x1, x2);
        let ell = PolyPath::scalar_times(self.dst.algebra().clone(), &self.f.defect(), &br, PathKind::Loop)
            .expect("f - f² vanishes at both ends");
        CentralVector { ell, c: 0.0 }
    }
}

/// `λ: ℰΩ𝔤 → 𝒫ₖ𝔤` with `λ₀(ℓ) = ℓ`, `λ₁(ℓ) = (ℓ, 0)` and
/// `λ₂(ℓ₁, ℓ₂) = (0, -2k∫⟨ℓ₁, ℓ₂′⟩dθ)`.
#[derive(Debug, Clone)]
pub struct Lambda {
    src: El<LoopSpace>,
    dst: Pkg,
}

impl Lambda {
    pub fn new(src: El<LoopSpace>, dst: Pkg) -> Self {
        Self { src, dst }
    }
}

impl LInftyHom for Lambda {
    type Src = El<LoopSpace>;
    type Dst = Pkg;

    fn src(&self) -> &El<LoopSpace> {
        &self.src
    }
    fn dst(&self) -> &Pkg {
        &self.dst
    }
    fn phi0(&self, ell: &PolyPath) -> PolyPath {
        as_based(ell)
    }
    fn phi1(&self, ell: &PolyPath) -> CentralVector {
        CentralVector::new(ell.clone(), 0.0).expect("source elements are loops")
    }
    fn phi2(&self, l1: &PolyPath, l2: &PolyPath) -> CentralVector {
        let c = -2.0 * self.dst.level() * l1.pairing_with_derivative(l2).expect("loops over the same algebra");
        CentralVector::central(self.dst.algebra().clone(), c)
    }
}

/// The unique homomorphism `ℰL → 0`.
#[derive(Debug, Clone)]
pub struct Beta<S> {
    src: El<S>,
    dst: Trivial,
}

impl<S: BracketSpace> Beta<S> {
    pub fn new(src: El<S>) -> Self {
        Self { src, dst: Trivial }
    }
}

impl<S: BracketSpace> LInftyHom for Beta<S> {
    type Src = El<S>;
    type Dst = Trivial;

    fn src(&self) -> &El<S> {
        &self.src
    }
    fn dst(&self) -> &Trivial {
        &self.dst
    }
    fn phi0(&self, _: &S::Elem) {}
    fn phi1(&self, _: &S::Elem) {}
    fn phi2(&self, _: &S::Elem, _: &S::Elem) {}
}

/// The unique homomorphism `0 → ℰL`.
#[derive(Debug, Clone)]
pub struct Gamma<S> {
    src: Trivial,
    dst: El<S>,
}

impl<S: BracketSpace> Gamma<S> {
    pub fn new(dst: El<S>) -> Self {
        Self { src: Trivial, dst }
    }
}

impl<S: BracketSpace> LInftyHom for Gamma<S> {
    type Src = Trivial;
    type Dst = El<S>;

    fn src(&self) -> &Trivial {
        &self.src
    }
    fn dst(&self) -> &El<S> {
        &self.dst
    }
    fn phi0(&self, _: &()) -> S::Elem {
        self.dst.zero0()
    }
    fn phi1(&self, _: &()) -> S::Elem {
        self.dst.zero1()
    }
    fn phi2(&self, _: &(), _: &()) -> S::Elem {
        self.dst.zero1()
    }
}

pub type PaperTau = Homotopy<Composite<Psi, Phi>, Identity<Pkg>>;

/// `τ: ψ∘φ ⇒ 1` on `𝒫ₖ𝔤`, `τ(p) = (p - p(2π) f, 0)`.
pub fn paper_tau(phi: Phi, psi: Psi) -> Result<PaperTau> {
    let pkg = phi.src().clone();
    let f = psi.splitting().poly().clone();
    let algebra = pkg.algebra().clone();
    let from = compose(psi, phi)?;
    Homotopy::new(from, Identity::new(pkg), move |p: &PolyPath| {
        let shifted = PolyPath::scalar_times(algebra.clone(), &f, &p.endpoint(), PathKind::Based)
            .expect("f(0) = 0 makes p(2π) f a based path");
        let ell = p.sub(&shifted).with_kind(PathKind::Loop).expect("p - p(2π) f vanishes at 2π");
        CentralVector { ell, c: 0.0 }
    })
}

pub type TrivialHomotopy<S> = Homotopy<Composite<Gamma<S>, Beta<S>>, Identity<El<S>>>;

/// `τ: γ∘β ⇒ 1` on `ℰL`, `τ(x) = x`.
pub fn trivial_homotopy<S: BracketSpace + 'static>(el: El<S>) -> Result<TrivialHomotopy<S>> {
    let from = compose(Gamma::new(el.clone()), Beta::new(el.clone()))?;
    Homotopy::new(from, Identity::new(el), |x: &S::Elem| x.clone())
}

/// Residuals of the equivalence `𝒫ₖ𝔤 ≃ 𝔤ₖ` and of `ℰL ≃ 0`.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct EquivalenceReport {
    /// `max ‖(φ∘ψ)₀x - x‖`, relative.
    pub phi_psi_0: f64,
    /// `max |(φ∘ψ)₁c - c|`, relative.
    pub phi_psi_1: f64,
    /// `max |(φ∘ψ)₂(x, y)|`, relative.
    pub phi_psi_2: f64,
    pub tau: TwoHomResiduals,
    pub trivial_loops: TwoHomResiduals,
    pub trivial_vectors: TwoHomResiduals,
}

impl EquivalenceReport {
    pub fn max_identity(&self) -> f64 {
        self.phi_psi_0.max(self.phi_psi_1).max(self.phi_psi_2)
    }

    pub fn max_homotopy(&self) -> f64 {
        self.tau.max().max(self.trivial_loops.max()).max(self.trivial_vectors.max())
    }
}

/// Checks `φ∘ψ = 1` componentwise, runs the 2-homomorphism checks of
/// `τ: ψ∘φ ⇒ 1` and of `τ(x) = x: γ∘β ⇒ 1` on `ℰΩ𝔤` and `ℰ𝔤`.
pub fn equivalence_suite<R: Rng + ?Sized>(
    algebra: Arc<LieAlgebra>,
    k: f64,
    f: &Splitting,
    degree: usize,
    trials: usize,
    rng: &mut R,
) -> Result<EquivalenceReport> {
    let gk = Gk::new(algebra.clone(), k);
    let pkg = Pkg::new(algebra.clone(), k, degree);
    let phi = Phi::new(pkg.clone(), gk.clone());
    let psi = Psi::new(gk.clone(), pkg.clone(), f.clone());
    let phi_psi = compose(phi.clone(), psi.clone())?;

    let mut report = EquivalenceReport::default();
    for _ in 0..trials {
        let (x, y, c) = (gk.sample0(rng), gk.sample0(rng), gk.sample1(rng));
        report.phi_psi_0 = report.phi_psi_0.max(relative(phi_psi.phi0(&x).sub(&x).norm(), &[x.norm()]));
        report.phi_psi_1 = report.phi_psi_1.max(relative((phi_psi.phi1(&c) - c).abs(), &[c.abs()]));
        report.phi_psi_2 = report.phi_psi_2.max(relative(phi_psi.phi2(&x, &y).abs(), &[x.norm(), y.norm()]));
    }

    let tau = paper_tau(phi, psi)?;
    report.tau = two_hom_residual(&tau, trials, rng);
    let loops = trivial_homotopy(El::new(LoopSpace::new(algebra.clone(), degree)))?;
    report.trivial_loops = two_hom_residual(&loops, trials, rng);
    let vectors = trivial_homotopy(El::new(super::GSpace::new(algebra)))?;
    report.trivial_vectors = two_hom_residual(&vectors, trials, rng);
    Ok(report)
}
