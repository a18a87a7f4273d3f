use rand::Rng;

use super::{relative, TwoTermLInfinity};
use crate::error::{Error, Result};
use crate::space::Vector;

type S0<H> = <<H as LInftyHom>::Src as TwoTermLInfinity>::V0;
type S1<H> = <<H as LInftyHom>::Src as TwoTermLInfinity>::V1;
type T0<H> = <<H as LInftyHom>::Dst as TwoTermLInfinity>::V0;
type T1<H> = <<H as LInftyHom>::Dst as TwoTermLInfinity>::V1;

/// An L∞-homomorphism `(φ₀, φ₁, φ₂)` between 2-term L∞-algebras.
pub trait LInftyHom: Clone + Send + Sync {
    type Src: TwoTermLInfinity;
    type Dst: TwoTermLInfinity;

    fn src(&self) -> &Self::Src;
    fn dst(&self) -> &Self::Dst;

    fn phi0(&self, x: &S0<Self>) -> T0<Self>;
    fn phi1(&self, h: &S1<Self>) -> T1<Self>;
    fn phi2(&self, x: &S0<Self>, y: &S0<Self>) -> T1<Self>;
}

/// `1_V`, with `(1_V)₂ = 0`.
#[derive(Debug, Clone)]
pub struct Identity<L> {
    algebra: L,
}

impl<L: TwoTermLInfinity> Identity<L> {
    pub fn new(algebra: L) -> Self {
        Self { algebra }
    }
}

impl<L: TwoTermLInfinity> LInftyHom for Identity<L> {
    type Src = L;
    type Dst = L;

    fn src(&self) -> &L {
        &self.algebra
    }
    fn dst(&self) -> &L {
        &self.algebra
    }
    fn phi0(&self, x: &L::V0) -> L::V0 {
        x.clone()
    }
    fn phi1(&self, h: &L::V1) -> L::V1 {
        h.clone()
    }
    fn phi2(&self, _: &L::V0, _: &L::V0) -> L::V1 {
        self.algebra.zero1()
    }
}

/// `outer ∘ inner`, with
/// `(ψ∘φ)₂(x, y) = ψ₂(φ₀(x), φ₀(y)) + ψ₁(φ₂(x, y))`.
#[derive(Debug, Clone)]
pub struct Composite<Outer, Inner> {
    outer: Outer,
    inner: Inner,
}

pub fn compose<Outer, Inner>(outer: Outer, inner: Inner) -> Result<Composite<Outer, Inner>>
where
    Inner: LInftyHom,
    Outer: LInftyHom<Src = Inner::Dst>,
{
    if !inner.dst().same_as(outer.src()) {
        return Err(Error::Composition(format!(
            "target {} of the first map is not the source {} of the second",
            inner.dst().name(),
            outer.src().name()
        )));
    }
    Ok(Composite { outer, inner })
}

impl<Outer, Inner> Composite<Outer, Inner> {
    pub fn outer(&self) -> &Outer {
        &self.outer
    }
    pub fn inner(&self) -> &Inner {
        &self.inner
    }
}

impl<Outer, Inner> LInftyHom for Composite<Outer, Inner>
where
    Inner: LInftyHom,
    Outer: LInftyHom<Src = Inner::Dst>,
{
    type Src = Inner::Src;
    type Dst = Outer::Dst;

    fn src(&self) -> &Self::Src {
        self.inner.src()
    }
    fn dst(&self) -> &Self::Dst {
        self.outer.dst()
    }
    fn phi0(&self, x: &S0<Self>) -> T0<Self> {
        self.outer.phi0(&self.inner.phi0(x))
    }
    fn phi1(&self, h: &S1<Self>) -> T1<Self> {
        self.outer.phi1(&self.inner.phi1(h))
    }
    fn phi2(&self, x: &S0<Self>, y: &S0<Self>) -> T1<Self> {
        let a = self.outer.phi2(&self.inner.phi0(x), &self.inner.phi0(y));
        a.add(&self.outer.phi1(&self.inner.phi2(x, y)))
    }
}

/// Mutation control: the same chain map with `φ₂` replaced by zero.
#[derive(Debug, Clone)]
pub struct ZeroedPhi2<H> {
    hom: H,
}

impl<H> ZeroedPhi2<H> {
    pub fn new(hom: H) -> Self {
        Self { hom }
    }
}

impl<H: LInftyHom> LInftyHom for ZeroedPhi2<H> {
    type Src = H::Src;
    type Dst = H::Dst;

    fn src(&self) -> &H::Src {
        self.hom.src()
    }
    fn dst(&self) -> &H::Dst {
        self.hom.dst()
    }
    fn phi0(&self, x: &S0<H>) -> T0<H> {
        self.hom.phi0(x)
    }
    fn phi1(&self, h: &S1<H>) -> T1<H> {
        self.hom.phi1(h)
    }
    fn phi2(&self, _: &S0<H>, _: &S0<H>) -> T1<H> {
        self.hom.dst().zero1()
    }
}

/// Relative residuals of the chain-map condition and the three
/// homomorphism equations on one random sample.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct HomResiduals {
    pub chain: f64,
    pub homo1: f64,
    pub homo2: f64,
    pub homo3: f64,
}

impl HomResiduals {
    pub fn max(&self) -> f64 {
        self.chain.max(self.homo1).max(self.homo2).max(self.homo3)
    }

    pub fn max_with(&self, other: &HomResiduals) -> HomResiduals {
        HomResiduals {
            chain: self.chain.max(other.chain),
            homo1: self.homo1.max(other.homo1),
            homo2: self.homo2.max(other.homo2),
            homo3: self.homo3.max(other.homo3),
        }
    }
}

/// Evaluates, on `trials` random samples drawn from the source:
///
/// * chain: `d′φ₁(h) - φ₀(dh)`
/// * homo1: `d′φ₂(x,y) - φ₀(l₂(x,y)) + l₂(φ₀x, φ₀y)`
/// * homo2: `φ₂(x,dh) - φ₁(l₂(x,h)) + l₂(φ₀x, φ₁h)`
/// * homo3: `l₃(φ₀x,φ₀y,φ₀z) - φ₁(l₃(x,y,z))` minus the three
///   `φ₂(x, l₂(y,z))` terms and the three `l₂(φ₀x, φ₂(y,z))` terms
///
/// and returns the componentwise maximum of the relative residuals.
pub fn hom_residuals<H: LInftyHom, R: Rng + ?Sized>(phi: &H, trials: usize, rng: &mut R) -> HomResiduals {
    let mut worst = HomResiduals::default();
    for _ in 0..trials {
        worst = worst.max_with(&hom_residuals_once(phi, rng));
    }
    worst
}

pub(crate) fn hom_residuals_once<H: LInftyHom, R: Rng + ?Sized>(phi: &H, rng: &mut R) -> HomResiduals {
    let src = phi.src();
    let dst = phi.dst();
    let (x, y, z) = (src.sample0(rng), src.sample0(rng), src.sample0(rng));
    let h = src.sample1(rng);
    let (nx, ny, nz, nh) = (x.norm(), y.norm(), z.norm(), h.norm());

    let chain = dst.d(&phi.phi1(&h)).sub(&phi.phi0(&src.d(&h)));

    let homo1 = dst
        .d(&phi.phi2(&x, &y))
        .sub(&phi.phi0(&src.l2_00(&x, &y)))
        .add(&dst.l2_00(&phi.phi0(&x), &phi.phi0(&y)));

    let homo2 = phi
        .phi2(&x, &src.d(&h))
        .sub(&phi.phi1(&src.l2_01(&x, &h)))
        .add(&dst.l2_01(&phi.phi0(&x), &phi.phi1(&h)));

    let (px, py, pz) = (phi.phi0(&x), phi.phi0(&y), phi.phi0(&z));
    let lhs = dst.l3(&px, &py, &pz).sub(&phi.phi1(&src.l3(&x, &y, &z)));
    let rhs = phi
        .phi2(&x, &src.l2_00(&y, &z))
        .add(&phi.phi2(&y, &src.l2_00(&z, &x)))
        .add(&phi.phi2(&z, &src.l2_00(&x, &y)))
        .add(&dst.l2_01(&px, &phi.phi2(&y, &z)))
        .add(&dst.l2_01(&py, &phi.phi2(&z, &x)))
        .add(&dst.l2_01(&pz, &phi.phi2(&x, &y)));
    let homo3 = lhs.sub(&rhs);

    HomResiduals {
        chain: relative(chain.norm(), &[nh]),
        homo1: relative(homo1.norm(), &[nx, ny]),
        homo2: relative(homo2.norm(), &[nx, nh]),
        homo3: relative(homo3.norm(), &[nx, ny, nz]),
    }
}
