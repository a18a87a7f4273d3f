use std::sync::Arc;

use rand::Rng;

use super::hom::{compose, Composite, LInftyHom};
use super::{relative, TwoTermLInfinity};
use crate::error::{Error, Result};
use crate::space::Vector;

type Src<T> = <<T as ChainHomotopy>::From as LInftyHom>::Src;
type Dst<T> = <<T as ChainHomotopy>::From as LInftyHom>::Dst;
type SrcV0<T> = <Src<T> as TwoTermLInfinity>::V0;
type DstV1<T> = <Dst<T> as TwoTermLInfinity>::V1;

/// An L∞ 2-homomorphism `τ: φ ⇒ ψ`: a degree-raising map `V₀ → V′₁` with
///
/// * `d′∘τ = ψ₀ - φ₀` and `τ∘d = ψ₁ - φ₁` (chain homotopy), and
/// * `φ₂(x,y) - ψ₂(x,y) = l₂(φ₀x, τy) + l₂(τx, ψ₀y) - τ(l₂(x,y))`.
pub trait ChainHomotopy: Send + Sync {
    type From: LInftyHom;
    type To: LInftyHom<Src = Src<Self>, Dst = Dst<Self>>;

    fn from_hom(&self) -> &Self::From;
    fn to_hom(&self) -> &Self::To;
    fn tau(&self, x: &SrcV0<Self>) -> DstV1<Self>;
}

type TauFn<F> = dyn Fn(&<<F as LInftyHom>::Src as TwoTermLInfinity>::V0) -> <<F as LInftyHom>::Dst as TwoTermLInfinity>::V1
    + Send
    + Sync;

/// A 2-homomorphism given by an explicit map.
pub struct Homotopy<F: LInftyHom, T> {
    from: F,
    to: T,
    tau: Arc<TauFn<F>>,
}

impl<F, T> Homotopy<F, T>
where
    F: LInftyHom,
    T: LInftyHom<Src = F::Src, Dst = F::Dst>,
{
    pub fn new(
        from: F,
        to: T,
        tau: impl Fn(&<F::Src as TwoTermLInfinity>::V0) -> <F::Dst as TwoTermLInfinity>::V1 + Send + Sync + 'static,
    ) -> Result<Self> {
        if !from.src().same_as(to.src()) || !from.dst().same_as(to.dst()) {
            return Err(Error::Composition("2-homomorphism between homomorphisms with different ends".into()));
        }
        Ok(Self {
            from,
            to,
            tau: Arc::new(tau),
        })
    }
}

impl<F, T> ChainHomotopy for Homotopy<F, T>
where
    F: LInftyHom,
    T: LInftyHom<Src = F::Src, Dst = F::Dst>,
{
    type From = F;
    type To = T;

    fn from_hom(&self) -> &F {
        &self.from
    }
    fn to_hom(&self) -> &T {
        &self.to
    }
    fn tau(&self, x: &<F::Src as TwoTermLInfinity>::V0) -> <F::Dst as TwoTermLInfinity>::V1 {
        (self.tau)(x)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct TwoHomResiduals {
    pub homotopy0: f64,
    pub homotopy1: f64,
    pub coherence: f64,
}

impl TwoHomResiduals {
    pub fn max(&self) -> f64 {
        self.homotopy0.max(self.homotopy1).max(self.coherence)
    }

    pub fn max_with(&self, other: &TwoHomResiduals) -> TwoHomResiduals {
        TwoHomResiduals {
            homotopy0: self.homotopy0.max(other.homotopy0),
            homotopy1: self.homotopy1.max(other.homotopy1),
            coherence: self.coherence.max(other.coherence),
        }
    }
}

/// Maximum relative residuals over `trials` random samples of
///
/// * homotopy0: `ψ₀(x) - φ₀(x) - d′τ(x)`
/// * homotopy1: `ψ₁(h) - φ₁(h) - τ(dh)`
/// * coherence: `φ₂(x,y) - ψ₂(x,y) - l₂(φ₀x, τy) - l₂(τx, ψ₀y) + τ(l₂(x,y))`
///
/// where `l₂(τx, ψ₀y) = -l₂(ψ₀y, τx)` by graded antisymmetry.
pub fn two_hom_residual<T: ChainHomotopy, R: Rng + ?Sized>(tau: &T, trials: usize, rng: &mut R) -> TwoHomResiduals {
    let mut worst = TwoHomResiduals::default();
    for _ in 0..trials {
        worst = worst.max_with(&two_hom_residual_once(tau, rng));
    }
    worst
}

pub(crate) fn two_hom_residual_once<T: ChainHomotopy, R: Rng + ?Sized>(tau: &T, rng: &mut R) -> TwoHomResiduals {
    let phi = tau.from_hom();
    let psi = tau.to_hom();
    let src = phi.src();
    let dst = phi.dst();
    let (x, y) = (src.sample0(rng), src.sample0(rng));
    let h = src.sample1(rng);

    let h0 = psi.phi0(&x).sub(&phi.phi0(&x)).sub(&dst.d(&tau.tau(&x)));
    let h1 = psi.phi1(&h).sub(&phi.phi1(&h)).sub(&tau.tau(&src.d(&h)));

    let (tx, ty) = (tau.tau(&x), tau.tau(&y));
    let coherence = phi
        .phi2(&x, &y)
        .sub(&psi.phi2(&x, &y))
        .sub(&dst.l2_01(&phi.phi0(&x), &ty))
        .add(&dst.l2_01(&psi.phi0(&y), &tx))
        .add(&tau.tau(&src.l2_00(&x, &y)));

    TwoHomResiduals {
        homotopy0: relative(h0.norm(), &[x.norm()]),
        homotopy1: relative(h1.norm(), &[h.norm()]),
        coherence: relative(coherence.norm(), &[x.norm(), y.norm()]),
    }
}

/// `τ·H`: precomposition of `τ: φ ⇒ ψ` with a homomorphism `H`, giving
/// `φ∘H ⇒ ψ∘H` with map `τ∘H₀`.
pub struct WhiskerRight<T: ChainHomotopy, H: LInftyHom> {
    inner: T,
    hom: H,
    from: Composite<T::From, H>,
    to: Composite<T::To, H>,
}

pub fn whisker_right<T, H>(tau: T, hom: H) -> Result<WhiskerRight<T, H>>
where
    T: ChainHomotopy,
    H: LInftyHom<Dst = Src<T>>,
{
    let from = compose(tau.from_hom().clone(), hom.clone())?;
    let to = compose(tau.to_hom().clone(), hom.clone())?;
    Ok(WhiskerRight {
        inner: tau,
        hom,
        from,
        to,
    })
}

impl<T, H> ChainHomotopy for WhiskerRight<T, H>
where
    T: ChainHomotopy,
    H: LInftyHom<Dst = Src<T>>,
{
    type From = Composite<T::From, H>;
    type To = Composite<T::To, H>;

    fn from_hom(&self) -> &Self::From {
        &self.from
    }
    fn to_hom(&self) -> &Self::To {
        &self.to
    }
    fn tau(&self, x: &<H::Src as TwoTermLInfinity>::V0) -> DstV1<T> {
        self.inner.tau(&self.hom.phi0(x))
    }
}

/// `K·τ`: postcomposition with a homomorphism `K`, with map `K₁∘τ`.
/// This is a 2-homomorphism whenever `K₂ = 0` (strict `K`, e.g. an
/// identity).
pub struct WhiskerLeft<K: LInftyHom, T: ChainHomotopy> {
    inner: T,
    hom: K,
    from: Composite<K, T::From>,
    to: Composite<K, T::To>,
}

pub fn whisker_left<K, T>(hom: K, tau: T) -> Result<WhiskerLeft<K, T>>
where
    T: ChainHomotopy,
    K: LInftyHom<Src = Dst<T>>,
{
    let from = compose(hom.clone(), tau.from_hom().clone())?;
    let to = compose(hom.clone(), tau.to_hom().clone())?;
    Ok(WhiskerLeft {
        inner: tau,
        hom,
        from,
        to,
    })
}

impl<K, T> ChainHomotopy for WhiskerLeft<K, T>
where
    T: ChainHomotopy,
    K: LInftyHom<Src = Dst<T>>,
{
    type From = Composite<K, T::From>;
    type To = Composite<K, T::To>;

    fn from_hom(&self) -> &Self::From {
        &self.from
    }
    fn to_hom(&self) -> &Self::To {
        &self.to
    }
    fn tau(&self, x: &SrcV0<T>) -> <K::Dst as TwoTermLInfinity>::V1 {
        self.hom.phi1(&self.inner.tau(x))
    }
}
