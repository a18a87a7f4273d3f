//! The 2-vector-space picture: objects are elements of `V₀`, a morphism
//! `f: x → x + d f⃗` is a pair `(x, f⃗)` with `f⃗ ∈ V₁`.

use rand::Rng;

use super::{relative, TwoTermLInfinity};
use crate::error::{Error, Result};
use crate::space::Vector;

const COMPOSABLE_TOL: f64 = 1e-9;

#[derive(Debug, Clone)]
pub struct Morphism<L: TwoTermLInfinity> {
    pub source: L::V0,
    pub arrow: L::V1,
}

impl<L: TwoTermLInfinity> Morphism<L> {
    pub fn new(source: L::V0, arrow: L::V1) -> Self {
        Self { source, arrow }
    }

    pub fn identity(l: &L, x: &L::V0) -> Self {
        Self::new(x.clone(), l.zero1())
    }

    pub fn s(&self) -> L::V0 {
        self.source.clone()
    }

    pub fn t(&self, l: &L) -> L::V0 {
        self.source.add(&l.d(&self.arrow))
    }

    /// `self ∘ f`, defined when `t(f) = s(self)`.
    pub fn after(&self, l: &L, f: &Morphism<L>) -> Result<Self> {
        let gap = f.t(l).sub(&self.source).norm();
        if relative(gap, &[self.source.norm()]) > COMPOSABLE_TOL {
            return Err(Error::Composition(format!("morphisms are not composable (gap {gap:.3e})")));
        }
        Ok(Self::new(f.source.clone(), f.arrow.add(&self.arrow)))
    }

    /// `[1_z, f] = (l₂(z, x), l₂(z, f⃗))`.
    pub fn bracket_left(l: &L, z: &L::V0, f: &Morphism<L>) -> Self {
        Self::new(l.l2_00(z, &f.source), l.l2_01(z, &f.arrow))
    }

    /// `[f, 1_z] = (l₂(x, z), l₂(f⃗, z))`, with `l₂(f⃗, z) = -l₂(z, f⃗)`.
    pub fn bracket_right(l: &L, f: &Morphism<L>, z: &L::V0) -> Self {
        Self::new(l.l2_00(&f.source, z), l.l2_01(z, &f.arrow).scale(-1.0))
    }

    fn distance(&self, other: &Self) -> f64 {
        self.source.sub(&other.source).norm() + self.arrow.sub(&other.arrow).norm()
    }

    fn norm(&self) -> f64 {
        self.source.norm() + self.arrow.norm()
    }
}

/// Largest relative residual, over `trials` random composable samples, of
/// the category laws of `∘`, the source/target compatibility of the bracket
/// functor and its functoriality in the morphism slot.
pub fn categorical_view_check<L: TwoTermLInfinity, R: Rng + ?Sized>(l: &L, trials: usize, rng: &mut R) -> f64 {
    let mut worst = 0.0f64;
    for _ in 0..trials {
        worst = worst.max(check_once(l, rng));
    }
    worst
}

fn check_once<L: TwoTermLInfinity, R: Rng + ?Sized>(l: &L, rng: &mut R) -> f64 {
    let x = l.sample0(rng);
    let z = l.sample0(rng);
    let f = Morphism::<L>::new(x, l.sample1(rng));
    let g = Morphism::<L>::new(f.t(l), l.sample1(rng));
    let h = Morphism::<L>::new(g.t(l), l.sample1(rng));
    let scale = [f.norm(), g.norm(), h.norm(), z.norm()];
    let rel = |r: f64| relative(r, &scale);
    let compose = |a: &Morphism<L>, b: &Morphism<L>| a.after(l, b);

    let mut residuals = Vec::new();

    // Samples are composable by construction, so the unwraps cannot fail.
    let hg_f = compose(&compose(&h, &g).unwrap(), &f).unwrap();
    let h_gf = compose(&h, &compose(&g, &f).unwrap()).unwrap();
    residuals.push(rel(hg_f.distance(&h_gf)));

    let left_unit = compose(&Morphism::identity(l, &f.t(l)), &f).unwrap();
    let right_unit = compose(&f, &Morphism::identity(l, &f.s())).unwrap();
    residuals.push(rel(left_unit.distance(&f)));
    residuals.push(rel(right_unit.distance(&f)));

    for m in [&f, &g] {
        let bl = Morphism::bracket_left(l, &z, m);
        residuals.push(rel(bl.s().sub(&l.l2_00(&z, &m.s())).norm()));
        residuals.push(rel(bl.t(l).sub(&l.l2_00(&z, &m.t(l))).norm()));
        let br = Morphism::bracket_right(l, m, &z);
        residuals.push(rel(br.s().sub(&l.l2_00(&m.s(), &z)).norm()));
        residuals.push(rel(br.t(l).sub(&l.l2_00(&m.t(l), &z)).norm()));
    }

    let gf = compose(&g, &f).unwrap();
    let lhs = Morphism::bracket_left(l, &z, &gf);
    match compose(&Morphism::bracket_left(l, &z, &g), &Morphism::bracket_left(l, &z, &f)) {
        Ok(rhs) => residuals.push(rel(lhs.distance(&rhs))),
        Err(_) => residuals.push(f64::INFINITY),
    }
    let lhs = Morphism::bracket_right(l, &gf, &z);
    match compose(&Morphism::bracket_right(l, &g, &z), &Morphism::bracket_right(l, &f, &z)) {
        Ok(rhs) => residuals.push(rel(lhs.distance(&rhs))),
        Err(_) => residuals.push(f64::INFINITY),
    }

    residuals.into_iter().fold(0.0, f64::max)
}
