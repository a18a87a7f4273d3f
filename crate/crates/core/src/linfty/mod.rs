//! 2-term L∞-algebras, their homomorphisms and 2-homomorphisms.
//!
//! Only the arrow-part (chain complex) picture is modeled: a 2-term
//! L∞-algebra is `V₁ --d--> V₀` with `l₂` on `V₀×V₀` and `V₀×V₁` and a
//! trilinear `l₃: V₀³ → V₁`. Grading forces `l₁ = 0` on `V₀`, `l₂ = 0` on
//! `V₁×V₁`, `l₃ = 0` as soon as one argument has degree 1, and `l₄ = 0`;
//! these rules are applied in [`apply_l`] and nowhere else.
//!
//! The generalized Jacobi identity is evaluated directly from the unshuffle
//! sum, so none of the specialized 2-term equations are written by hand.

mod categorical;
mod hom;
mod homotopy;

pub use categorical::{categorical_view_check, Morphism};
pub use hom::{compose, hom_residuals, Composite, HomResiduals, Identity, LInftyHom, ZeroedPhi2};
pub use homotopy::{
    two_hom_residual, whisker_left, whisker_right, ChainHomotopy, Homotopy, TwoHomResiduals, WhiskerLeft,
    WhiskerRight,
};

use rand::Rng;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::graded::{chi, unshuffles, GradedSignature};
use crate::space::Vector;

pub trait TwoTermLInfinity: Clone + Send + Sync {
    type V0: Vector;
    type V1: Vector;

    fn name(&self) -> String;

    /// Level `k` (metadata; 0 when not meaningful).
    fn level(&self) -> f64;

    fn d(&self, h: &Self::V1) -> Self::V0;
    fn l2_00(&self, x: &Self::V0, y: &Self::V0) -> Self::V0;
    fn l2_01(&self, x: &Self::V0, h: &Self::V1) -> Self::V1;
    fn l3(&self, x: &Self::V0, y: &Self::V0, z: &Self::V0) -> Self::V1;

    fn zero0(&self) -> Self::V0;
    fn zero1(&self) -> Self::V1;

    fn sample0<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::V0;
    fn sample1<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::V1;

    /// Whether `other` describes the same algebra (used to reject
    /// mismatched compositions at run time).
    fn same_as(&self, other: &Self) -> bool;
}

/// A homogeneous element of `V₀ ⊕ V₁`.
#[derive(Debug, Clone)]
pub enum Graded<A, B> {
    D0(A),
    D1(B),
}

pub type Element<L> = Graded<<L as TwoTermLInfinity>::V0, <L as TwoTermLInfinity>::V1>;

impl<A: Vector, B: Vector> Graded<A, B> {
    pub fn degree(&self) -> u32 {
        match self {
            Graded::D0(_) => 0,
            Graded::D1(_) => 1,
        }
    }

    pub fn norm(&self) -> f64 {
        match self {
            Graded::D0(x) => x.norm(),
            Graded::D1(h) => h.norm(),
        }
    }

    pub fn to_json(&self) -> Value {
        serde_json::json!({ "degree": self.degree(), "value": match self {
            Graded::D0(x) => x.to_json(),
            Graded::D1(h) => h.to_json(),
        }})
    }
}

/// Relative residual `‖r‖ / (1 + Π(1 + ‖inputᵢ‖))`.
pub fn relative(residual_norm: f64, input_norms: &[f64]) -> f64 {
    let prod: f64 = input_norms.iter().map(|n| 1.0 + n).product();
    residual_norm / (1.0 + prod)
}

/// `l_k` on homogeneous arguments, or `None` when grading forces zero.
pub fn apply_l<L: TwoTermLInfinity>(l: &L, args: &[&Element<L>]) -> Option<Element<L>> {
    use Graded::*;
    match args {
        [D1(h)] => Some(D0(l.d(h))),
        [D0(_)] => None,
        [D0(x), D0(y)] => Some(D0(l.l2_00(x, y))),
        [D0(x), D1(h)] => Some(D1(l.l2_01(x, h))),
        // l₂(h, x) = χ(swap) l₂(x, h) = -l₂(x, h)
        [D1(h), D0(x)] => Some(D1(l.l2_01(x, h).scale(-1.0))),
        [D1(_), D1(_)] => None,
        [D0(x), D0(y), D0(z)] => Some(D1(l.l3(x, y, z))),
        _ => None,
    }
}

/// Signed value of the left-hand side of the generalized Jacobi identity
///
/// `Σ_{i+j=n+1} Σ_σ χ(σ) (-1)^{i(j-1)} l_j(l_i(x_σ(1), …, x_σ(i)), x_σ(i+1), …, x_σ(n))`
///
/// summed over `(i, n-i)`-unshuffles. Returns `None` when the total degree
/// falls outside `{0, 1}` and the identity holds trivially.
pub fn generalized_jacobi_value<L: TwoTermLInfinity>(l: &L, inputs: &[Element<L>]) -> Result<Option<Element<L>>> {
    let n = inputs.len();
    if n == 0 || n > 4 {
        return Err(Error::JacobiArity(n));
    }
    let degrees: Vec<u32> = inputs.iter().map(|x| x.degree()).collect();
    let out_degree = degrees.iter().sum::<u32>() as i64 + n as i64 - 3;
    if !(0..=1).contains(&out_degree) {
        return Ok(None);
    }
    let sig = GradedSignature::new(degrees)?;
    let mut acc0 = l.zero0();
    let mut acc1 = l.zero1();
    for i in 1..=n {
        let j = n + 1 - i;
        let power = if (i * (j - 1)) % 2 == 0 { 1.0 } else { -1.0 };
        for sigma in unshuffles(i, n)? {
            let im = sigma.image();
            let head: Vec<&Element<L>> = im[..i].iter().map(|&a| &inputs[a]).collect();
            let Some(inner) = apply_l(l, &head) else {
                continue;
            };
            let mut outer: Vec<&Element<L>> = vec![&inner];
            outer.extend(im[i..].iter().map(|&a| &inputs[a]));
            let Some(term) = apply_l(l, &outer) else {
                continue;
            };
            let coef = chi(&sig, &sigma)? as f64 * power;
            match term {
                Graded::D0(v) => acc0 = acc0.add(&v.scale(coef)),
                Graded::D1(v) => acc1 = acc1.add(&v.scale(coef)),
            }
        }
    }
    Ok(Some(if out_degree == 0 {
        Graded::D0(acc0)
    } else {
        Graded::D1(acc1)
    }))
}

/// Relative norm of the generalized Jacobi expression on `inputs`.
pub fn generalized_jacobi_residual<L: TwoTermLInfinity>(l: &L, inputs: &[Element<L>]) -> Result<f64> {
    let norms: Vec<f64> = inputs.iter().map(|x| x.norm()).collect();
    Ok(match generalized_jacobi_value(l, inputs)? {
        None => 0.0,
        Some(v) => relative(v.norm(), &norms),
    })
}

/// Random homogeneous inputs with the given degree tags.
pub fn sample_inputs<L: TwoTermLInfinity, R: Rng + ?Sized>(
    l: &L,
    degrees: &[u8],
    rng: &mut R,
) -> Result<Vec<Element<L>>> {
    degrees
        .iter()
        .map(|&d| match d {
            0 => Ok(Graded::D0(l.sample0(rng))),
            1 => Ok(Graded::D1(l.sample1(rng))),
            other => Err(Error::InvalidDegree(other)),
        })
        .collect()
}

/// Every degree signature in `{0,1}^n` for `1 <= n <= max_n`.
pub fn all_signatures(max_n: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        for mask in 0..(1u32 << n) {
            out.push((0..n).map(|b| ((mask >> b) & 1) as u8).collect());
        }
    }
    out
}

/// Spot checks of graded antisymmetry and multilinearity of `l₂`, `l₃`.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct StructureResiduals {
    pub antisymmetry: f64,
    pub multilinearity: f64,
}

pub fn structure_residuals<L: TwoTermLInfinity, R: Rng + ?Sized>(l: &L, rng: &mut R) -> StructureResiduals {
    let (x, y, z, w) = (l.sample0(rng), l.sample0(rng), l.sample0(rng), l.sample0(rng));
    let (h, k) = (l.sample1(rng), l.sample1(rng));
    let a: f64 = rng.random_range(-2.0..2.0);
    let base = [x.norm(), y.norm(), z.norm()];

    let anti = [
        relative(l.l2_00(&x, &y).add(&l.l2_00(&y, &x)).norm(), &base[..2]),
        relative(l.l3(&x, &y, &z).add(&l.l3(&y, &x, &z)).norm(), &base),
        relative(l.l3(&x, &y, &z).add(&l.l3(&x, &z, &y)).norm(), &base),
    ];

    let xw = x.add(&w.scale(a));
    let hk = h.add(&k.scale(a));
    let lin = [
        relative(
            l.l2_00(&xw, &y).sub(&l.l2_00(&x, &y).add(&l.l2_00(&w, &y).scale(a))).norm(),
            &[xw.norm(), y.norm()],
        ),
        relative(
            l.l2_01(&xw, &h).sub(&l.l2_01(&x, &h).add(&l.l2_01(&w, &h).scale(a))).norm(),
            &[xw.norm(), h.norm()],
        ),
        relative(
            l.l2_01(&x, &hk).sub(&l.l2_01(&x, &h).add(&l.l2_01(&x, &k).scale(a))).norm(),
            &[x.norm(), hk.norm()],
        ),
        relative(
            l.l3(&xw, &y, &z).sub(&l.l3(&x, &y, &z).add(&l.l3(&w, &y, &z).scale(a))).norm(),
            &[xw.norm(), y.norm(), z.norm()],
        ),
        relative(l.d(&hk).sub(&l.d(&h).add(&l.d(&k).scale(a))).norm(), &[hk.norm()]),
    ];
    StructureResiduals {
        antisymmetry: anti.iter().fold(0.0, |m: f64, v| m.max(*v)),
        multilinearity: lin.iter().fold(0.0, |m: f64, v| m.max(*v)),
    }
}
