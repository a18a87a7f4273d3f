//! The Kac–Moody cocycle `ω(f, g) = 2k∫⟨f, g′⟩dθ` on polynomial loops, the
//! central extension it defines and the infinitesimal action `dα` of based
//! paths on that extension.

use crate::error::{Error, Result};
use crate::linfty::relative;
use crate::path::{same_algebra, CentralVector, PathKind, PolyPath};
use crate::space::Vector;

fn require_loop(p: &PolyPath, what: &str) -> Result<()> {
    if p.kind() != PathKind::Loop {
        return Err(Error::PathConstraint(format!("{what} must be a loop")));
    }
    Ok(())
}

fn require_based(p: &PolyPath) -> Result<()> {
    if p.kind() < PathKind::Based {
        return Err(Error::PathConstraint("the acting path must be based".into()));
    }
    Ok(())
}

fn check_algebra(a: &PolyPath, b: &PolyPath) -> Result<()> {
    if !same_algebra(a.algebra(), b.algebra()) {
        return Err(Error::AlgebraMismatch);
    }
    Ok(())
}

/// `ωₖ(f, g) = 2k∫₀^{2π}⟨f, g′⟩dθ`.
pub fn omega(f: &PolyPath, g: &PolyPath, k: f64) -> Result<f64> {
    require_loop(f, "first argument of ω")?;
    require_loop(g, "second argument of ω")?;
    Ok(2.0 * k * f.pairing_with_derivative(g)?)
}

/// Signed `ω([f,g],h) + ω([g,h],f) + ω([h,f],g)`.
pub fn omega_cocycle_value(f: &PolyPath, g: &PolyPath, h: &PolyPath, k: f64) -> Result<f64> {
    Ok(omega(&f.pointwise_bracket(g)?, h, k)?
        + omega(&g.pointwise_bracket(h)?, f, k)?
        + omega(&h.pointwise_bracket(f)?, g, k)?)
}

/// Relative size of the cocycle sum, normalized by `max(1, |k|)` so that
/// the value does not scale with the level.
pub fn omega_cocycle_residual(f: &PolyPath, g: &PolyPath, h: &PolyPath, k: f64) -> Result<f64> {
    let v = omega_cocycle_value(f, g, h, k)?;
    Ok(relative(v.abs() / k.abs().max(1.0), &[f.norm(), g.norm(), h.norm()]))
}

/// `[(f, a), (g, b)] = ([f, g], ωₖ(f, g))`.
pub fn extended_bracket(a: &CentralVector, b: &CentralVector, k: f64) -> Result<CentralVector> {
    check_algebra(&a.ell, &b.ell)?;
    let ell = a.ell.pointwise_bracket(&b.ell)?;
    CentralVector::new(ell, omega(&a.ell, &b.ell, k)?)
}

/// `[[a,b],c] + [[b,c],a] + [[c,a],b]`.
pub fn extended_jacobiator(a: &CentralVector, b: &CentralVector, c: &CentralVector, k: f64) -> Result<CentralVector> {
    let t1 = extended_bracket(&extended_bracket(a, b, k)?, c, k)?;
    let t2 = extended_bracket(&extended_bracket(b, c, k)?, a, k)?;
    let t3 = extended_bracket(&extended_bracket(c, a, k)?, b, k)?;
    Ok(t1.add(&t2).add(&t3))
}

pub fn extended_jacobi_residual(a: &CentralVector, b: &CentralVector, c: &CentralVector, k: f64) -> Result<f64> {
    let j = extended_jacobiator(a, b, c, k)?;
    Ok(relative(j.norm() / k.abs().max(1.0), &[a.norm(), b.norm(), c.norm()]))
}

/// `dα(p)(ℓ, c) = ([p, ℓ], 2k∫⟨p, ℓ′⟩dθ)` for a based path `p`.
pub fn dalpha(p: &PolyPath, v: &CentralVector, k: f64) -> Result<CentralVector> {
    require_based(p)?;
    check_algebra(p, &v.ell)?;
    let ell = p.pointwise_bracket(&v.ell)?;
    CentralVector::new(ell, 2.0 * k * p.pairing_with_derivative(&v.ell)?)
}

/// `‖dα([p₁,p₂])v - [dα(p₁), dα(p₂)]v‖`, relative.
pub fn dalpha_action_residual(p1: &PolyPath, p2: &PolyPath, v: &CentralVector, k: f64) -> Result<f64> {
    let lhs = dalpha(&p1.pointwise_bracket(p2)?, v, k)?;
    let rhs = dalpha(p1, &dalpha(p2, v, k)?, k)?.sub(&dalpha(p2, &dalpha(p1, v, k)?, k)?);
    Ok(relative(
        lhs.sub(&rhs).norm() / k.abs().max(1.0),
        &[p1.norm(), p2.norm(), v.norm()],
    ))
}

/// `‖dα(p)[a,b] - [dα(p)a, b] - [a, dα(p)b]‖`, relative.
pub fn dalpha_derivation_residual(p: &PolyPath, a: &CentralVector, b: &CentralVector, k: f64) -> Result<f64> {
    let lhs = dalpha(p, &extended_bracket(a, b, k)?, k)?;
    let rhs = extended_bracket(&dalpha(p, a, k)?, b, k)?.add(&extended_bracket(a, &dalpha(p, b, k)?, k)?);
    Ok(relative(
        lhs.sub(&rhs).norm() / k.abs().max(1.0).powi(2),
        &[p.norm(), a.norm(), b.norm()],
    ))
}

/// Infinitesimal crossed-module laws: `d(dα(p)v) = [p, dv]` for based `p`,
/// and `dα(ℓ)v = [(ℓ, 0), v]` when `ℓ` is a loop. Returns the larger
/// relative residual.
pub fn dalpha_crossed_residual(p: &PolyPath, ell: &PolyPath, v: &CentralVector, k: f64) -> Result<f64> {
    require_loop(ell, "the peiffer argument")?;
    let equivariance = dalpha(p, v, k)?.ell.sub(&p.pointwise_bracket(&v.ell)?).norm();
    let lifted = CentralVector::new(ell.clone(), 0.0)?;
    let peiffer = dalpha(ell, v, k)?.sub(&extended_bracket(&lifted, v, k)?).norm();
    Ok(relative(equivariance, &[p.norm(), v.norm()]).max(relative(
        peiffer / k.abs().max(1.0),
        &[ell.norm(), v.norm()],
    )))
}
