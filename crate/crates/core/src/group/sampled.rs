//! Grid-sampled SU(2)-valued paths and paths of loops on `[0, 2π]`, with
//! second-order finite differences and trapezoid quadrature.

use nalgebra::Vector3;
use rand::Rng;
use serde::Serialize;

use super::su2::{self, Mat, TracePairing, C64};
use crate::error::{Error, Result};
use crate::path::{PolyPath, TWO_PI};

/// Tolerance for unitarity and boundary conditions of sampled elements.
pub const GROUP_TOL: f64 = 1e-10;

const MIN_INTERVALS: usize = 4;

fn check_size(n: usize, axis: &str) -> Result<()> {
    if n < MIN_INTERVALS {
        return Err(Error::Grid(format!("{axis} grid needs at least {MIN_INTERVALS} intervals, got {n}")));
    }
    Ok(())
}

fn check_element(m: &Mat, at: &str) -> Result<()> {
    let defect = su2::unitarity_defect(m);
    if defect > GROUP_TOL {
        return Err(Error::Grid(format!("sample at {at} is not in SU(2) (defect {defect:.3e})")));
    }
    Ok(())
}

fn check_identity(m: &Mat, at: &str) -> Result<()> {
    let gap = (m - su2::identity()).norm();
    if gap > GROUP_TOL {
        return Err(Error::Grid(format!("sample at {at} must be the identity (off by {gap:.3e})")));
    }
    Ok(())
}

/// Second-order derivative of equally spaced samples: central differences
/// inside, one-sided three-point stencils at both ends.
pub(crate) fn differentiate(values: &[Mat], h: f64) -> Vec<Mat> {
    let n = values.len();
    debug_assert!(n >= 3);
    let s = |a: f64| C64::new(a / (2.0 * h), 0.0);
    (0..n)
        .map(|i| {
            if i == 0 {
                (values[1] * C64::new(4.0, 0.0) - values[0] * C64::new(3.0, 0.0) - values[2]) * s(1.0)
            } else if i == n - 1 {
                (values[n - 1] * C64::new(3.0, 0.0) - values[n - 2] * C64::new(4.0, 0.0) + values[n - 3]) * s(1.0)
            } else {
                (values[i + 1] - values[i - 1]) * s(1.0)
            }
        })
        .collect()
}

/// Trapezoid weights for `n` intervals of width `h`.
pub(crate) fn trapezoid(n: usize, h: f64) -> Vec<f64> {
    (0..=n).map(|i| if i == 0 || i == n { 0.5 * h } else { h }).collect()
}

/// A path `p: [0, 2π] → SU(2)` with `p(0) = 1`, sampled at `n + 1` points.
#[derive(Debug, Clone)]
pub struct SampledGroupPath {
    samples: Vec<Mat>,
}

impl SampledGroupPath {
    pub fn new(mut samples: Vec<Mat>) -> Result<Self> {
        check_size(samples.len().saturating_sub(1), "θ")?;
        for (i, m) in samples.iter().enumerate() {
            check_element(m, &format!("θ index {i}"))?;
        }
        check_identity(&samples[0], "θ = 0")?;
        samples[0] = su2::identity();
        Ok(Self { samples })
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::new(vec![su2::identity(); n + 1])
    }

    /// `θ ↦ exp(a(θ))`, reprojected onto SU(2).
    pub fn from_exponent(n: usize, a: impl Fn(f64) -> Vector3<f64>) -> Result<Self> {
        check_size(n, "θ")?;
        let h = TWO_PI / n as f64;
        Self::new((0..=n).map(|i| su2::reproject(&su2::exp(&a(i as f64 * h)))).collect())
    }

    pub fn n(&self) -> usize {
        self.samples.len() - 1
    }

    pub fn step(&self) -> f64 {
        TWO_PI / self.n() as f64
    }

    pub fn samples(&self) -> &[Mat] {
        &self.samples
    }

    /// `p⁻¹p′` at every grid point, projected onto `su(2)`.
    pub fn left_log_derivative(&self) -> Vec<Mat> {
        let d = differentiate(&self.samples, self.step());
        self.samples
            .iter()
            .zip(&d)
            .map(|(p, dp)| su2::project_algebra(&(p.adjoint() * dp)))
            .collect()
    }

    pub fn max_unitarity_defect(&self) -> f64 {
        self.samples.iter().map(su2::unitarity_defect).fold(0.0, f64::max)
    }
}

/// A smooth seeded exponent `a(θ) = Σ_m c_m sin(mθ/4)`, vanishing at 0,
/// used to generate group paths at any resolution.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SmoothGroupPath {
    modes: Vec<[f64; 3]>,
}

impl SmoothGroupPath {
    pub fn new(modes: Vec<[f64; 3]>) -> Self {
        Self { modes }
    }

    pub fn random<R: Rng + ?Sized>(modes: usize, rng: &mut R) -> Self {
        let modes = (1..=modes)
            .map(|m| std::array::from_fn(|_| rng.random_range(-1.0..1.0) / m as f64))
            .collect();
        Self { modes }
    }

    pub fn exponent(&self, theta: f64) -> Vector3<f64> {
        let mut a = Vector3::zeros();
        for (m, c) in self.modes.iter().enumerate() {
            let s = ((m + 1) as f64 * theta / 4.0).sin();
            a += Vector3::new(c[0], c[1], c[2]) * s;
        }
        a
    }

    pub fn sample(&self, n: usize) -> Result<SampledGroupPath> {
        SampledGroupPath::from_exponent(n, |theta| self.exponent(theta))
    }
}

/// A map `f: [0, 2π] × [0, 2π] → SU(2)` with `f(0, θ) = 1` and
/// `f(t, 0) = f(t, 2π) = 1`, i.e. a based path in the loop group.
#[derive(Debug, Clone)]
pub struct SampledPathOfLoops {
    nt: usize,
    ntheta: usize,
    data: Vec<Mat>,
}

impl SampledPathOfLoops {
    pub fn new(nt: usize, ntheta: usize, mut data: Vec<Mat>) -> Result<Self> {
        check_size(nt, "t")?;
        check_size(ntheta, "θ")?;
        if data.len() != (nt + 1) * (ntheta + 1) {
            return Err(Error::Grid(format!(
                "expected {} samples for a {nt}×{ntheta} grid, got {}",
                (nt + 1) * (ntheta + 1),
                data.len()
            )));
        }
        for i in 0..=nt {
            for j in 0..=ntheta {
                let idx = i * (ntheta + 1) + j;
                check_element(&data[idx], &format!("({i}, {j})"))?;
                if i == 0 || j == 0 || j == ntheta {
                    check_identity(&data[idx], &format!("boundary cell ({i}, {j})"))?;
                    data[idx] = su2::identity();
                }
            }
        }
        Ok(Self { nt, ntheta, data })
    }

    pub fn identity(nt: usize, ntheta: usize) -> Result<Self> {
        Self::new(nt, ntheta, vec![su2::identity(); (nt + 1) * (ntheta + 1)])
    }

    /// `(t, θ) ↦ exp(a(t, θ))`, reprojected onto SU(2).
    pub fn from_exponent(nt: usize, ntheta: usize, a: impl Fn(f64, f64) -> Vector3<f64>) -> Result<Self> {
        check_size(nt, "t")?;
        check_size(ntheta, "θ")?;
        let (ht, hs) = (TWO_PI / nt as f64, TWO_PI / ntheta as f64);
        let mut data = Vec::with_capacity((nt + 1) * (ntheta + 1));
        for i in 0..=nt {
            for j in 0..=ntheta {
                data.push(su2::reproject(&su2::exp(&a(i as f64 * ht, j as f64 * hs))));
            }
        }
        Self::new(nt, ntheta, data)
    }

    pub fn nt(&self) -> usize {
        self.nt
    }

    pub fn ntheta(&self) -> usize {
        self.ntheta
    }

    pub fn at(&self, i: usize, j: usize) -> &Mat {
        &self.data[i * (self.ntheta + 1) + j]
    }

    fn same_grid(&self, other: &Self) -> Result<()> {
        if self.nt != other.nt || self.ntheta != other.ntheta {
            return Err(Error::Grid(format!(
                "grid {}×{} does not match {}×{}",
                self.nt, self.ntheta, other.nt, other.ntheta
            )));
        }
        Ok(())
    }

    /// Pointwise product, reprojected onto SU(2).
    pub fn product(&self, other: &Self) -> Result<Self> {
        self.same_grid(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| su2::reproject(&(a * b))).collect();
        Ok(Self { data, ..*self })
    }

    /// `(t, θ) ↦ p(θ) f(t, θ) p(θ)⁻¹`.
    pub fn conjugated(&self, p: &SampledGroupPath) -> Result<Self> {
        if p.n() != self.ntheta {
            return Err(Error::Grid(format!(
                "path has {} θ intervals, grid has {}",
                p.n(),
                self.ntheta
            )));
        }
        let mut data = self.data.clone();
        for i in 0..=self.nt {
            for j in 0..=self.ntheta {
                let idx = i * (self.ntheta + 1) + j;
                let pj = &p.samples()[j];
                data[idx] = su2::reproject(&(pj * self.data[idx] * pj.adjoint()));
            }
        }
        Ok(Self { data, ..*self })
    }

    pub fn max_unitarity_defect(&self) -> f64 {
        self.data.iter().map(su2::unitarity_defect).fold(0.0, f64::max)
    }
}

/// Seeded smooth exponent `a(t, θ) = Σ c_{mn} sin(mt/4) sin(nθ/2)`, which
/// vanishes at `t = 0` and at `θ ∈ {0, 2π}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SmoothPathOfLoops {
    modes: Vec<Vec<[f64; 3]>>,
}

impl SmoothPathOfLoops {
    pub fn new(modes: Vec<Vec<[f64; 3]>>) -> Self {
        Self { modes }
    }

    pub fn random<R: Rng + ?Sized>(modes: usize, rng: &mut R) -> Self {
        let modes = (1..=modes)
            .map(|m| {
                (1..=modes)
                    .map(|n| std::array::from_fn(|_| rng.random_range(-1.0..1.0) / (m * n) as f64))
                    .collect()
            })
            .collect();
        Self { modes }
    }

    pub fn exponent(&self, t: f64, theta: f64) -> Vector3<f64> {
        let mut a = Vector3::zeros();
        for (m, row) in self.modes.iter().enumerate() {
            let st = ((m + 1) as f64 * t / 4.0).sin();
            for (n, c) in row.iter().enumerate() {
                let s = st * ((n + 1) as f64 * theta / 2.0).sin();
                a += Vector3::new(c[0], c[1], c[2]) * s;
            }
        }
        a
    }

    pub fn sample(&self, nt: usize, ntheta: usize) -> Result<SampledPathOfLoops> {
        SampledPathOfLoops::from_exponent(nt, ntheta, |t, theta| self.exponent(t, theta))
    }
}

/// An `su(2)`-valued field on a `t × θ` grid, in coordinates `e_j`.
#[derive(Debug, Clone)]
pub struct AlgebraGrid {
    pub nt: usize,
    pub ntheta: usize,
    pub values: Vec<Vector3<f64>>,
    /// Largest norm of the discarded non-`su(2)` part before projection.
    pub skew_defect: f64,
}

impl AlgebraGrid {
    pub fn at(&self, i: usize, j: usize) -> Vector3<f64> {
        self.values[i * (self.ntheta + 1) + j]
    }
}

fn project_with_defect(m: &Mat, defect: &mut f64) -> Vector3<f64> {
    let p = su2::project_algebra(m);
    *defect = defect.max((m - p).norm());
    su2::coords(&p)
}

/// `f(t)⁻¹ ∂_t f(t)` on the grid.
pub fn maurer_cartan_t(f: &SampledPathOfLoops) -> Result<AlgebraGrid> {
    check_size(f.nt, "t")?;
    let (nt, ns) = (f.nt, f.ntheta);
    let h = TWO_PI / nt as f64;
    let mut values = vec![Vector3::zeros(); (nt + 1) * (ns + 1)];
    let mut defect = 0.0;
    for j in 0..=ns {
        let column: Vec<Mat> = (0..=nt).map(|i| *f.at(i, j)).collect();
        let d = differentiate(&column, h);
        for i in 0..=nt {
            values[i * (ns + 1) + j] = project_with_defect(&(column[i].adjoint() * d[i]), &mut defect);
        }
    }
    Ok(AlgebraGrid {
        nt,
        ntheta: ns,
        values,
        skew_defect: defect,
    })
}

/// `∂_θ g(θ) g(θ)⁻¹` on the grid.
pub fn maurer_cartan_theta_right(g: &SampledPathOfLoops) -> Result<AlgebraGrid> {
    check_size(g.ntheta, "θ")?;
    let (nt, ns) = (g.nt, g.ntheta);
    let h = TWO_PI / ns as f64;
    let mut values = vec![Vector3::zeros(); (nt + 1) * (ns + 1)];
    let mut defect = 0.0;
    for i in 0..=nt {
        let row = &g.data[i * (ns + 1)..(i + 1) * (ns + 1)];
        let d = differentiate(row, h);
        for j in 0..=ns {
            values[i * (ns + 1) + j] = project_with_defect(&(d[j] * row[j].adjoint()), &mut defect);
        }
    }
    Ok(AlgebraGrid {
        nt,
        ntheta: ns,
        values,
        skew_defect: defect,
    })
}

fn pair_coords(pairing: &TracePairing, a: &Vector3<f64>, b: &Vector3<f64>) -> f64 {
    pairing.pair(&su2::embed(a), &su2::embed(b))
}

/// `∬⟨f⁻¹∂_t f, ∂_θ g g⁻¹⟩ dθ dt` by the trapezoid rule on both axes.
pub fn kappa_exponent(f: &SampledPathOfLoops, g: &SampledPathOfLoops, pairing: &TracePairing) -> Result<f64> {
    f.same_grid(g)?;
    let x = maurer_cartan_t(f)?;
    let y = maurer_cartan_theta_right(g)?;
    let wt = trapezoid(f.nt, TWO_PI / f.nt as f64);
    let ws = trapezoid(f.ntheta, TWO_PI / f.ntheta as f64);
    let mut total = 0.0;
    for (i, wi) in wt.iter().enumerate() {
        let mut row = 0.0;
        for (j, wj) in ws.iter().enumerate() {
            row += wj * pair_coords(pairing, &x.at(i, j), &y.at(i, j));
        }
        total += wi * row;
    }
    Ok(total)
}

/// `κ(f, g) = exp(2ik ∬⟨f⁻¹∂_t f, ∂_θ g g⁻¹⟩ dθ dt)`.
pub fn kappa(f: &SampledPathOfLoops, g: &SampledPathOfLoops, k: i64, pairing: &TracePairing) -> Result<C64> {
    if k == 0 {
        f.same_grid(g)?;
        return Ok(C64::new(1.0, 0.0));
    }
    let phase = 2.0 * k as f64 * kappa_exponent(f, g, pairing)?;
    Ok(C64::from_polar(1.0, phase))
}

/// `|κ(f,g) κ(fg,h) - κ(g,h) κ(f,gh)|`.
pub fn kappa_cocycle_residual(
    f: &SampledPathOfLoops,
    g: &SampledPathOfLoops,
    h: &SampledPathOfLoops,
    k: i64,
    pairing: &TracePairing,
) -> Result<f64> {
    let fg = f.product(g)?;
    let gh = g.product(h)?;
    let lhs = kappa(f, g, k, pairing)? * kappa(&fg, h, k, pairing)?;
    let rhs = kappa(g, h, k, pairing)? * kappa(f, &gh, k, pairing)?;
    Ok((lhs - rhs).norm())
}

/// Samples an `su(2)`-valued polynomial path at the `n + 1` grid points.
fn sample_polypath(xi: &PolyPath, n: usize) -> Result<Vec<Mat>> {
    if xi.algebra().dim() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            got: xi.algebra().dim(),
        });
    }
    Ok((0..=n)
        .map(|i| {
            let v = xi.eval(i as f64 / n as f64);
            su2::embed(&Vector3::new(v[0], v[1], v[2]))
        })
        .collect())
}

/// `-2 Σ w_j ⟨ξ_j, μ_j⟩` with `μ = p⁻¹p′`.
fn beta_sampled(mu: &[Mat], xi: &[Mat], h: f64, pairing: &TracePairing) -> f64 {
    let w = trapezoid(mu.len() - 1, h);
    -2.0 * w.iter().zip(mu.iter().zip(xi)).map(|(w, (m, x))| w * pairing.pair(x, m)).sum::<f64>()
}

/// `β_p(ξ) = -2∫⟨ξ(θ), p(θ)⁻¹p′(θ)⟩ dθ`, with `ξ` sampled on `p`'s grid.
pub fn beta_p(p: &SampledGroupPath, xi: &PolyPath, pairing: &TracePairing) -> Result<f64> {
    let xs = sample_polypath(xi, p.n())?;
    Ok(beta_sampled(&p.left_log_derivative(), &xs, p.step(), pairing))
}

/// `2k Σ w_j ⟨ξ_j, η′_j⟩` for sampled loops.
fn omega_sampled(xi: &[Mat], eta: &[Mat], h: f64, k: f64, pairing: &TracePairing) -> f64 {
    let d = differentiate(eta, h);
    let w = trapezoid(xi.len() - 1, h);
    2.0 * k * w.iter().zip(xi.iter().zip(&d)).map(|(w, (x, e))| w * pairing.pair(x, e)).sum::<f64>()
}

/// Residual of `ωₖ(Ad(p)ξ, Ad(p)η) = ωₖ(ξ, η) + kβ_p([ξ, η])`, all terms by
/// quadrature. This is `Ad(p)*ω = ω - dβ_p` evaluated on `(ξ, η)` with the
/// convention `dβ(ξ, η) = -β([ξ, η])` for a left-invariant 1-form.
pub fn ad_omega_identity_residual(
    p: &SampledGroupPath,
    xi: &PolyPath,
    eta: &PolyPath,
    k: f64,
    pairing: &TracePairing,
) -> Result<f64> {
    let n = p.n();
    let h = p.step();
    let xs = sample_polypath(xi, n)?;
    let es = sample_polypath(eta, n)?;
    let ad = |v: &[Mat]| -> Vec<Mat> {
        v.iter().zip(p.samples()).map(|(x, g)| g * x * g.adjoint()).collect()
    };
    let lhs = omega_sampled(&ad(&xs), &ad(&es), h, k, pairing);
    let base = omega_sampled(&xs, &es, h, k, pairing);
    let br = sample_polypath(&xi.pointwise_bracket(eta)?, n)?;
    let beta = beta_sampled(&p.left_log_derivative(), &br, h, pairing);
    Ok((lhs - base - k * beta).abs())
}

/// `|κ(pf₁p⁻¹, pf₂p⁻¹) - κ(f₁,f₂) exp(ik∫(β_p(X₁₂) - β_p(X₁) - β_p(X₂))dt)|`
/// with `X = f⁻¹∂_t f`.
pub fn kappa_conjugation_identity_residual(
    p: &SampledGroupPath,
    f1: &SampledPathOfLoops,
    f2: &SampledPathOfLoops,
    k: i64,
    pairing: &TracePairing,
) -> Result<f64> {
    f1.same_grid(f2)?;
    let c1 = f1.conjugated(p)?;
    let c2 = f2.conjugated(p)?;
    let lhs = kappa(&c1, &c2, k, pairing)?;

    let mu = p.left_log_derivative();
    let h = p.step();
    let x1 = maurer_cartan_t(f1)?;
    let x2 = maurer_cartan_t(f2)?;
    let x12 = maurer_cartan_t(&f1.product(f2)?)?;
    let ns = f1.ntheta;
    let slice = |x: &AlgebraGrid, i: usize| -> Vec<Mat> { (0..=ns).map(|j| su2::embed(&x.at(i, j))).collect() };
    let wt = trapezoid(f1.nt, TWO_PI / f1.nt as f64);
    let mut integral = 0.0;
    for (i, w) in wt.iter().enumerate() {
        let b = beta_sampled(&mu, &slice(&x12, i), h, pairing)
            - beta_sampled(&mu, &slice(&x1, i), h, pairing)
            - beta_sampled(&mu, &slice(&x2, i), h, pairing);
        integral += w * b;
    }
    let rhs = kappa(f1, f2, k, pairing)? * C64::from_polar(1.0, k as f64 * integral);
    Ok((lhs - rhs).norm())
}

/// Residuals of a check evaluated on a ladder of grid sizes `n₀, 2n₀, …`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Convergence {
    pub sizes: Vec<usize>,
    pub residuals: Vec<f64>,
    /// `residual(N) / residual(2N)` for consecutive sizes.
    pub ratios: Vec<f64>,
}

/// Residuals at or below this level are treated as exact (no rate needed).
pub const EXACT_FLOOR: f64 = 1e-13;

/// Expected band for `residual(N)/residual(2N)` under second-order
/// convergence.
pub const SECOND_ORDER_BAND: (f64, f64) = (3.0, 5.0);

impl Convergence {
    pub fn run(n0: usize, levels: usize, mut residual: impl FnMut(usize) -> Result<f64>) -> Result<Self> {
        let sizes: Vec<usize> = (0..levels).map(|l| n0 << l).collect();
        let residuals = sizes.iter().map(|&n| residual(n)).collect::<Result<Vec<_>>>()?;
        let ratios = residuals.windows(2).map(|w| w[0] / w[1]).collect();
        Ok(Self {
            sizes,
            residuals,
            ratios,
        })
    }

    pub fn final_residual(&self) -> f64 {
        *self.residuals.last().unwrap_or(&0.0)
    }

    pub fn exact(&self) -> bool {
        self.residuals.iter().all(|r| *r <= EXACT_FLOOR)
    }

    pub fn second_order(&self) -> bool {
        let (lo, hi) = SECOND_ORDER_BAND;
        self.ratios.iter().all(|r| (lo..=hi).contains(r))
    }

    /// Final residual within `threshold` and either second-order decay or
    /// residuals at roundoff level throughout.
    pub fn passes(&self, threshold: f64) -> bool {
        self.final_residual() <= threshold && (self.exact() || self.second_order())
    }
}


#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::algebra::LieAlgebra;
    use crate::path::{PathKind, ScalarPoly};

    fn pairing() -> TracePairing {
        TracePairing::default()
    }

    fn smooth_loops(seed: u64) -> [SmoothPathOfLoops; 3] {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        std::array::from_fn(|_| SmoothPathOfLoops::random(2, &mut rng))
    }

    fn su2() -> Arc<LieAlgebra> {
        Arc::new(LieAlgebra::su2())
    }

    #[test]
    fn boundary_conditions_are_enforced() {
        let bad = SampledPathOfLoops::from_exponent(8, 8, |t, _| Vector3::new(t, 0.0, 0.0));
        assert!(matches!(bad, Err(Error::Grid(_))));
        let f = SampledPathOfLoops::from_exponent(8, 8, |t, s| Vector3::new(t * (s / 2.0).sin(), 0.0, 0.0)).unwrap();
        assert_eq!(*f.at(0, 3), su2::identity());
        assert_eq!(*f.at(5, 8), su2::identity());
        assert!(SampledGroupPath::from_exponent(8, |s| Vector3::new(1.0 + s, 0.0, 0.0)).is_err());
        assert!(SampledGroupPath::identity(3).is_err());
        assert!(maurer_cartan_t(&SampledPathOfLoops::identity(4, 4).unwrap()).is_ok());
    }

    #[test]
    fn maurer_cartan_of_identity_and_of_a_one_parameter_subgroup() {
        let id = SampledPathOfLoops::identity(16, 16).unwrap();
        assert!(maurer_cartan_t(&id).unwrap().values.iter().all(|v| v.norm() == 0.0));

        let x = Vector3::new(0.4, -0.3, 0.8);
        let err = |n: usize| {
            let f = SampledPathOfLoops::from_exponent(n, n, |t, s| x * (t * (s / 2.0).sin())).unwrap();
            let mc = maurer_cartan_t(&f).unwrap();
            let mut worst = 0.0f64;
            for i in 0..=n {
                for j in 0..=n {
                    let s = (j as f64 * TWO_PI / n as f64 / 2.0).sin();
                    worst = worst.max((mc.at(i, j) - x * s).norm());
                }
            }
            (worst, mc.skew_defect)
        };
        let (e1, d1) = err(32);
        let (e2, d2) = err(64);
        // exp(tX) commutes with its derivative, so the stencil error is the
        // only contribution; it should decay at second order.
        assert!(e1 < 1e-2 && e2 < e1 / 3.0, "{e1} {e2}");
        assert!(d2 < d1 / 3.0 || d2 < 1e-12, "{d1} {d2}");
    }

    #[test]
    fn kappa_trivial_cases() {
        let [a, b, _] = smooth_loops(1);
        let f = a.sample(32, 32).unwrap();
        let g = b.sample(32, 32).unwrap();
        let id = SampledPathOfLoops::identity(32, 32).unwrap();
        assert!((kappa(&id, &g, 1, &pairing()).unwrap() - C64::new(1.0, 0.0)).norm() < 1e-15);
        assert!((kappa(&f, &id, 1, &pairing()).unwrap() - C64::new(1.0, 0.0)).norm() < 1e-15);
        assert_eq!(kappa(&f, &g, 0, &pairing()).unwrap(), C64::new(1.0, 0.0));
        assert!(kappa(&f, &SampledPathOfLoops::identity(16, 32).unwrap(), 1, &pairing()).is_err());
    }

    #[test]
    fn kappa_matches_a_refined_grid() {
        let [a, b, _] = smooth_loops(2);
        let at = |n| kappa(&a.sample(n, n).unwrap(), &b.sample(n, n).unwrap(), 1, &pairing()).unwrap();
        let (k1, k2, k3) = (at(128), at(256), at(512));
        let (d1, d2) = ((k1 - k2).norm(), (k2 - k3).norm());
        // Successive differences of a second-order scheme shrink by four.
        assert!((3.0..=5.0).contains(&(d1 / d2)), "{d1} {d2}");
        assert!(d2 < 2e-4, "{d2}");
    }

    #[test]
    fn kappa_cocycle_converges_at_second_order() {
        let [a, b, c] = smooth_loops(3);
        let conv = Convergence::run(64, 3, |n| {
            kappa_cocycle_residual(&a.sample(n, n)?, &b.sample(n, n)?, &c.sample(n, n)?, 1, &pairing())
        })
        .unwrap();
        assert!(conv.second_order(), "{conv:?}");
        assert!(conv.residuals[1] <= 1e-3 && conv.residuals[2] <= 2.5e-4, "{conv:?}");

        let id = SampledPathOfLoops::identity(64, 64).unwrap();
        let (f, g) = (a.sample(64, 64).unwrap(), b.sample(64, 64).unwrap());
        assert!(kappa_cocycle_residual(&id, &f, &g, 2, &pairing()).unwrap() < 1e-12);
        assert!(kappa_cocycle_residual(&f, &g, &id, 2, &pairing()).unwrap() < 1e-12);
        assert_eq!(kappa_cocycle_residual(&f, &g, &f, 0, &pairing()).unwrap(), 0.0);
    }

    #[test]
    fn beta_matches_the_closed_form_for_exponential_paths() {
        let g = su2();
        let s = ScalarPoly::new(vec![0.0, 0.7, -0.4, 0.9]);
        let x = nalgebra::DVector::from_vec(vec![0.5, -0.2, 0.3]);
        let xi = PolyPath::random(g.clone(), 4, PathKind::Loop, &mut ChaCha8Rng::seed_from_u64(4));
        let p = SampledGroupPath::from_exponent(512, |theta| {
            let v = s.eval(theta / TWO_PI);
            Vector3::new(x[0] * v, x[1] * v, x[2] * v)
        })
        .unwrap();
        let sx = PolyPath::scalar_times(g.clone(), &s, &x, PathKind::Based).unwrap();
        let oracle = -2.0 * xi.pairing_with_derivative(&sx).unwrap();
        let conv = Convergence::run(128, 3, |n| {
            let p = SampledGroupPath::from_exponent(n, |theta| {
                let v = s.eval(theta / TWO_PI);
                Vector3::new(x[0] * v, x[1] * v, x[2] * v)
            })?;
            Ok((beta_p(&p, &xi, &pairing())? - oracle).abs())
        })
        .unwrap();
        assert!(conv.second_order() && conv.final_residual() < 2e-6, "{conv:?}");

        let id = SampledGroupPath::identity(64).unwrap();
        assert_eq!(beta_p(&id, &xi, &pairing()).unwrap(), 0.0);
        let zero = PolyPath::zero(g, PathKind::Loop);
        assert_eq!(beta_p(&p, &zero, &pairing()).unwrap(), 0.0);
    }

    #[test]
    fn ad_omega_identity_converges() {
        let g = su2();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let p = SmoothGroupPath::random(3, &mut rng);
        let xi = PolyPath::random(g.clone(), 4, PathKind::Loop, &mut rng);
        let eta = PolyPath::random(g.clone(), 4, PathKind::Loop, &mut rng);
        let conv = Convergence::run(512, 2, |n| ad_omega_identity_residual(&p.sample(n)?, &xi, &eta, 1.0, &pairing()))
            .unwrap();
        assert!(conv.residuals[0] <= 1e-5, "{conv:?}");
        assert!(conv.second_order(), "{conv:?}");

        let id = SampledGroupPath::identity(512).unwrap();
        assert!(ad_omega_identity_residual(&id, &xi, &eta, 1.0, &pairing()).unwrap() < 1e-12);
        assert!(ad_omega_identity_residual(&p.sample(64).unwrap(), &xi, &xi, 1.0, &pairing()).unwrap() < 1e-12);
    }

    #[test]
    fn ad_omega_with_the_opposite_sign_fails() {
        // The residual with +kβ in place of -kβ is not small.
        let g = su2();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let p = SmoothGroupPath::random(3, &mut rng).sample(512).unwrap();
        let xi = PolyPath::random(g.clone(), 4, PathKind::Loop, &mut rng);
        let eta = PolyPath::random(g.clone(), 4, PathKind::Loop, &mut rng);
        let br = xi.pointwise_bracket(&eta).unwrap();
        let beta = beta_p(&p, &br, &pairing()).unwrap();
        assert!(beta.abs() > 1e-2);
        let residual = ad_omega_identity_residual(&p, &xi, &eta, 1.0, &pairing()).unwrap();
        assert!((residual - 2.0 * beta.abs()).abs() > 1e-2);
    }

    #[test]
    fn kappa_conjugation_identity_converges() {
        let [a, b, _] = smooth_loops(7);
        let p = SmoothGroupPath::random(2, &mut ChaCha8Rng::seed_from_u64(8));
        let conv = Convergence::run(64, 3, |n| {
            kappa_conjugation_identity_residual(&p.sample(n)?, &a.sample(n, n)?, &b.sample(n, n)?, 1, &pairing())
        })
        .unwrap();
        assert!(conv.final_residual() <= 1e-3, "{conv:?}");
        assert!(conv.second_order(), "{conv:?}");

        let (f1, f2) = (a.sample(32, 32).unwrap(), b.sample(32, 32).unwrap());
        let id = SampledGroupPath::identity(32).unwrap();
        assert!(kappa_conjugation_identity_residual(&id, &f1, &f2, 1, &pairing()).unwrap() < 1e-12);
        let trivial = SampledPathOfLoops::identity(32, 32).unwrap();
        let p32 = p.sample(32).unwrap();
        assert!(kappa_conjugation_identity_residual(&p32, &f1, &trivial, 1, &pairing()).unwrap() < 1e-12);
    }

    #[test]
    fn products_stay_in_su2() {
        let [a, b, c] = smooth_loops(9);
        let p = SmoothGroupPath::random(2, &mut ChaCha8Rng::seed_from_u64(10)).sample(64).unwrap();
        let f = a.sample(64, 64).unwrap().product(&b.sample(64, 64).unwrap()).unwrap();
        let f = f.product(&c.sample(64, 64).unwrap()).unwrap().conjugated(&p).unwrap();
        assert!(f.max_unitarity_defect() < 1e-9);
        assert!(p.max_unitarity_defect() < 1e-9);
    }

    #[test]
    fn grid_omega_matches_the_polynomial_cocycle_for_small_loops() {
        // γ(θ) = exp(εη(θ)) has γ′γ⁻¹ = εη′ + O(ε²), so
        // 2k∫⟨εξ, γ′γ⁻¹⟩ = ε²ω(ξ, η) + O(ε³).
        let g = su2();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let xi = PolyPath::random(g.clone(), 4, PathKind::Loop, &mut rng);
        let eta = PolyPath::random(g.clone(), 4, PathKind::Loop, &mut rng);
        let exact = 2.0 * xi.pairing_with_derivative(&eta).unwrap();
        let n = 1024;
        let h = TWO_PI / n as f64;
        for eps in [1e-2, 1e-3] {
            let gamma = SampledGroupPath::from_exponent(n, |theta| {
                let v = eta.eval(theta / TWO_PI) * eps;
                Vector3::new(v[0], v[1], v[2])
            })
            .unwrap();
            let d = differentiate(gamma.samples(), h);
            let right: Vec<Mat> = d.iter().zip(gamma.samples()).map(|(dg, g)| dg * g.adjoint()).collect();
            let xs: Vec<Mat> = sample_polypath(&xi, n).unwrap().iter().map(|m| m * C64::new(eps, 0.0)).collect();
            let w = trapezoid(n, h);
            let grid: f64 = 2.0 * w.iter().zip(xs.iter().zip(&right)).map(|(w, (x, r))| w * pairing().pair(x, r)).sum::<f64>();
            let err = (grid / (eps * eps) - exact).abs();
            assert!(err < 10.0 * eps + 1e-4, "ε = {eps}: {err}");
        }
    }
}
