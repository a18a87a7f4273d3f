//! The registry of verification suites. Each suite is a function from one
//! seeded RNG to one [`Trial`]; the driver in the parent module handles
//! seeding, parallelism and aggregation.

use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::algebra::LieAlgebra;
use crate::error::{Error, Result};
use crate::group::{
    ad_omega_identity_residual, build_two_group, kappa_cocycle_residual, kappa_conjugation_identity_residual,
    normal_subgroup_sequence, strict_kernel_exactness, Convergence, FiniteCrossedModule, FiniteGroup, FiniteTwoGroup,
    SmoothGroupPath, SmoothPathOfLoops, StrictHom, TracePairing,
};
use crate::kacmoody::{
    dalpha_action_residual, dalpha_crossed_residual, dalpha_derivation_residual, extended_jacobi_residual,
    omega_cocycle_residual,
};
use crate::linfty::{
    all_signatures, generalized_jacobi_residual, sample_inputs, ChainHomotopy, LInftyHom, TwoTermLInfinity,
};
use crate::models::{
    equivalence_suite, exactness_check, lambda2_uniqueness_residual, paper_tau, El, Gk, Lambda, LoopSpace, Phi, Pkg,
    Psi,
};
use crate::path::{universal_integral, CentralVector, PathKind, PolyPath, Splitting};
use crate::space::Vector;

/// Trials per suite for the grid-based suites, whose single trial already
/// runs a three-level refinement ladder.
pub const GRID_TRIALS: usize = 2;

/// Refinement levels `N, 2N, 4N` of the grid-based suites.
pub const LADDER_LEVELS: usize = 3;

/// Modes of the random smooth loops and group paths fed to grid suites.
const SMOOTH_MODES: usize = 2;

/// Random splitting functions in `universal-integral` have degree
/// `1..=MAX_SPLITTING_DEGREE`.
const MAX_SPLITTING_DEGREE: usize = 8;

/// What a suite's residual is compared against.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Tolerance {
    /// The configured bound for roundoff-level identities.
    Exact,
    /// A grid-convergence threshold, overridable by the configuration.
    Quadrature(f64),
    /// Integer counts that must vanish.
    Zero,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TrialCount {
    Configured,
    Grid,
    Once,
}

/// Everything resolved from a [`super::RunConfig`] that suites need.
pub struct Context {
    pub algebra: Arc<LieAlgebra>,
    pub k: f64,
    pub level: Option<i64>,
    pub degree: usize,
    pub splitting: Splitting,
    pub nt: usize,
    pub ntheta: usize,
    pub pairing: TracePairing,
}

/// The outcome of one seeded trial.
#[derive(Debug, Clone, PartialEq)]
pub struct Trial {
    pub residual: f64,
    /// `None` means `residual <= tolerance` decides.
    pub pass: Option<bool>,
    pub inputs: Value,
}

impl Trial {
    fn new(residual: f64, inputs: Value) -> Self {
        Self {
            residual,
            pass: None,
            inputs,
        }
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.pass.unwrap_or(true) && self.residual <= tol
    }
}

/// Position of a trial in its suite and the tolerance it is judged by.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Slot {
    pub index: usize,
    pub tolerance: f64,
}

type RunFn = fn(&Context, Slot, &mut ChaCha8Rng) -> Result<Trial>;

pub struct Suite {
    pub name: &'static str,
    /// The identity checked, in the notation of the library docs.
    pub checks: &'static str,
    pub tolerance: Tolerance,
    pub trials: TrialCount,
    /// Needs the SU(2) matrix layer.
    pub group_level: bool,
    /// Needs integer `k`.
    pub integer_level: bool,
    pub(crate) run: RunFn,
}

impl Suite {
    pub fn tolerance(&self, exact: f64, quadrature: Option<f64>) -> f64 {
        match self.tolerance {
            Tolerance::Exact => exact,
            Tolerance::Quadrature(default) => quadrature.unwrap_or(default),
            Tolerance::Zero => 0.0,
        }
    }

    pub fn trial_count(&self, configured: usize) -> usize {
        match self.trials {
            TrialCount::Configured => configured,
            TrialCount::Grid => configured.min(GRID_TRIALS),
            TrialCount::Once => 1,
        }
    }
}

pub const SUITES: &[Suite] = &[
    Suite {
        name: "universal-integral",
        checks: "∫₀^{2π} f (f - f²)′ dθ = -1/6 for every polynomial splitting f with f(0) = 0, f(2π) = 1; \
                 exact polynomial integration, trial 0 uses the configured f, the rest random f of degree ≤ 8",
        tolerance: Tolerance::Exact,
        trials: TrialCount::Configured,
        group_level: false,
        integer_level: false,
        run: universal_integral_trial,
    },
    Suite {
        name: "gk-jacobi",
        checks: "generalized Jacobi identity (graded unshuffle sum, n ≤ 4, every degree signature) for the \
                 skeletal Lie 2-algebra g_k: V₀ = g, V₁ = ℝ, d = 0, l₃(x,y,z) = k⟨x,[y,z]⟩",
        tolerance: Tolerance::Exact,
        trials: TrialCount::Configured,
        group_level: false,
        integer_level: false,
        run: gk_jacobi_trial,
    },
    Suite {
        name: "pkg-jacobi",
        checks: "generalized Jacobi identity (n ≤ 4, every degree signature) for the path model P_k g: \
                 V₀ = based polynomial paths, V₁ = loops ⊕ ℝ, d(ℓ, c) = ℓ, l₃ = 0, \
                 l₂(p, (ℓ, c)) = ([p, ℓ], 2k∫⟨p, ℓ′⟩)",
        tolerance: Tolerance::Exact,
        trials: TrialCount::Configured,
        group_level: false,
        integer_level: false,
        run: pkg_jacobi_trial,
    },
    Suite {
        name: "phi-hom",
        checks: "φ: P_k g → g_k (evaluation at 2π) is an L∞-homomorphism: chain map and the three \
                 coherence equations for φ₂(p₁, p₂) = k∫⟨p₁, p₂′⟩ - k∫⟨p₁′, p₂⟩",
        tolerance: Tolerance::Exact,
        trials: TrialCount::Configured,
        group_level: false,
        integer_level: false,
        run: phi_hom_trial,
    },
    Suite {
        name: "psi-hom",
        checks: "ψ: g_k → P_k g, x ↦ x f, is an L∞-homomorphism for the configured splitting f, with \
                 ψ₂(x, y) = ([x, y](f² - f), 0)",
        tolerance: Tolerance::Exact,
        trials: TrialCount::Configured,
        group_level: false,
        integer_level: false,
        run: psi_hom_trial,
    },
    Suite {
        name: "lambda-hom",
        checks: "λ: EΩg → P_k g, λ₀ = inclusion, λ₁(ℓ) = (ℓ, 0), λ₂(ℓ₁, ℓ₂) = (0, -2k∫⟨ℓ₁, ℓ₂′⟩), \
                 is an L∞-homomorphism",
        tolerance: Tolerance::Exact,
        trials: TrialCount::Configured,
        group_level: false,
        integer_level: false,
        run: lambda_hom_trial,
    },
    Suite {
        name: "tau-2hom",
        checks: "τ(p) = (p - p(2π) f, 0) is a 2-homomorphism ψ∘φ ⇒ 1 of P_k g: d′τ = 1₀ - (ψφ)₀, \
                 τd = 1₁ - (ψφ)₁ and the 2-homomorphism coherence law relating (ψφ)₂, 0 and l₂ with τ",
        tolerance: Tolerance::Exact,
        trials: TrialCount::Configured,
        group_level: false,
        integer_level: false,
        run: tau_trial,
    },
    Suite {
        name: "equivalence",
        checks: "φ∘ψ = 1 on g_k componentwise (including (φψ)₂ = 0), τ: ψ∘φ ⇒ 1 is a 2-homomorphism, \
                 and τ(x) = x is a 2-homomorphism γ∘β ⇒ 1 on EΩg and Eg (contractibility of EL)",
        tolerance: Tolerance::Exact,
        trials: TrialCount::Configured,
        group_level: false,
        integer_level: false,
        run: equivalence_trial,
    },
    Suite {
        name: "exactness",
        checks: "0 → EΩg → P_k g → g_k → 0 is strictly exact: im λ = ker φ on objects and on morphisms \
                 by exact rational rank computation, and λ₂ is forced by the coherence equation",
        tolerance: Tolerance::Exact,
        trials: TrialCount::Once,
        group_level: false,
        integer_level: false,
        run: exactness_trial,
    },
    Suite {
        name: "omega-cocycle",
        checks: "ω_k(f, g) = 2k∫⟨f, g′⟩ satisfies the 2-cocycle condition \
                 ω([f,g],h) + ω([g,h],f) + ω([h,f],g) = 0 on polynomial loops",
        tolerance: Tolerance::Exact,
        trials: TrialCount::Configured,
        group_level: false,
        integer_level: false,
        run: omega_cocycle_trial,
    },
    Suite {
        name: "extended-jacobi",
        checks: "Jacobi identity for the central extension Ωg ⊕ ℝ with [(f,a),(g,b)] = ([f,g], ω_k(f,g))",
        tolerance: Tolerance::Exact,
        trials: TrialCount::Configured,
        group_level: false,
        integer_level: false,
        run: extended_jacobi_trial,
    },
    Suite {
        name: "dalpha-action",
        checks: "dα(p)(ℓ, c) = ([p, ℓ], 2k∫⟨p, ℓ′⟩) is a Lie algebra action of P₀g on the central \
                 extension by derivations, compatible with the bracket of loops",
        tolerance: Tolerance::Exact,
        trials: TrialCount::Configured,
        group_level: false,
        integer_level: false,
        run: dalpha_trial,
    },
    Suite {
        name: "kappa-cocycle",
        checks: "κ(f,g) = exp(2ik∬⟨f⁻¹∂_t f, ∂_θ g g⁻¹⟩) satisfies κ(f,g)κ(fg,h) = κ(g,h)κ(f,gh) on \
                 sampled SU(2) paths of loops; second-order decay over grids N, 2N, 4N",
        tolerance: Tolerance::Quadrature(2.5e-4),
        trials: TrialCount::Grid,
        group_level: true,
        integer_level: true,
        run: kappa_cocycle_trial,
    },
    Suite {
        name: "ad-omega",
        checks: "ω_k(Ad_p ξ, Ad_p η) = ω_k(ξ, η) + kβ_p([ξ, η]) with β_p(ξ) = -2∫⟨ξ, p⁻¹p′⟩, i.e. \
                 Ad_p*ω = ω - dβ_p with dβ(ξ,η) = -β([ξ,η]); second-order decay over grids N, 2N, 4N",
        tolerance: Tolerance::Quadrature(1e-5),
        trials: TrialCount::Grid,
        group_level: true,
        integer_level: false,
        run: ad_omega_trial,
    },
    Suite {
        name: "kappa-conjugation",
        checks: "κ(pf₁p⁻¹, pf₂p⁻¹) = κ(f₁,f₂) exp(ik∫(β_p(X₁₂) - β_p(X₁) - β_p(X₂))dt) with \
                 X = f⁻¹∂_t f; second-order decay over grids N, 2N, 4N",
        tolerance: Tolerance::Quadrature(1e-3),
        trials: TrialCount::Grid,
        group_level: true,
        integer_level: true,
        run: kappa_conjugation_trial,
    },
    Suite {
        name: "crossed-axioms",
        checks: "crossed module axioms, checked exhaustively: ∂ and every α(g) are homomorphisms, α is an \
                 action, ∂(α(g)h) = g∂(h)g⁻¹ and α(∂h)h′ = hh′h⁻¹; residual counts failing modules",
        tolerance: Tolerance::Zero,
        trials: TrialCount::Once,
        group_level: false,
        integer_level: false,
        run: crossed_axioms_trial,
    },
    Suite {
        name: "two-group-axioms",
        checks: "the strict 2-group G ⋉ H ⇉ G of each crossed module: s, t, i homomorphisms, category \
                 laws, interchange on every composable quadruple, and |Hom(x,y)| = |ker ∂| when \
                 yx⁻¹ ∈ im ∂ (else 0); residual counts failures",
        tolerance: Tolerance::Zero,
        trials: TrialCount::Once,
        group_level: false,
        integer_level: false,
        run: two_group_trial,
    },
    Suite {
        name: "strict-exactness",
        checks: "strict kernels of finite 2-group maps: EG → 1 has kernel EG, the identity has trivial \
                 kernel, and EN → 2-group(N ↪ G) → G/N is exact on objects and morphisms",
        tolerance: Tolerance::Zero,
        trials: TrialCount::Once,
        group_level: false,
        integer_level: false,
        run: strict_exactness_trial,
    },
];

pub fn suite(name: &str) -> Option<&'static Suite> {
    SUITES.iter().find(|s| s.name == name)
}

fn universal_integral_trial(ctx: &Context, slot: Slot, rng: &mut ChaCha8Rng) -> Result<Trial> {
    let f = if slot.index == 0 {
        ctx.splitting.clone()
    } else {
        let degree = rng.random_range(1..=MAX_SPLITTING_DEGREE);
        Splitting::random(degree, rng)
    };
    let value = universal_integral(f.poly())?;
    Ok(Trial::new((value + 1.0 / 6.0).abs(), json!({ "f": f.poly().coeffs(), "integral": value })))
}

fn jacobi_trial<L: TwoTermLInfinity>(l: &L, rng: &mut ChaCha8Rng) -> Result<Trial> {
    let mut worst = Trial::new(-1.0, Value::Null);
    for sig in all_signatures(4) {
        let inputs = sample_inputs(l, &sig, rng)?;
        let r = generalized_jacobi_residual(l, &inputs)?;
        if r > worst.residual {
            let serialized: Vec<Value> = inputs.iter().map(|x| x.to_json()).collect();
            worst = Trial::new(r, json!({ "signature": sig, "inputs": serialized }));
        }
    }
    Ok(worst)
}

fn gk(ctx: &Context) -> Gk {
    Gk::new(ctx.algebra.clone(), ctx.k)
}

fn pkg(ctx: &Context) -> Pkg {
    Pkg::new(ctx.algebra.clone(), ctx.k, ctx.degree)
}

fn gk_jacobi_trial(ctx: &Context, _: Slot, rng: &mut ChaCha8Rng) -> Result<Trial> {
    jacobi_trial(&gk(ctx), rng)
}

fn pkg_jacobi_trial(ctx: &Context, _: Slot, rng: &mut ChaCha8Rng) -> Result<Trial> {
    jacobi_trial(&pkg(ctx), rng)
}

/// Runs the homomorphism checks on one sample. The inputs are recovered
/// by replaying the sampling order of the checker on a cloned RNG.
fn hom_trial<H: LInftyHom>(h: &H, rng: &mut ChaCha8Rng) -> Result<Trial> {
    let mut probe = rng.clone();
    let src = h.src();
    let (x, y, z, v) = (
        src.sample0(&mut probe),
        src.sample0(&mut probe),
        src.sample0(&mut probe),
        src.sample1(&mut probe),
    );
    let r = crate::linfty::hom_residuals(h, 1, rng);
    Ok(Trial::new(
        r.max(),
        json!({
            "x": x.to_json(), "y": y.to_json(), "z": z.to_json(), "h": v.to_json(),
            "chain": r.chain, "homo1": r.homo1, "homo2": r.homo2, "homo3": r.homo3,
        }),
    ))
}

fn phi_hom_trial(ctx: &Context, _: Slot, rng: &mut ChaCha8Rng) -> Result<Trial> {
    hom_trial(&Phi::new(pkg(ctx), gk(ctx)), rng)
}

fn psi_hom_trial(ctx: &Context, _: Slot, rng: &mut ChaCha8Rng) -> Result<Trial> {
    hom_trial(&Psi::new(gk(ctx), pkg(ctx), ctx.splitting.clone()), rng)
}

fn lambda_hom_trial(ctx: &Context, _: Slot, rng: &mut ChaCha8Rng) -> Result<Trial> {
    let el = El::new(LoopSpace::new(ctx.algebra.clone(), ctx.degree));
    hom_trial(&Lambda::new(el, pkg(ctx)), rng)
}

fn tau_trial(ctx: &Context, _: Slot, rng: &mut ChaCha8Rng) -> Result<Trial> {
    let tau = paper_tau(Phi::new(pkg(ctx), gk(ctx)), Psi::new(gk(ctx), pkg(ctx), ctx.splitting.clone()))?;
    let mut probe = rng.clone();
    let src = tau.from_hom().src();
    let (x, y, v) = (src.sample0(&mut probe), src.sample0(&mut probe), src.sample1(&mut probe));
    let r = crate::linfty::two_hom_residual(&tau, 1, rng);
    Ok(Trial::new(
        r.max(),
        json!({
            "x": x.to_json(), "y": y.to_json(), "h": v.to_json(),
            "homotopy0": r.homotopy0, "homotopy1": r.homotopy1, "coherence": r.coherence,
        }),
    ))
}

fn equivalence_trial(ctx: &Context, _: Slot, rng: &mut ChaCha8Rng) -> Result<Trial> {
    let r = equivalence_suite(ctx.algebra.clone(), ctx.k, &ctx.splitting, ctx.degree, 1, rng)?;
    Ok(Trial::new(
        r.max_identity().max(r.max_homotopy()),
        json!({
            "phi_psi_0": r.phi_psi_0, "phi_psi_1": r.phi_psi_1, "phi_psi_2": r.phi_psi_2,
            "tau": r.tau.max(), "trivial_loops": r.trivial_loops.max(),
            "trivial_vectors": r.trivial_vectors.max(),
        }),
    ))
}

fn exactness_trial(ctx: &Context, _: Slot, _: &mut ChaCha8Rng) -> Result<Trial> {
    let report = exactness_check(ctx.algebra.clone(), ctx.k, ctx.degree)?;
    let forced = lambda2_uniqueness_residual(ctx.algebra.clone(), ctx.k, ctx.degree);
    Ok(Trial {
        residual: forced,
        pass: Some(report.pass),
        inputs: json!({ "ranks": report, "lambda2_forced": forced }),
    })
}

fn random_loop(ctx: &Context, rng: &mut ChaCha8Rng) -> PolyPath {
    PolyPath::random(ctx.algebra.clone(), ctx.degree, PathKind::Loop, rng)
}

fn random_based(ctx: &Context, rng: &mut ChaCha8Rng) -> PolyPath {
    PolyPath::random(ctx.algebra.clone(), ctx.degree, PathKind::Based, rng)
}

fn random_central(ctx: &Context, rng: &mut ChaCha8Rng) -> CentralVector {
    CentralVector::random(ctx.algebra.clone(), ctx.degree, rng)
}

fn omega_cocycle_trial(ctx: &Context, _: Slot, rng: &mut ChaCha8Rng) -> Result<Trial> {
    let (f, g, h) = (random_loop(ctx, rng), random_loop(ctx, rng), random_loop(ctx, rng));
    let r = omega_cocycle_residual(&f, &g, &h, ctx.k)?;
    Ok(Trial::new(r, json!({ "f": f.to_json(), "g": g.to_json(), "h": h.to_json() })))
}

fn extended_jacobi_trial(ctx: &Context, _: Slot, rng: &mut ChaCha8Rng) -> Result<Trial> {
    let (a, b, c) = (random_central(ctx, rng), random_central(ctx, rng), random_central(ctx, rng));
    let r = extended_jacobi_residual(&a, &b, &c, ctx.k)?;
    Ok(Trial::new(r, json!({ "a": a.to_json(), "b": b.to_json(), "c": c.to_json() })))
}

fn dalpha_trial(ctx: &Context, _: Slot, rng: &mut ChaCha8Rng) -> Result<Trial> {
    let (p1, p2) = (random_based(ctx, rng), random_based(ctx, rng));
    let (a, b) = (random_central(ctx, rng), random_central(ctx, rng));
    let ell = random_loop(ctx, rng);
    let action = dalpha_action_residual(&p1, &p2, &a, ctx.k)?;
    let derivation = dalpha_derivation_residual(&p1, &a, &b, ctx.k)?;
    let crossed = dalpha_crossed_residual(&p2, &ell, &b, ctx.k)?;
    Ok(Trial::new(
        action.max(derivation).max(crossed),
        json!({
            "p1": p1.to_json(), "p2": p2.to_json(), "a": a.to_json(), "b": b.to_json(), "ell": ell.to_json(),
            "action": action, "derivation": derivation, "crossed": crossed,
        }),
    ))
}

fn level(ctx: &Context) -> Result<i64> {
    ctx.level
        .ok_or_else(|| Error::OutOfRange(format!("κ needs an integer level, got k = {}", ctx.k)))
}

fn convergence_trial(conv: Convergence, tol: f64, inputs: Value) -> Trial {
    Trial {
        residual: conv.final_residual(),
        pass: Some(conv.passes(tol)),
        inputs: json!({ "inputs": inputs, "convergence": conv }),
    }
}

fn kappa_cocycle_trial(ctx: &Context, slot: Slot, rng: &mut ChaCha8Rng) -> Result<Trial> {
    let k = level(ctx)?;
    let loops: [SmoothPathOfLoops; 3] = std::array::from_fn(|_| SmoothPathOfLoops::random(SMOOTH_MODES, rng));
    let (nt, ns) = (ctx.nt, ctx.ntheta);
    let conv = Convergence::run(nt, LADDER_LEVELS, |n| {
        let m = ns * n / nt;
        let [f, g, h] = [0, 1, 2].map(|i| loops[i].sample(n, m));
        kappa_cocycle_residual(&f?, &g?, &h?, k, &ctx.pairing)
    })?;
    Ok(convergence_trial(conv, slot.tolerance, json!(loops)))
}

fn ad_omega_trial(ctx: &Context, slot: Slot, rng: &mut ChaCha8Rng) -> Result<Trial> {
    let p = SmoothGroupPath::random(SMOOTH_MODES + 1, rng);
    let (xi, eta) = (random_loop(ctx, rng), random_loop(ctx, rng));
    let conv = Convergence::run(ctx.ntheta, LADDER_LEVELS, |n| {
        ad_omega_identity_residual(&p.sample(n)?, &xi, &eta, ctx.k, &ctx.pairing)
    })?;
    Ok(convergence_trial(conv, slot.tolerance, json!({ "p": p, "xi": xi.to_json(), "eta": eta.to_json() })))
}

fn kappa_conjugation_trial(ctx: &Context, slot: Slot, rng: &mut ChaCha8Rng) -> Result<Trial> {
    let k = level(ctx)?;
    let p = SmoothGroupPath::random(SMOOTH_MODES, rng);
    let f1 = SmoothPathOfLoops::random(SMOOTH_MODES, rng);
    let f2 = SmoothPathOfLoops::random(SMOOTH_MODES, rng);
    let (nt, ns) = (ctx.nt, ctx.ntheta);
    let conv = Convergence::run(nt, LADDER_LEVELS, |n| {
        let m = ns * n / nt;
        kappa_conjugation_identity_residual(&p.sample(m)?, &f1.sample(n, m)?, &f2.sample(n, m)?, k, &ctx.pairing)
    })?;
    Ok(convergence_trial(conv, slot.tolerance, json!({ "p": p, "f1": f1, "f2": f2 })))
}

/// Bundled crossed modules together with `EG` and `G × Z₂` (trivial
/// action) for every bundled group.
fn crossed_module_fixtures() -> Result<Vec<FiniteCrossedModule>> {
    let mut out = FiniteCrossedModule::bundled()?;
    for key in ["z2", "z3", "z4", "z6", "s3", "q8"] {
        let g = FiniteGroup::bundled(key)?;
        out.push(FiniteCrossedModule::inner(g.clone())?);
        out.push(FiniteCrossedModule::skeletal(g, FiniteGroup::cyclic(2)?)?);
    }
    Ok(out)
}

fn exact_trial(failures: Vec<String>, checked: Vec<Value>) -> Trial {
    Trial::new(failures.len() as f64, json!({ "failures": failures, "checked": checked }))
}

fn crossed_axioms_trial(_: &Context, _: Slot, _: &mut ChaCha8Rng) -> Result<Trial> {
    let mut failures = Vec::new();
    let mut checked = Vec::new();
    for cm in crossed_module_fixtures()? {
        if let Err(e) = cm.validate() {
            failures.push(format!("{}: {e}", cm.name()));
        }
        checked.push(json!(cm.name()));
    }
    Ok(exact_trial(failures, checked))
}

/// `|Hom(x, y)|` predicted from the crossed module alone.
fn predicted_hom_count(cm: &FiniteCrossedModule, x: usize, y: usize) -> usize {
    let g = cm.g();
    let h = cm.h();
    let kernel = h.elements().filter(|&a| cm.partial(a) == g.e()).count();
    let target = g.mul(y, g.inv(x));
    if h.elements().any(|a| cm.partial(a) == target) {
        kernel
    } else {
        0
    }
}

fn check_hom_counts(tg: &FiniteTwoGroup) -> Option<String> {
    let cm = tg.crossed_module();
    for x in cm.g().elements() {
        for y in cm.g().elements() {
            let (got, want) = (tg.hom_count(x, y), predicted_hom_count(cm, x, y));
            if got != want {
                return Some(format!("|Hom({x}, {y})| = {got}, expected {want}"));
            }
        }
    }
    None
}

fn two_group_trial(_: &Context, _: Slot, _: &mut ChaCha8Rng) -> Result<Trial> {
    let mut failures = Vec::new();
    let mut checked = Vec::new();
    for cm in crossed_module_fixtures()? {
        let name = cm.name().to_string();
        match build_two_group(cm) {
            Ok(tg) => {
                if let Some(msg) = check_hom_counts(&tg) {
                    failures.push(format!("{name}: {msg}"));
                }
                checked.push(json!({ "name": name, "counts": tg.report() }));
            }
            Err(e) => failures.push(format!("{name}: {e}")),
        }
    }
    Ok(exact_trial(failures, checked))
}

fn strict_exactness_trial(_: &Context, _: Slot, _: &mut ChaCha8Rng) -> Result<Trial> {
    let mut failures = Vec::new();
    let mut checked = Vec::new();
    let mut record = |name: String, ok: bool, detail: Value| {
        if !ok {
            failures.push(name.clone());
        }
        checked.push(json!({ "case": name, "detail": detail }));
    };

    for key in ["z2", "z3", "s3", "q8"] {
        let eg = build_two_group(FiniteCrossedModule::inner(FiniteGroup::bundled(key)?)?)?;
        let (objects, morphisms) = (eg.object_count(), eg.morphism_count());
        let to_one = StrictHom::to_trivial(eg.clone())?;
        let (ko, km) = to_one.kernel();
        record(
            format!("E{key} -> 1"),
            ko.len() == objects && km.len() == morphisms,
            json!({ "kernel_objects": ko.len(), "kernel_morphisms": km.len() }),
        );
        let id = StrictHom::identity(eg)?;
        let report = strict_kernel_exactness(None, &id)?;
        record(format!("identity on E{key}"), report.pass, json!(report));
    }

    let mut sequences = 0;
    for cm in FiniteCrossedModule::bundled()? {
        let injective = cm.h().elements().filter(|&a| cm.partial(a) == cm.g().e()).count() == 1;
        if !injective {
            continue;
        }
        let (_, _, report) = normal_subgroup_sequence(&cm)?;
        record(format!("EN -> {} -> G/N", cm.name()), report.pass, json!(report));
        sequences += 1;
    }
    if sequences == 0 {
        return Err(Error::FiniteGroup("no bundled crossed module with injective ∂".into()));
    }
    Ok(exact_trial(failures, checked))
}
