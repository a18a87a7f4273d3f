use std::sync::Arc;

use nalgebra::DVector;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::linfty::{
    all_signatures, categorical_view_check, compose, generalized_jacobi_residual, generalized_jacobi_value,
    hom_residuals, sample_inputs, structure_residuals, two_hom_residual, whisker_left, whisker_right, Graded,
    Identity, LInftyHom, ZeroedPhi2,
};
use crate::path::{ScalarPoly, Splitting};

fn su2() -> Arc<LieAlgebra> {
    Arc::new(LieAlgebra::su2())
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn e(i: usize) -> GVector {
    LieAlgebra::su2().basis(i)
}

fn monomial(d: usize, x: &GVector, kind: PathKind) -> PolyPath {
    PolyPath::monomial(su2(), d, x, kind).unwrap()
}

fn models(k: f64, f: Splitting) -> (Gk, Pkg, Phi, Psi, Lambda) {
    let g = su2();
    let gk = Gk::new(g.clone(), k);
    let pkg = Pkg::new(g.clone(), k, 4);
    let phi = Phi::new(pkg.clone(), gk.clone());
    let psi = Psi::new(gk.clone(), pkg.clone(), f);
    let lambda = Lambda::new(El::new(LoopSpace::new(g, 4)), pkg.clone());
    (gk, pkg, phi, psi, lambda)
}

fn max_jacobi<L: TwoTermLInfinity>(l: &L, trials: usize, seed: u64) -> f64 {
    let mut r = rng(seed);
    let mut worst = 0.0f64;
    for sig in all_signatures(4) {
        for _ in 0..trials {
            let inputs = sample_inputs(l, &sig, &mut r).unwrap();
            worst = worst.max(generalized_jacobi_residual(l, &inputs).unwrap());
        }
    }
    worst
}

#[test]
fn gk_l3_on_basis() {
    let gk = Gk::new(su2(), 1.0);
    assert!((gk.l3(&e(0), &e(1), &e(2)) - 1.0).abs() < 1e-15);
    let strict = Gk::new(su2(), 0.0);
    assert_eq!(strict.l3(&e(0), &e(1), &e(2)), 0.0);
}

#[test]
fn every_model_satisfies_the_generalized_jacobi_identity() {
    for k in [-2.0, 0.0, 1.0, 2.5] {
        assert!(max_jacobi(&Gk::new(su2(), k), 20, 1) < 1e-12);
        assert!(max_jacobi(&Pkg::new(su2(), k, 4), 10, 2) < 1e-10);
    }
    assert!(max_jacobi(&Gk::new(Arc::new(LieAlgebra::sl2()), 1.5), 20, 3) < 1e-12);
    assert!(max_jacobi(&El::new(LoopSpace::new(su2(), 4)), 10, 4) < 1e-12);
    assert!(max_jacobi(&El::new(GSpace::new(su2())), 20, 5) < 1e-12);
    assert!(max_jacobi(&Trivial, 2, 6) == 0.0);
}

#[test]
fn structure_maps_are_antisymmetric_and_multilinear() {
    let mut r = rng(7);
    for _ in 0..10 {
        for s in [
            structure_residuals(&Gk::new(su2(), 1.3), &mut r),
            structure_residuals(&Pkg::new(su2(), 1.3, 4), &mut r),
            structure_residuals(&El::new(LoopSpace::new(su2(), 3)), &mut r),
        ] {
            assert!(s.antisymmetry < 1e-12 && s.multilinearity < 1e-12, "{s:?}");
        }
    }
}

/// `dν(v0..v3) = -¼ Σ_{σ∈S₄} sgn σ ν([v_σ0, v_σ1], v_σ2, v_σ3)` computed by
/// brute force over all permutations.
fn dnu_oracle(g: &LieAlgebra, v: &[GVector]) -> f64 {
    let mut total = 0.0;
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    let mut seen = [false; 4];
                    if p.iter().any(|&i| std::mem::replace(&mut seen[i], true)) {
                        continue;
                    }
                    let mut inv = 0;
                    for i in 0..4 {
                        for j in (i + 1)..4 {
                            if p[i] > p[j] {
                                inv += 1;
                            }
                        }
                    }
                    let sgn = if inv % 2 == 0 { 1.0 } else { -1.0 };
                    let br = g.bracket(&v[a], &v[b]).unwrap();
                    total += sgn * g.nu(&br, &v[c], &v[d]).unwrap();
                }
            }
        }
    }
    -0.25 * total
}

#[test]
fn four_ary_jacobi_matches_the_cocycle_differential_up_to_sign() {
    // su(2) ⊕ su(2) with a non-invariant form, so dν is not identically zero.
    let g = LieAlgebra::su2().direct_sum(&LieAlgebra::su2());
    let mut form = g.form().clone();
    form[(0, 4)] = 0.3;
    form[(4, 0)] = 0.3;
    form[(2, 2)] = 1.7;
    let g = Arc::new(g.with_form_unchecked(form).unwrap());
    let k = 1.7;
    let gk = Gk::new(g.clone(), k);
    let mut r = rng(8);
    let mut largest = 0.0f64;
    for _ in 0..20 {
        let v: Vec<GVector> = (0..4).map(|_| gk.sample0(&mut r)).collect();
        let inputs: Vec<_> = v.iter().cloned().map(Graded::D0).collect();
        let Some(Graded::D1(jac)) = generalized_jacobi_value(&gk, &inputs).unwrap() else {
            panic!("four degree-0 inputs land in degree 1");
        };
        let dnu = g.ce_three_cocycle_value(&v[0], &v[1], &v[2], &v[3]).unwrap();
        assert!((dnu - dnu_oracle(&g, &v)).abs() < 1e-12);
        assert!((jac + k * dnu).abs() < 1e-12, "jacobi {jac}, k dν {}", k * dnu);
        largest = largest.max(dnu.abs());
    }
    assert!(largest > 1e-2);
}

#[test]
fn pkg_l2_01_worked_value() {
    let pkg = Pkg::new(su2(), 1.0, 4);
    let p = monomial(1, &e(0), PathKind::Based);
    let ell = PolyPath::scalar_times(su2(), &ScalarPoly::new(vec![0.0, 1.0, -1.0]), &e(0), PathKind::Loop).unwrap();
    let out = pkg.l2_01(&p, &CentralVector::new(ell, 0.0).unwrap());
    assert!((out.c + 1.0 / 3.0).abs() < 1e-14);
    assert!(out.ell.norm() < 1e-15);

    let zero_loop = pkg.l2_01(&p, &CentralVector::central(su2(), 2.0));
    assert_eq!(zero_loop.norm(), 0.0);
}

#[test]
fn el_differential_is_the_identity() {
    let el = El::new(LoopSpace::new(su2(), 4));
    let mut r = rng(9);
    let h = el.sample1(&mut r);
    assert_eq!(el.d(&h).sub(&h).norm(), 0.0);
}

#[test]
fn phi_worked_values() {
    let (_, _, phi, _, _) = models(1.0, Splitting::linear());
    let x = DVector::from_vec(vec![0.3, -1.2, 2.0]);
    assert_eq!(phi.phi0(&monomial(1, &x, PathKind::Based)), x);
    let x1 = DVector::from_vec(vec![1.0, 2.0, -0.5]);
    let x2 = DVector::from_vec(vec![0.7, -0.1, 3.0]);
    let p1 = monomial(1, &x1, PathKind::Based);
    let p2 = monomial(2, &x2, PathKind::Based);
    assert!((phi.phi2(&p1, &p2) - x1.dot(&x2) / 3.0).abs() < 1e-14);
    assert!(phi.phi2(&p1, &p1).abs() < 1e-15);
}

#[test]
fn psi_worked_values() {
    let (gk, pkg, _, psi, _) = models(1.0, Splitting::linear());
    let out = psi.phi2(&e(0), &e(1));
    assert_eq!(out.c, 0.0);
    assert!(out.ell.endpoint().norm() < 1e-15 && out.ell.eval(0.0).norm() < 1e-15);
    let expected = PolyPath::scalar_times(su2(), &ScalarPoly::new(vec![0.0, 1.0, -1.0]), &e(2), PathKind::Loop).unwrap();
    assert!(out.ell.sub(&expected).norm() < 1e-15);

    // The right-hand side of the third equation for ψ collapses to
    // (0, -k⟨x, [y, z]⟩) for every admissible f.
    let mut r = rng(10);
    for f in [Splitting::linear(), Splitting::smoothstep(), Splitting::random(6, &mut r)] {
        for k in [1.0, -2.0] {
            let psi = Psi::new(Gk::new(su2(), k), pkg.clone(), f.clone());
            let (x, y, z) = (gk.sample0(&mut r), gk.sample0(&mut r), gk.sample0(&mut r));
            let target = Pkg::new(su2(), k, 4);
            let rhs = psi
                .phi2(&x, &gk.l2_00(&y, &z))
                .add(&psi.phi2(&y, &gk.l2_00(&z, &x)))
                .add(&psi.phi2(&z, &gk.l2_00(&x, &y)))
                .add(&target.l2_01(&psi.phi0(&x), &psi.phi2(&y, &z)))
                .add(&target.l2_01(&psi.phi0(&y), &psi.phi2(&z, &x)))
                .add(&target.l2_01(&psi.phi0(&z), &psi.phi2(&x, &y)));
            let nu = LieAlgebra::su2().nu(&x, &y, &z).unwrap();
            assert!(rhs.ell.norm() < 1e-12);
            assert!((rhs.c + k * nu).abs() < 1e-12, "{} vs {}", rhs.c, -k * nu);
        }
    }
}

#[test]
fn lambda_worked_values() {
    let (_, _, phi, _, lambda) = models(1.5, Splitting::linear());
    let mut r = rng(11);
    let el = lambda.src().clone();
    for _ in 0..10 {
        let (a, b) = (el.sample0(&mut r), el.sample0(&mut r));
        assert!(lambda.phi2(&a, &a).norm() < 1e-13);
        let phi_lambda = compose(phi.clone(), lambda.clone()).unwrap();
        assert!(phi_lambda.phi2(&a, &b).abs() < 1e-12);
    }
}

#[test]
fn paper_homomorphisms_satisfy_all_equations() {
    let mut r = rng(12);
    let splittings = [Splitting::linear(), Splitting::smoothstep(), Splitting::random(5, &mut r)];
    for k in [-2.0, -1.0, 0.0, 1.0, 2.0] {
        for f in &splittings {
            let (_, _, phi, psi, lambda) = models(k, f.clone());
            for res in [
                hom_residuals(&phi, 25, &mut r),
                hom_residuals(&psi, 25, &mut r),
                hom_residuals(&lambda, 25, &mut r),
            ] {
                assert!(res.max() < 1e-10, "k = {k}: {res:?}");
            }
        }
    }
}

#[test]
fn zeroing_phi2_breaks_the_third_equation() {
    let (_, _, phi, _, _) = models(1.0, Splitting::linear());
    let broken = ZeroedPhi2::new(phi);
    let res = hom_residuals(&broken, 50, &mut rng(13));
    assert!(res.homo3 > 0.1, "{res:?}");
}

#[test]
fn identity_and_trivial_homomorphisms_are_exact() {
    let mut r = rng(14);
    let pkg = Pkg::new(su2(), 1.0, 4);
    assert_eq!(hom_residuals(&Identity::new(pkg.clone()), 10, &mut r).max(), 0.0);
    let el = El::new(GSpace::new(su2()));
    assert_eq!(hom_residuals(&Beta::new(el.clone()), 5, &mut r).max(), 0.0);
    assert_eq!(hom_residuals(&Gamma::new(el), 5, &mut r).max(), 0.0);
}

#[test]
fn composition_with_identity_and_associativity() {
    let (gk, pkg, phi, psi, lambda) = models(1.3, Splitting::smoothstep());
    let left = compose(Identity::new(gk.clone()), phi.clone()).unwrap();
    let mut r = rng(15);
    for _ in 0..10 {
        let (p, q, h) = (pkg.sample0(&mut r), pkg.sample0(&mut r), pkg.sample1(&mut r));
        assert_eq!(left.phi0(&p), phi.phi0(&p));
        assert_eq!(left.phi1(&h), phi.phi1(&h));
        assert!((left.phi2(&p, &q) - phi.phi2(&p, &q)).abs() < 1e-15);
    }

    let a = compose(psi.clone(), compose(phi.clone(), lambda.clone()).unwrap()).unwrap();
    let b = compose(compose(psi.clone(), phi.clone()).unwrap(), lambda.clone()).unwrap();
    let el = lambda.src().clone();
    for _ in 0..10 {
        let (x, y) = (el.sample0(&mut r), el.sample0(&mut r));
        let (lx, ly) = (lambda.phi0(&x), lambda.phi0(&y));
        let oracle = psi
            .phi2(&phi.phi0(&lx), &phi.phi0(&ly))
            .add(&psi.phi1(&phi.phi2(&lx, &ly)))
            .add(&psi.phi1(&phi.phi1(&lambda.phi2(&x, &y))));
        assert!(a.phi2(&x, &y).sub(&oracle).norm() < 1e-12);
        assert!(b.phi2(&x, &y).sub(&oracle).norm() < 1e-12);
    }
}

#[test]
fn composition_rejects_mismatched_algebras() {
    let (_, _, phi, _, _) = models(1.0, Splitting::linear());
    let other = Gk::new(su2(), 2.0);
    assert!(compose(Identity::new(other), phi).is_err());
}

#[test]
fn equivalence_worked_values() {
    let f = Splitting::smoothstep();
    let (gk, pkg, phi, psi, _) = models(1.0, f.clone());
    let phi_psi = compose(phi.clone(), psi.clone()).unwrap();
    let psi_phi = compose(psi.clone(), phi.clone()).unwrap();
    let mut r = rng(16);
    for _ in 0..10 {
        let (x, y) = (gk.sample0(&mut r), gk.sample0(&mut r));
        assert!(phi_psi.phi0(&x).sub(&x).norm() < 1e-14);
        assert!(phi_psi.phi2(&x, &y).abs() < 1e-13);

        let (p1, p2) = (pkg.sample0(&mut r), pkg.sample0(&mut r));
        let br = LieAlgebra::su2().bracket(&p1.endpoint(), &p2.endpoint()).unwrap();
        let expected = PolyPath::scalar_times(su2(), &f.defect(), &br, PathKind::Loop).unwrap();
        assert!(psi_phi.phi2(&p1, &p2).ell.sub(&expected).norm() < 1e-13);
    }
}

#[test]
fn paper_tau_worked_values() {
    let f = Splitting::smoothstep();
    let (_, pkg, phi, psi, _) = models(1.0, f.clone());
    let tau = paper_tau(phi, psi).unwrap();
    let mut r = rng(17);
    let p = pkg.sample0(&mut r);
    let image = crate::linfty::ChainHomotopy::tau(&tau, &p);
    assert_eq!(image.ell.kind(), PathKind::Loop);
    assert_eq!(image.c, 0.0);
    let xf = PolyPath::scalar_times(su2(), f.poly(), &e(1), PathKind::Based).unwrap();
    assert!(crate::linfty::ChainHomotopy::tau(&tau, &xf).norm() < 1e-15);
}

#[test]
fn homotopies_pass_for_several_splittings_and_levels() {
    let mut r = rng(18);
    for k in [-2.0, 0.0, 1.0, 2.0] {
        for f in [Splitting::linear(), Splitting::smoothstep(), Splitting::random(7, &mut r)] {
            let (_, _, phi, psi, _) = models(k, f);
            let tau = paper_tau(phi, psi).unwrap();
            let res = two_hom_residual(&tau, 20, &mut r);
            assert!(res.max() < 1e-10, "k = {k}: {res:?}");
        }
    }
    let loops = trivial_homotopy(El::new(LoopSpace::new(su2(), 4))).unwrap();
    assert!(two_hom_residual(&loops, 20, &mut r).max() < 1e-13);
}

#[test]
fn wrong_homotopy_direction_is_detected() {
    // τ(x) = -x is a homotopy 1 ⇒ γ∘β, not γ∘β ⇒ 1.
    let el = El::new(GSpace::new(su2()));
    let from = compose(Gamma::new(el.clone()), Beta::new(el.clone())).unwrap();
    let flipped = crate::linfty::Homotopy::new(from, Identity::new(el), |x: &GVector| -x).unwrap();
    assert!(two_hom_residual(&flipped, 10, &mut rng(19)).homotopy0 > 0.1);
}

#[test]
fn whiskering_by_identities_preserves_residuals() {
    let (_, pkg, phi, psi, _) = models(1.0, Splitting::smoothstep());
    let mut r = rng(20);
    let right = whisker_right(paper_tau(phi.clone(), psi.clone()).unwrap(), Identity::new(pkg.clone())).unwrap();
    assert!(two_hom_residual(&right, 20, &mut r).max() < 1e-10);
    let left = whisker_left(Identity::new(pkg.clone()), paper_tau(phi.clone(), psi.clone()).unwrap()).unwrap();
    assert!(two_hom_residual(&left, 20, &mut r).max() < 1e-10);
    // Precomposition with ψ gives a 2-homomorphism ψ∘φ∘ψ ⇒ ψ.
    let through_psi = whisker_right(paper_tau(phi, psi.clone()).unwrap(), psi).unwrap();
    assert!(two_hom_residual(&through_psi, 20, &mut r).max() < 1e-10);
}

#[test]
fn categorical_view_of_strict_models() {
    let mut r = rng(21);
    assert!(categorical_view_check(&Pkg::new(su2(), 1.0, 4), 20, &mut r) < 1e-12);
    assert!(categorical_view_check(&El::new(LoopSpace::new(su2(), 4)), 20, &mut r) < 1e-12);
    assert!(categorical_view_check(&Gk::new(su2(), 1.0), 20, &mut r) < 1e-12);
}

#[test]
fn composing_with_an_identity_morphism() {
    use crate::linfty::Morphism;
    let el = El::new(LoopSpace::new(su2(), 3));
    let mut r = rng(22);
    let f = Morphism::<El<LoopSpace>>::new(el.sample0(&mut r), el.sample1(&mut r));
    let g = f.after(&el, &Morphism::identity(&el, &f.s())).unwrap();
    assert!(g.source.sub(&f.source).norm() == 0.0 && g.arrow.sub(&f.arrow).norm() == 0.0);
    let far = Morphism::<El<LoopSpace>>::new(el.sample0(&mut r), el.sample1(&mut r));
    assert!(far.after(&el, &f).is_err());
}

#[test]
fn equivalence_suite_passes() {
    let report = equivalence_suite(su2(), 1.0, &Splitting::smoothstep(), 4, 20, &mut rng(23)).unwrap();
    assert!(report.max_identity() < 1e-12, "{report:?}");
    assert!(report.max_homotopy() < 1e-10, "{report:?}");
}
