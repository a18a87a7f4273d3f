//! Finite-dimensional real Lie algebras given by structure constants and an
//! invariant symmetric bilinear form.
//!
//! The bracket is `[e_i, e_j] = Σ_k c[i][j][k] e_k`. The form `B` plays the
//! role of `⟨·,·⟩` everywhere downstream (the 3-form ν, the Kac–Moody cocycle,
//! the level-k terms). Its physical normalization is a free scale factor:
//! every identity verified by this crate is homogeneous in `B`.

use std::path::Path;

use nalgebra::{DMatrix, DVector};
use serde::Deserialize;

use crate::error::{Error, Result};

/// Coordinates of an element of 𝔤 in the presentation basis.
pub type GVector = DVector<f64>;

/// Tolerance used when validating presentations read from files.
pub const PRESENTATION_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct LieAlgebra {
    name: String,
    dim: usize,
    /// Flattened `c[i][j][k]` at `(i * dim + j) * dim + k`.
    structure: Vec<f64>,
    form: DMatrix<f64>,
}

impl LieAlgebra {
    /// Builds and validates a presentation.
    pub fn new(
        name: impl Into<String>,
        dim: usize,
        structure: Vec<f64>,
        form: DMatrix<f64>,
    ) -> Result<Self> {
        let alg = Self::new_unchecked(name, dim, structure, form)?;
        alg.validate(PRESENTATION_TOL)?;
        Ok(alg)
    }

    /// Builds a presentation checking only shapes. Used for mutation
    /// controls, where a deliberately broken form is wanted.
    pub fn new_unchecked(
        name: impl Into<String>,
        dim: usize,
        structure: Vec<f64>,
        form: DMatrix<f64>,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidPresentation("dimension must be positive".into()));
        }
        if structure.len() != dim * dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim * dim,
                got: structure.len(),
            });
        }
        if form.nrows() != dim || form.ncols() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: form.nrows().max(form.ncols()),
            });
        }
        Ok(Self {
            name: name.into(),
            dim,
            structure,
            form,
        })
    }

    /// su(2) with cyclic structure constants `[e1,e2] = e3` and `B = I`.
    pub fn su2() -> Self {
        let mut s = vec![0.0; 27];
        for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
            s[(i * 3 + j) * 3 + k] = 1.0;
            s[(j * 3 + i) * 3 + k] = -1.0;
        }
        Self::new("su2", 3, s, DMatrix::identity(3, 3)).expect("bundled su(2) is valid")
    }

    /// so(3) in the basis `E12, E13, E23` of antisymmetric 3×3 matrices, with
    /// the form `-½ tr(XY)`, which is the identity in this basis.
    pub fn so3() -> Self {
        let mut s = vec![0.0; 27];
        let mut set = |i: usize, j: usize, k: usize, v: f64| {
            s[(i * 3 + j) * 3 + k] = v;
            s[(j * 3 + i) * 3 + k] = -v;
        };
        set(0, 1, 2, -1.0); // [E12, E13] = -E23
        set(0, 2, 1, 1.0); // [E12, E23] = E13
        set(1, 2, 0, -1.0); // [E13, E23] = -E12
        Self::new("so3", 3, s, DMatrix::identity(3, 3)).expect("bundled so(3) is valid")
    }

    /// sl(2,ℝ) in the basis `h, e, f` with the trace form, which is
    /// invariant but indefinite.
    pub fn sl2() -> Self {
        let mut s = vec![0.0; 27];
        let mut set = |i: usize, j: usize, k: usize, v: f64| {
            s[(i * 3 + j) * 3 + k] = v;
            s[(j * 3 + i) * 3 + k] = -v;
        };
        set(0, 1, 1, 2.0); // [h, e] = 2e
        set(0, 2, 2, -2.0); // [h, f] = -2f
        set(1, 2, 0, 1.0); // [e, f] = h
        let form = DMatrix::from_row_slice(3, 3, &[2.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 1.0, 0.0]);
        Self::new("sl2", 3, s, form).expect("bundled sl(2) is valid")
    }

    /// `self ⊕ other` with the block-diagonal form.
    pub fn direct_sum(&self, other: &LieAlgebra) -> Self {
        let (a, b) = (self.dim, other.dim);
        let n = a + b;
        let mut s = vec![0.0; n * n * n];
        for i in 0..a {
            for j in 0..a {
                for k in 0..a {
                    s[(i * n + j) * n + k] = self.c(i, j, k);
                }
            }
        }
        for i in 0..b {
            for j in 0..b {
                for k in 0..b {
                    s[((a + i) * n + a + j) * n + a + k] = other.c(i, j, k);
                }
            }
        }
        let mut form = DMatrix::zeros(n, n);
        form.view_mut((0, 0), (a, a)).copy_from(&self.form);
        form.view_mut((a, a), (b, b)).copy_from(&other.form);
        Self {
            name: format!("{}+{}", self.name, other.name),
            dim: n,
            structure: s,
            form,
        }
    }

    /// Looks up a bundled presentation by name.
    pub fn bundled(name: &str) -> Option<Self> {
        match name {
            "su2" => Some(Self::su2()),
            "so3" => Some(Self::so3()),
            "sl2" => Some(Self::sl2()),
            _ => None,
        }
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let file: PresentationFile = serde_json::from_str(text)?;
        file.into_algebra()
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json_str(&text)
    }

    /// Same presentation with `B` multiplied by `scale`.
    pub fn with_form_scale(&self, scale: f64) -> Self {
        Self {
            form: &self.form * scale,
            ..self.clone()
        }
    }

    /// Same structure constants with a different (unvalidated) form.
    pub fn with_form_unchecked(&self, form: DMatrix<f64>) -> Result<Self> {
        Self::new_unchecked(self.name.clone(), self.dim, self.structure.clone(), form)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn form(&self) -> &DMatrix<f64> {
        &self.form
    }

    #[inline]
    pub fn c(&self, i: usize, j: usize, k: usize) -> f64 {
        self.structure[(i * self.dim + j) * self.dim + k]
    }

    pub fn basis(&self, i: usize) -> GVector {
        let mut v = GVector::zeros(self.dim);
        v[i] = 1.0;
        v
    }

    pub fn zero(&self) -> GVector {
        GVector::zeros(self.dim)
    }

    fn check_len(&self, v: &GVector) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: v.len(),
            });
        }
        Ok(())
    }

    pub fn bracket(&self, x: &GVector, y: &GVector) -> Result<GVector> {
        self.check_len(x)?;
        self.check_len(y)?;
        Ok(self.bracket_slices(x.as_slice(), y.as_slice()))
    }

    /// Bracket on raw coordinate slices; lengths must equal `dim`.
    ///
    /// Evaluated as `(S(x, y) - S(y, x)) / 2` with `S` the structure-constant
    /// sum, so that `[y, x] = -[x, y]` holds bit for bit.
    pub(crate) fn bracket_slices(&self, x: &[f64], y: &[f64]) -> GVector {
        (self.structure_sum(x, y) - self.structure_sum(y, x)) * 0.5
    }

    pub(crate) fn structure_sum(&self, x: &[f64], y: &[f64]) -> GVector {
        let n = self.dim;
        let mut out = GVector::zeros(n);
        for i in 0..n {
            if x[i] == 0.0 {
                continue;
            }
            for j in 0..n {
                let xy = x[i] * y[j];
                if xy == 0.0 {
                    continue;
                }
                let base = (i * n + j) * n;
                for k in 0..n {
                    out[k] += xy * self.structure[base + k];
                }
            }
        }
        out
    }

    /// `B(x, y)`.
    pub fn pair(&self, x: &GVector, y: &GVector) -> Result<f64> {
        self.check_len(x)?;
        self.check_len(y)?;
        Ok(x.dot(&(&self.form * y)))
    }

    /// `ν(x, y, z) = B(x, [y, z])`.
    pub fn nu(&self, x: &GVector, y: &GVector, z: &GVector) -> Result<f64> {
        let yz = self.bracket(y, z)?;
        self.pair(x, &yz)
    }

    /// Absolute value of the Chevalley–Eilenberg differential of ν with
    /// trivial coefficients,
    ///
    /// `(dν)(v0, v1, v2, v3) = Σ_{i<j} (-1)^{i+j} ν([v_i, v_j], v_k, v_l)`
    ///
    /// with `k < l` the two remaining indices (0-based positions).
    pub fn ce_three_cocycle_residual(
        &self,
        w: &GVector,
        x: &GVector,
        y: &GVector,
        z: &GVector,
    ) -> Result<f64> {
        Ok(self.ce_three_cocycle_value(w, x, y, z)?.abs())
    }

    /// Signed value of `dν(w, x, y, z)`; see [`Self::ce_three_cocycle_residual`].
    pub fn ce_three_cocycle_value(
        &self,
        w: &GVector,
        x: &GVector,
        y: &GVector,
        z: &GVector,
    ) -> Result<f64> {
        let v = [w, x, y, z];
        let mut total = 0.0;
        for i in 0..4 {
            for j in (i + 1)..4 {
                let rest: Vec<usize> = (0..4).filter(|&m| m != i && m != j).collect();
                let sign = if (i + j) % 2 == 0 { 1.0 } else { -1.0 };
                let b = self.bracket(v[i], v[j])?;
                total += sign * self.nu(&b, v[rest[0]], v[rest[1]])?;
            }
        }
        Ok(total)
    }

    /// Checks antisymmetry, the Jacobi identity, symmetry and invariance of
    /// the form, each to within `tol`.
    pub fn validate(&self, tol: f64) -> Result<()> {
        let n = self.dim;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if (self.c(i, j, k) + self.c(j, i, k)).abs() > tol {
                        return Err(Error::InvalidPresentation(format!(
                            "structure constants not antisymmetric at ({}, {}, {})",
                            i + 1,
                            j + 1,
                            k + 1
                        )));
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    for k in 0..n {
                        let mut s = 0.0;
                        for m in 0..n {
                            s += self.c(i, j, m) * self.c(m, l, k)
                                + self.c(j, l, m) * self.c(m, i, k)
                                + self.c(l, i, m) * self.c(m, j, k);
                        }
                        if s.abs() > tol {
                            return Err(Error::InvalidPresentation(format!(
                                "Jacobi identity fails at ({}, {}, {}; {})",
                                i + 1,
                                j + 1,
                                l + 1,
                                k + 1
                            )));
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if (self.form[(i, j)] - self.form[(j, i)]).abs() > tol {
                    return Err(Error::InvalidPresentation(format!(
                        "form not symmetric at ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        // B([e_i, e_j], e_k) + B(e_j, [e_i, e_k]) = 0
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let mut s = 0.0;
                    for m in 0..n {
                        s += self.c(i, j, m) * self.form[(m, k)]
                            + self.form[(j, m)] * self.c(i, k, m);
                    }
                    if s.abs() > tol {
                        return Err(Error::InvalidPresentation(format!(
                            "form not invariant at ({}, {}, {})",
                            i + 1,
                            j + 1,
                            k + 1
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum FormSpec {
    Nested(Vec<Vec<f64>>),
    Flat(Vec<f64>),
}

#[derive(Debug, Deserialize)]
struct PresentationFile {
    name: String,
    dim: usize,
    structure: Vec<(usize, usize, usize, f64)>,
    #[serde(default)]
    form: Option<FormSpec>,
}

impl PresentationFile {
    fn into_algebra(self) -> Result<LieAlgebra> {
        let n = self.dim;
        if n == 0 {
            return Err(Error::InvalidPresentation("dimension must be positive".into()));
        }
        let mut s = vec![0.0; n * n * n];
        let mut seen = vec![false; n * n * n];
        for &(i, j, k, v) in &self.structure {
            if !(1..=n).contains(&i) || !(1..=n).contains(&j) || !(1..=n).contains(&k) {
                return Err(Error::InvalidPresentation(format!(
                    "structure entry ({i}, {j}, {k}) outside 1..={n}"
                )));
            }
            let (i, j, k) = (i - 1, j - 1, k - 1);
            if i == j {
                if v != 0.0 {
                    return Err(Error::InvalidPresentation(format!(
                        "nonzero diagonal structure constant c[{0}][{0}][{1}]",
                        i + 1,
                        k + 1
                    )));
                }
                continue;
            }
            let a = (i * n + j) * n + k;
            let b = (j * n + i) * n + k;
            if seen[a] && (s[a] - v).abs() > PRESENTATION_TOL {
                return Err(Error::InvalidPresentation(format!(
                    "conflicting entries for c[{}][{}][{}]",
                    i + 1,
                    j + 1,
                    k + 1
                )));
            }
            s[a] = v;
            s[b] = -v;
            seen[a] = true;
            seen[b] = true;
        }
        let form = match self.form {
            None => DMatrix::identity(n, n),
            Some(FormSpec::Nested(rows)) => {
                if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                    return Err(Error::InvalidPresentation(format!("form must be {n}×{n}")));
                }
                DMatrix::from_fn(n, n, |r, c| rows[r][c])
            }
            Some(FormSpec::Flat(vals)) => {
                if vals.len() != n * n {
                    return Err(Error::InvalidPresentation(format!(
                        "form must have {} entries",
                        n * n
                    )));
                }
                DMatrix::from_row_slice(n, n, &vals)
            }
        };
        let form = (&form + form.transpose()) * 0.5;
        LieAlgebra::new(self.name, n, s, form)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn v(a: &[f64]) -> GVector {
        GVector::from_column_slice(a)
    }

    fn random_vec(rng: &mut ChaCha8Rng, n: usize) -> GVector {
        GVector::from_fn(n, |_, _| rng.random_range(-1.0..1.0))
    }

    #[test]
    fn su2_bracket_table() {
        let g = LieAlgebra::su2();
        let e = |i| g.basis(i);
        assert_eq!(g.bracket(&e(0), &e(1)).unwrap(), e(2));
        assert_eq!(g.bracket(&(e(0) + e(1)), &e(1)).unwrap(), e(2));
        let x = v(&[0.3, -1.2, 2.0]);
        assert_eq!(g.bracket(&x, &x).unwrap(), g.zero());
    }

    #[test]
    fn nu_values() {
        let g = LieAlgebra::su2();
        let e = |i| g.basis(i);
        assert_eq!(g.nu(&e(0), &e(1), &e(2)).unwrap(), 1.0);
        assert_eq!(g.nu(&e(0), &e(2), &e(1)).unwrap(), -1.0);
        let x = v(&[0.5, 0.25, -1.0]);
        assert_eq!(g.nu(&x, &x, &e(2)).unwrap(), 0.0);
    }

    #[test]
    fn bundled_presentations_validate_exactly() {
        for g in [LieAlgebra::su2(), LieAlgebra::so3(), LieAlgebra::sl2()] {
            g.validate(0.0).unwrap();
        }
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        let g = LieAlgebra::su2();
        let err = g.bracket(&v(&[1.0, 0.0]), &g.basis(0)).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { expected: 3, got: 2 }));
        assert!(g.nu(&g.basis(0), &g.basis(1), &v(&[1.0])).is_err());
    }

    #[test]
    fn form_on_brackets_is_totally_antisymmetric() {
        for g in [LieAlgebra::su2(), LieAlgebra::so3(), LieAlgebra::sl2()] {
            let n = g.dim();
            let t = |i, j, k| g.pair(&g.bracket(&g.basis(i), &g.basis(j)).unwrap(), &g.basis(k)).unwrap();
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        assert_eq!(t(i, j, k), -t(j, i, k));
                        assert_eq!(t(i, j, k), t(j, k, i));
                    }
                }
            }
        }
    }

    /// Independent oracle: `dν = -¼ Σ_{σ ∈ S4} sgn(σ) ν([v_σ0, v_σ1], v_σ2, v_σ3)`,
    /// enumerating all 24 permutations with a brute-force inversion count.
    fn ce_oracle(g: &LieAlgebra, v: [&GVector; 4]) -> f64 {
        let mut total = 0.0;
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    for d in 0..4 {
                        let p = [a, b, c, d];
                        let mut distinct = true;
                        for i in 0..4 {
                            for j in (i + 1)..4 {
                                distinct &= p[i] != p[j];
                            }
                        }
                        if !distinct {
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
                        let br = g.bracket(v[a], v[b]).unwrap();
                        total += sgn * g.nu(&br, v[c], v[d]).unwrap();
                    }
                }
            }
        }
        -0.25 * total
    }

    #[test]
    fn ce_residual_vanishes_for_invariant_forms() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for g in [LieAlgebra::su2(), LieAlgebra::sl2()] {
            for _ in 0..100 {
                let q: Vec<GVector> = (0..4).map(|_| random_vec(&mut rng, 3)).collect();
                let r = g.ce_three_cocycle_residual(&q[0], &q[1], &q[2], &q[3]).unwrap();
                assert!(r <= 1e-12, "residual {r}");
                assert!(ce_oracle(&g, [&q[0], &q[1], &q[2], &q[3]]).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn ce_residual_zero_for_repeated_argument() {
        let g = LieAlgebra::su2();
        let bad = g
            .with_form_unchecked(DMatrix::from_row_slice(3, 3, &[1.0, 0.3, 0.0, 0.3, 2.0, 0.1, 0.0, 0.1, 0.5]))
            .unwrap();
        let w = v(&[0.2, -0.7, 1.1]);
        let y = v(&[1.0, 0.5, 0.0]);
        let z = v(&[-0.4, 0.0, 0.9]);
        assert_eq!(bad.ce_three_cocycle_residual(&w, &w, &y, &z).unwrap(), 0.0);
    }

    #[test]
    fn ce_residual_detects_non_invariant_form() {
        // Alternating 4-forms vanish in dimension 3, so use su(2) ⊕ su(2).
        let g = LieAlgebra::su2().direct_sum(&LieAlgebra::su2());
        let mut form = g.form().clone();
        form[(0, 3)] = 0.4;
        form[(3, 0)] = 0.4;
        form[(1, 1)] = 2.0;
        let bad = g.with_form_unchecked(form).unwrap();
        assert!(bad.validate(1e-12).is_err());
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut worst: f64 = 0.0;
        for _ in 0..20 {
            let q: Vec<GVector> = (0..4).map(|_| random_vec(&mut rng, 6)).collect();
            let signed = bad.ce_three_cocycle_value(&q[0], &q[1], &q[2], &q[3]).unwrap();
            let oracle = ce_oracle(&bad, [&q[0], &q[1], &q[2], &q[3]]);
            assert!((signed - oracle).abs() < 1e-12);
            worst = worst.max(signed.abs());
        }
        assert!(worst > 1e-3);
    }

    #[test]
    fn loader_antisymmetrizes_and_defaults_form() {
        let text = r#"{"name":"su2-file","dim":3,"structure":[[1,2,3,1],[2,3,1,1],[1,3,2,-1]]}"#;
        let g = LieAlgebra::from_json_str(text).unwrap();
        let su2 = LieAlgebra::su2();
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    assert_eq!(g.c(i, j, k), su2.c(i, j, k));
                }
            }
        }
        assert_eq!(g.form(), &DMatrix::identity(3, 3));
    }

    #[test]
    fn loader_rejects_broken_tables() {
        // Heisenberg-like table with a non-invariant identity form.
        let text = r#"{"name":"heis","dim":3,"structure":[[1,2,3,1]]}"#;
        assert!(LieAlgebra::from_json_str(text).is_err());
        let text = r#"{"name":"bad","dim":2,"structure":[[1,3,1,1]]}"#;
        assert!(LieAlgebra::from_json_str(text).is_err());
        let text = r#"{"name":"sl2","dim":3,"structure":[[1,2,2,2],[1,3,3,-2],[2,3,1,1]],
                      "form":[2,0,0,0,0,1,0,1,0]}"#;
        assert_eq!(LieAlgebra::from_json_str(text).unwrap().form(), LieAlgebra::sl2().form());
    }
}

#[cfg(test)]
mod props {
    use proptest::prelude::*;

    use super::*;

    fn vec3() -> impl Strategy<Value = GVector> {
        proptest::array::uniform3(-1e3f64..1e3).prop_map(|a| GVector::from_column_slice(&a))
    }

    proptest! {
        #[test]
        fn bracket_is_exactly_antisymmetric(x in vec3(), y in vec3(), which in 0usize..3) {
            let g = [LieAlgebra::su2(), LieAlgebra::so3(), LieAlgebra::sl2()][which].clone();
            prop_assert_eq!(g.bracket(&y, &x).unwrap(), -g.bracket(&x, &y).unwrap());
        }
    }
}
