//! Koszul signs, the sign χ(σ) = sgn(σ)·ε(σ), and unshuffle enumeration.
//!
//! Permutations are 0-based: `image[i] = σ(i)`. A permuted word is
//! `x_{σ(0)} ⋯ x_{σ(n-1)}`.

use crate::error::{Error, Result};

/// Degrees of the argument slots of a graded multilinear expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedSignature {
    degrees: Vec<u32>,
}

impl GradedSignature {
    pub fn new(degrees: Vec<u32>) -> Result<Self> {
        if degrees.is_empty() {
            return Err(Error::OutOfRange("graded signature must be non-empty".into()));
        }
        Ok(Self { degrees })
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    /// Degrees read in the order `σ(0), …, σ(n-1)`.
    pub fn permuted(&self, sigma: &Permutation) -> Result<Self> {
        self.check(sigma)?;
        Ok(Self {
            degrees: sigma.image.iter().map(|&i| self.degrees[i]).collect(),
        })
    }

    fn check(&self, sigma: &Permutation) -> Result<()> {
        if self.degrees.len() != sigma.len() {
            return Err(Error::LengthMismatch {
                signature: self.degrees.len(),
                permutation: sigma.len(),
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        let mut hit = vec![false; n];
        for &i in &image {
            if i >= n || hit[i] {
                return Err(Error::InvalidPermutation(format!("{image:?} is not a bijection")));
            }
            hit[i] = true;
        }
        Ok(Self { image })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            image: (0..n).collect(),
        }
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.len() != other.len() {
            return Err(Error::InvalidPermutation("composing permutations of different sizes".into()));
        }
        Ok(Self {
            image: other.image.iter().map(|&i| self.image[i]).collect(),
        })
    }

    pub fn sign(&self) -> i32 {
        let mut inversions = 0usize;
        for a in 0..self.image.len() {
            for b in (a + 1)..self.image.len() {
                if self.image[a] > self.image[b] {
                    inversions += 1;
                }
            }
        }
        if inversions % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

/// Koszul sign ε(σ) defined by `x_0 ∧ ⋯ ∧ x_{n-1} = ε(σ) x_{σ(0)} ∧ ⋯ ∧ x_{σ(n-1)}`
/// in the free graded-commutative algebra.
///
/// The permuted word is bubble-sorted back to the identity; each adjacent
/// swap of slots with degrees `a` and `b` contributes `(-1)^{ab}`.
pub fn koszul_sign(sig: &GradedSignature, sigma: &Permutation) -> Result<i32> {
    sig.check(sigma)?;
    let mut word = sigma.image.clone();
    let mut sign = 1;
    let n = word.len();
    for pass in 0..n {
        let mut swapped = false;
        for i in 0..n - 1 - pass {
            if word[i] > word[i + 1] {
                if sig.degrees[word[i]] % 2 == 1 && sig.degrees[word[i + 1]] % 2 == 1 {
                    sign = -sign;
                }
                word.swap(i, i + 1);
                swapped = true;
            }
        }
        if !swapped {
            break;
        }
    }
    Ok(sign)
}

/// χ(σ) = sgn(σ)·ε(σ).
pub fn chi(sig: &GradedSignature, sigma: &Permutation) -> Result<i32> {
    Ok(sigma.sign() * koszul_sign(sig, sigma)?)
}

/// All `(j, n-j)`-unshuffles: `σ(0) < ⋯ < σ(j-1)` and `σ(j) < ⋯ < σ(n-1)`,
/// in lexicographic order of the first block. `j = n` yields the identity.
pub fn unshuffles(j: usize, n: usize) -> Result<Vec<Permutation>> {
    if n == 0 || j == 0 || j > n {
        return Err(Error::OutOfRange(format!("({j}, {}) unshuffles are undefined", n as i64 - j as i64)));
    }
    let mut out = Vec::new();
    let mut head: Vec<usize> = (0..j).collect();
    loop {
        let mut image = head.clone();
        image.extend((0..n).filter(|i| !head.contains(i)));
        out.push(Permutation { image });
        // next j-combination of 0..n in lexicographic order
        let mut i = j;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if head[i] < n - j + i {
                head[i] += 1;
                for m in (i + 1)..j {
                    head[m] = head[m - 1] + 1;
                }
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sig(d: &[u32]) -> GradedSignature {
        GradedSignature::new(d.to_vec()).unwrap()
    }

    fn perm(p: &[usize]) -> Permutation {
        Permutation::new(p.to_vec()).unwrap()
    }

    #[test]
    fn two_slot_swaps() {
        let swap = perm(&[1, 0]);
        assert_eq!(koszul_sign(&sig(&[1, 1]), &swap).unwrap(), -1);
        assert_eq!(koszul_sign(&sig(&[0, 0]), &swap).unwrap(), 1);
        assert_eq!(chi(&sig(&[1, 1]), &swap).unwrap(), 1);
        assert_eq!(chi(&sig(&[0, 0]), &swap).unwrap(), -1);
        assert_eq!(chi(&sig(&[0, 1]), &swap).unwrap(), -1);
    }

    #[test]
    fn identity_is_positive() {
        for d in [[0, 0, 0], [1, 0, 1], [1, 1, 1], [2, 3, 5]] {
            let s = sig(&d);
            assert_eq!(koszul_sign(&s, &Permutation::identity(3)).unwrap(), 1);
            assert_eq!(chi(&s, &Permutation::identity(3)).unwrap(), 1);
        }
    }

    #[test]
    fn errors() {
        assert!(Permutation::new(vec![0, 0]).is_err());
        assert!(Permutation::new(vec![0, 2]).is_err());
        assert!(matches!(
            koszul_sign(&sig(&[0, 1, 0]), &perm(&[1, 0])),
            Err(Error::LengthMismatch { .. })
        ));
        assert!(GradedSignature::new(vec![]).is_err());
        assert!(unshuffles(0, 3).is_err());
        assert!(unshuffles(4, 3).is_err());
    }

    #[test]
    fn small_unshuffle_lists() {
        let u = unshuffles(1, 2).unwrap();
        assert_eq!(u, vec![perm(&[0, 1]), perm(&[1, 0])]);
        let u = unshuffles(2, 4).unwrap();
        assert_eq!(u.len(), 6);
        assert_eq!(u[0], perm(&[0, 1, 2, 3]));
        assert_eq!(u[5], perm(&[2, 3, 0, 1]));
        assert_eq!(unshuffles(3, 3).unwrap(), vec![Permutation::identity(3)]);
    }

    fn binomial(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn unshuffle_counts_and_monotonicity_exhaustive() {
        for n in 2..=8 {
            for j in 1..n {
                let list = unshuffles(j, n).unwrap();
                assert_eq!(list.len(), binomial(n, j), "n={n} j={j}");
                for s in &list {
                    let im = s.image();
                    assert!(im[..j].windows(2).all(|w| w[0] < w[1]));
                    assert!(im[j..].windows(2).all(|w| w[0] < w[1]));
                }
                let mut sorted = list.clone();
                sorted.sort_by(|a, b| a.image().cmp(b.image()));
                sorted.dedup();
                assert_eq!(sorted.len(), list.len());
            }
        }
    }

    fn arb_perm(n: usize) -> impl Strategy<Value = Permutation> {
        Just((0..n).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(|v| Permutation::new(v).unwrap())
    }

    fn arb_case() -> impl Strategy<Value = (Vec<u32>, Permutation, Permutation)> {
        (1usize..7).prop_flat_map(|n| (prop::collection::vec(0u32..3, n), arb_perm(n), arb_perm(n)))
    }

    proptest! {
        #[test]
        fn koszul_sign_is_multiplicative((d, s, t) in arb_case()) {
            let g = GradedSignature::new(d).unwrap();
            let lhs = koszul_sign(&g, &s.compose(&t).unwrap()).unwrap();
            let rhs = koszul_sign(&g, &s).unwrap() * koszul_sign(&g.permuted(&s).unwrap(), &t).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn parity_extremes((d, s, _t) in arb_case()) {
            let n = d.len();
            let even = GradedSignature::new(vec![0; n]).unwrap();
            let odd = GradedSignature::new(vec![1; n]).unwrap();
            prop_assert_eq!(chi(&even, &s).unwrap(), s.sign());
            prop_assert_eq!(koszul_sign(&odd, &s).unwrap(), s.sign());
            prop_assert_eq!(chi(&odd, &s).unwrap(), 1);
        }
    }
}
