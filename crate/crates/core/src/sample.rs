//! Test inputs: every basis tuple, or seeded random elements of a window.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::finvec::{Idx, Vec1};
use crate::scalar::Scalar;

/// How checks quantify over elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    /// Every tuple of basis vectors (finite algebras).
    Exhaustive,
    /// `trials` seeded random tuples supported in a window.
    Sampled { window: usize, trials: usize, seed: u64 },
}

impl Scope {
    pub fn sampled(window: usize, trials: usize, seed: u64) -> Self {
        Scope::Sampled { window, trials, seed }
    }

    pub fn is_exhaustive(&self) -> bool {
        matches!(self, Scope::Exhaustive)
    }
}

/// Random element with 1 to 3 window basis vectors and coefficients in
/// {−2..2} + {−2..2}i, never zero.
pub fn random_element(rng: &mut ChaCha8Rng, window: &[Idx]) -> Vec1 {
    loop {
        let k = rng.gen_range(1..=3.min(window.len()));
        let support: Vec<Idx> = window.choose_multiple(rng, k).copied().collect();
        let v = Vec1::from_terms(
            support.into_iter().map(|i| (i, Scalar::gaussian(rng.gen_range(-2..=2), rng.gen_range(-2..=2)))),
        );
        if !v.is_zero() {
            return v;
        }
    }
}

/// Tuples of test elements shared by all checks of one run.
#[derive(Clone, Debug)]
pub struct TestInputs {
    pub singles: Vec<Vec1>,
    pub pairs: Vec<(Vec1, Vec1)>,
    pub triples: Vec<(Vec1, Vec1, Vec1)>,
    /// Window the elements are drawn from.
    pub window: Vec<Idx>,
    /// Whether the tuples are every basis tuple of a finite algebra.
    pub exhaustive: bool,
}

impl TestInputs {
    pub fn for_scope(scope: Scope, window: &[Idx]) -> Self {
        match scope {
            Scope::Exhaustive => Self::exhaustive(window),
            Scope::Sampled { trials, seed, .. } => Self::sampled(window, trials, seed),
        }
    }

    pub fn exhaustive(basis: &[Idx]) -> Self {
        let b: Vec<Vec1> = basis.iter().map(|&i| Vec1::basis(i)).collect();
        let pairs: Vec<(Vec1, Vec1)> = b.iter().flat_map(|x| b.iter().map(move |y| (x.clone(), y.clone()))).collect();
        let triples = pairs
            .iter()
            .flat_map(|(x, y)| b.iter().map(move |z| (x.clone(), y.clone(), z.clone())))
            .collect();
        TestInputs { singles: b, pairs, triples, window: basis.to_vec(), exhaustive: true }
    }

    pub fn sampled(window: &[Idx], trials: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let singles = (0..trials).map(|_| random_element(&mut rng, window)).collect();
        let pairs = (0..trials).map(|_| (random_element(&mut rng, window), random_element(&mut rng, window))).collect();
        let triples = (0..trials)
            .map(|_| {
                (random_element(&mut rng, window), random_element(&mut rng, window), random_element(&mut rng, window))
            })
            .collect();
        TestInputs { singles, pairs, triples, window: window.to_vec(), exhaustive: false }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampling_is_deterministic() {
        let w: Vec<Idx> = (0..25).collect();
        let a = TestInputs::sampled(&w, 100, 3);
        let b = TestInputs::sampled(&w, 100, 3);
        assert_eq!(a.triples, b.triples);
        assert_ne!(a.triples, TestInputs::sampled(&w, 100, 4).triples);
    }

    #[test]
    fn samples_stay_in_window() {
        let w: Vec<Idx> = vec![3, 5, 8];
        let t = TestInputs::sampled(&w, 50, 0);
        for x in &t.singles {
            assert!(!x.is_zero() && x.len() <= 3);
            assert!(x.keys().all(|k| w.contains(k)));
        }
    }

    #[test]
    fn exhaustive_counts() {
        let t = TestInputs::exhaustive(&[0, 1, 2]);
        assert_eq!((t.singles.len(), t.pairs.len(), t.triples.len()), (3, 9, 27));
    }
}
