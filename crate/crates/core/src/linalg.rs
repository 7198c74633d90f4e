//! Exact sparse Gaussian elimination.
//!
//! Every row of an [`Echelon`] has its smallest key as pivot with coefficient 1,
//! and no two rows share a pivot. Reduction therefore walks keys in increasing
//! order and never revisits a key.

use std::collections::BTreeMap;
use std::ops::Bound;

use crate::error::{Error, Result};
use crate::finvec::FinVec;
use crate::scalar::Scalar;

#[derive(Clone, Debug)]
struct Row<K: Ord> {
    v: FinVec<K>,
    /// The row as a combination of inserted generator ids.
    prov: FinVec<usize>,
}

/// Row echelon form of a growing set of vectors.
#[derive(Clone, Debug)]
pub struct Echelon<K: Ord> {
    rows: BTreeMap<K, Row<K>>,
    track: bool,
}

impl<K: Ord + Clone> Default for Echelon<K> {
    fn default() -> Self {
        Echelon { rows: BTreeMap::new(), track: false }
    }
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new() -> Self {
        Self::default()
    }

    /// An echelon that remembers how each row was built from the inserted
    /// generators, enabling [`Echelon::factor`].
    pub fn with_provenance() -> Self {
        Echelon { rows: BTreeMap::new(), track: true }
    }

    pub fn from_vectors<'a, I>(vs: I) -> Self
    where
        I: IntoIterator<Item = &'a FinVec<K>>,
        K: 'a,
    {
        let mut e = Self::new();
        for v in vs {
            e.insert(v.clone());
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = &K> {
        self.rows.keys()
    }

    pub fn basis(&self) -> Vec<FinVec<K>> {
        self.rows.values().map(|r| r.v.clone()).collect()
    }

    fn reduce_inner(&self, v: &FinVec<K>) -> (FinVec<K>, FinVec<usize>) {
        let mut v = v.clone();
        let mut comb = FinVec::zero();
        let mut cursor: Bound<K> = Bound::Unbounded;
        loop {
            let next = v.entries().range((cursor.clone(), Bound::Unbounded)).next();
            let Some((k, c)) = next else { break };
            let (k, c) = (k.clone(), c.clone());
            if let Some(row) = self.rows.get(&k) {
                v.add_scaled(&row.v, &-&c);
                if self.track {
                    comb.add_scaled(&row.prov, &c);
                }
            }
            cursor = Bound::Excluded(k);
        }
        (v, comb)
    }

    /// Residual of `v` modulo the span.
    pub fn reduce(&self, v: &FinVec<K>) -> FinVec<K> {
        self.reduce_inner(v).0
    }

    pub fn contains(&self, v: &FinVec<K>) -> bool {
        self.reduce(v).is_zero()
    }

    /// Insert a vector; returns whether it enlarged the span.
    pub fn insert(&mut self, v: FinVec<K>) -> bool {
        let id = self.rows.len();
        self.insert_tracked(v, id)
    }

    /// Insert a vector labelled with a generator id for provenance.
    pub fn insert_tracked(&mut self, v: FinVec<K>, id: usize) -> bool {
        let (r, comb) = self.reduce_inner(&v);
        let Some((k, c)) = r.first() else { return false };
        let k = k.clone();
        let inv = c.inv().expect("leading coefficient is nonzero");
        let prov = if self.track {
            let mut p = FinVec::basis(id);
            p.add_scaled(&comb, &Scalar::from_int(-1));
            p.scale(&inv)
        } else {
            FinVec::zero()
        };
        self.rows.insert(k, Row { v: r.scale(&inv), prov });
        true
    }

    /// Express `v` as a combination of inserted generators, if it lies in the
    /// span. Requires provenance tracking.
    pub fn factor(&self, v: &FinVec<K>) -> Option<FinVec<usize>> {
        debug_assert!(self.track, "factor needs provenance tracking");
        let (r, comb) = self.reduce_inner(v);
        r.is_zero().then_some(comb)
    }

    /// Bring the rows to reduced form: every pivot key appears in exactly one row.
    pub fn rref(&mut self) {
        let keys: Vec<K> = self.rows.keys().rev().cloned().collect();
        for p in keys {
            let row = self.rows[&p].clone();
            let hits: Vec<(K, Scalar)> = row
                .v
                .iter()
                .filter(|(k, _)| **k != p && self.rows.contains_key(*k))
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect();
            if hits.is_empty() {
                continue;
            }
            let mut new = row;
            for (k, c) in hits {
                let other = &self.rows[&k];
                new.v.add_scaled(&other.v, &-&c);
                if self.track {
                    new.prov.add_scaled(&other.prov, &-&c);
                }
            }
            self.rows.insert(p, new);
        }
    }

    /// Basis of `{x : ⟨row, x⟩ = 0 for every row}` inside the coordinate set
    /// `universe`, using the bilinear pairing Σ_k row_k x_k.
    pub fn nullspace(&self, universe: &[K]) -> Vec<FinVec<K>> {
        let mut red = self.clone();
        red.rref();
        let mut out = Vec::new();
        for f in universe {
            if red.rows.contains_key(f) {
                continue;
            }
            let mut x = FinVec::basis(f.clone());
            for (p, row) in &red.rows {
                let c = row.v.get(f);
                if !c.is_zero() {
                    x.add_term(p.clone(), -c);
                }
            }
            out.push(x);
        }
        out
    }
}

pub fn rank<'a, K: Ord + Clone + 'a>(vs: impl IntoIterator<Item = &'a FinVec<K>>) -> usize {
    Echelon::from_vectors(vs).rank()
}

pub fn in_span<K: Ord + Clone>(v: &FinVec<K>, span: &[FinVec<K>]) -> bool {
    Echelon::from_vectors(span).contains(v)
}

/// Exact equality of two spans.
pub fn span_equal<K: Ord + Clone>(u: &[FinVec<K>], v: &[FinVec<K>]) -> bool {
    let eu = Echelon::from_vectors(u);
    let ev = Echelon::from_vectors(v);
    eu.rank() == ev.rank() && v.iter().all(|x| eu.contains(x))
}

/// First vector of `v` outside span(u), if any.
pub fn span_excess<K: Ord + Clone>(u: &Echelon<K>, v: &[FinVec<K>]) -> Option<FinVec<K>> {
    v.iter().find(|x| !u.contains(x)).cloned()
}

/// Solution set `{x₀ + Σ tᵢ nᵢ}` of a linear system.
#[derive(Clone, Debug)]
pub struct Solution {
    pub particular: FinVec<usize>,
    pub nullspace: Vec<FinVec<usize>>,
}

impl Solution {
    pub fn is_unique(&self) -> bool {
        self.nullspace.is_empty()
    }
}

/// Linear equations `Σ_j a_j x_j = rhs` in unknowns `0..unknowns`.
#[derive(Clone, Debug)]
pub struct LinearSystem {
    unknowns: usize,
    rows: Echelon<usize>,
    inconsistent: Option<usize>,
    count: usize,
}

const RHS: usize = usize::MAX;

impl LinearSystem {
    pub fn new(unknowns: usize) -> Self {
        LinearSystem { unknowns, rows: Echelon::new(), inconsistent: None, count: 0 }
    }

    pub fn unknowns(&self) -> usize {
        self.unknowns
    }

    pub fn equations(&self) -> usize {
        self.count
    }

    pub fn add_equation(&mut self, lhs: &FinVec<usize>, rhs: &Scalar) {
        debug_assert!(lhs.keys().all(|&k| k < self.unknowns));
        let id = self.count;
        self.count += 1;
        let mut row = lhs.clone();
        row.add_term(RHS, -rhs);
        let residual = self.rows.reduce(&row);
        if let Some((k, _)) = residual.first() {
            if *k == RHS && self.inconsistent.is_none() {
                self.inconsistent = Some(id);
            }
        }
        self.rows.insert(residual);
    }

    /// Rank of the coefficient matrix (excluding the right-hand side).
    pub fn rank(&self) -> usize {
        self.rows.pivots().filter(|&&k| k != RHS).count()
    }

    pub fn solve(&self) -> Result<Solution> {
        if let Some(id) = self.inconsistent {
            return Err(Error::InconsistentSystem { certificate: format!("equation #{id}") });
        }
        let mut red = self.rows.clone();
        red.rref();
        let mut particular = FinVec::zero();
        for p in red.pivots() {
            let row = &red.rows[p];
            let c = row.v.get(&RHS);
            particular.add_term(*p, -c);
        }
        let universe: Vec<usize> = (0..self.unknowns).collect();
        let nullspace = red.nullspace(&universe);
        Ok(Solution { particular, nullspace })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn v(terms: &[(usize, i64)]) -> FinVec<usize> {
        FinVec::from_terms(terms.iter().map(|&(k, c)| (k, Scalar::from_int(c))))
    }

    #[test]
    fn rank_of_identity() {
        assert_eq!(rank(&[v(&[(0, 1)]), v(&[(1, 1)])]), 2);
    }

    #[test]
    fn membership_by_difference() {
        let span = [v(&[(0, 1), (1, 1)]), v(&[(1, 1)])];
        assert!(in_span(&v(&[(0, 1)]), &span));
        assert!(!in_span(&v(&[(2, 1)]), &span));
    }

    #[test]
    fn factor_reconstructs_the_vector() {
        let gens = [v(&[(0, 1), (1, 2)]), v(&[(1, 1), (2, 1)]), v(&[(0, 1), (1, 3), (2, 1)])];
        let mut e = Echelon::with_provenance();
        for (i, g) in gens.iter().enumerate() {
            e.insert_tracked(g.clone(), i);
        }
        assert_eq!(e.rank(), 2);
        let target = v(&[(0, 2), (1, 5), (2, 1)]);
        let comb = e.factor(&target).unwrap();
        let mut rebuilt = FinVec::zero();
        for (i, c) in comb.iter() {
            rebuilt.add_scaled(&gens[*i], c);
        }
        assert_eq!(rebuilt, target);
        assert!(e.factor(&v(&[(0, 1)])).is_none());
    }

    #[test]
    fn linear_system_unique_solution() {
        let mut sys = LinearSystem::new(2);
        sys.add_equation(&v(&[(0, 1), (1, 1)]), &Scalar::from_int(3));
        sys.add_equation(&v(&[(0, 1), (1, -1)]), &Scalar::from_int(1));
        let sol = sys.solve().unwrap();
        assert!(sol.is_unique());
        assert_eq!(sol.particular, v(&[(0, 2), (1, 1)]));
    }

    #[test]
    fn linear_system_inconsistent() {
        let mut sys = LinearSystem::new(1);
        sys.add_equation(&v(&[(0, 1)]), &Scalar::from_int(1));
        sys.add_equation(&v(&[(0, 2)]), &Scalar::from_int(3));
        assert!(matches!(sys.solve(), Err(Error::InconsistentSystem { .. })));
    }

    #[test]
    fn linear_system_with_free_variables() {
        let mut sys = LinearSystem::new(3);
        sys.add_equation(&v(&[(0, 1), (2, 1)]), &Scalar::from_int(1));
        let sol = sys.solve().unwrap();
        assert_eq!(sol.nullspace.len(), 2);
        for n in &sol.nullspace {
            assert!((&n.get(&0) + &n.get(&2)).is_zero());
        }
    }

    #[test]
    fn nullspace_is_annihilator() {
        let e = Echelon::from_vectors(&[v(&[(0, 1), (1, 1)]), v(&[(1, 1), (3, 2)])]);
        let ns = e.nullspace(&[0, 1, 2, 3]);
        assert_eq!(ns.len(), 2);
        for x in &ns {
            for row in e.basis() {
                assert!(row.pair_with(|k| x.get(k)).is_zero());
            }
        }
    }

    fn random_subspace(rng: &mut ChaCha8Rng, dim: usize) -> Vec<FinVec<usize>> {
        (0..dim)
            .map(|_| {
                FinVec::from_terms((0..3).map(|_| {
                    (rng.gen_range(0..10), Scalar::gaussian(rng.gen_range(-2..=2), rng.gen_range(-2..=2)))
                }))
            })
            .collect()
    }

    /// Span equality agrees with double-inclusion membership testing.
    #[test]
    fn span_equality_matches_double_inclusion() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut equal_seen = 0;
        for trial in 0..100 {
            let d = rng.gen_range(0..=8);
            let u = random_subspace(&mut rng, d);
            let w: Vec<_> = if trial % 2 == 0 {
                // Same span via invertible recombination.
                let mut w = u.clone();
                for i in 1..w.len() {
                    let prev = w[i - 1].clone();
                    w[i].add_scaled(&prev, &Scalar::gaussian(1, 1));
                }
                w.reverse();
                w
            } else {
                let d2 = rng.gen_range(0..=8);
                random_subspace(&mut rng, d2)
            };
            let inclusion = w.iter().all(|x| in_span(x, &u)) && u.iter().all(|x| in_span(x, &w));
            assert_eq!(span_equal(&u, &w), inclusion);
            equal_seen += inclusion as usize;
        }
        assert!(equal_seen >= 50);
    }

    proptest! {
        #[test]
        fn rank_is_order_independent(seed in 0u64..1000) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut u = random_subspace(&mut rng, 6);
            let r1 = rank(&u);
            u.reverse();
            prop_assert_eq!(r1, rank(&u));
        }

        #[test]
        fn solutions_satisfy_every_equation(seed in 0u64..1000) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let rows = random_subspace(&mut rng, 5);
            let x: FinVec<usize> = FinVec::from_terms((0..10).map(|k| (k, Scalar::from_int(rng.gen_range(-3..=3)))));
            let mut sys = LinearSystem::new(10);
            for r in &rows {
                sys.add_equation(r, &r.pair_with(|k| x.get(k)));
            }
            let sol = sys.solve().unwrap();
            for r in &rows {
                let rhs = r.pair_with(|k| x.get(k));
                prop_assert_eq!(r.pair_with(|k| sol.particular.get(k)), rhs);
                for n in &sol.nullspace {
                    prop_assert!(r.pair_with(|k| n.get(k)).is_zero());
                }
            }
        }
    }
}
