//! Finite-support vectors keyed by ordered basis tokens.

use std::collections::BTreeMap;
use std::fmt;

use crate::scalar::Scalar;

/// Basis index of a based algebra.
pub type Idx = usize;
/// Element of A.
pub type Vec1 = FinVec<Idx>;
/// Element of A⊗A, keyed by ordered pairs of basis indices.
pub type Vec2 = FinVec<(Idx, Idx)>;
/// Element of A⊗A⊗A.
pub type Vec3 = FinVec<(Idx, Idx, Idx)>;

/// Sparse vector. No stored coefficient is zero, so structural equality is
/// mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FinVec<K: Ord> {
    entries: BTreeMap<K, Scalar>,
}

impl<K: Ord> Default for FinVec<K> {
    fn default() -> Self {
        FinVec { entries: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> FinVec<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(k: K) -> Self {
        Self::term(k, Scalar::one())
    }

    pub fn term(k: K, c: Scalar) -> Self {
        let mut v = Self::zero();
        v.add_term(k, c);
        v
    }

    pub fn from_terms<I: IntoIterator<Item = (K, Scalar)>>(terms: I) -> Self {
        let mut v = Self::zero();
        for (k, c) in terms {
            v.add_term(k, c);
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, k: &K) -> Scalar {
        self.entries.get(k).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Scalar)> {
        self.entries.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.entries.keys()
    }

    pub fn first(&self) -> Option<(&K, &Scalar)> {
        self.entries.iter().next()
    }

    pub(crate) fn entries(&self) -> &BTreeMap<K, Scalar> {
        &self.entries
    }

    pub fn add_term(&mut self, k: K, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.entries.entry(k) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, other: &FinVec<K>, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (k, v) in &other.entries {
            self.add_term(k.clone(), v * c);
        }
    }

    pub fn add(&self, other: &FinVec<K>) -> FinVec<K> {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::one());
        out
    }

    pub fn sub(&self, other: &FinVec<K>) -> FinVec<K> {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::from_int(-1));
        out
    }

    pub fn scale(&self, c: &Scalar) -> FinVec<K> {
        if c.is_zero() {
            return Self::zero();
        }
        FinVec { entries: self.entries.iter().map(|(k, v)| (k.clone(), v * c)).collect() }
    }

    pub fn neg(&self) -> FinVec<K> {
        self.scale(&Scalar::from_int(-1))
    }

    /// Coefficientwise conjugation (conjugate-linear).
    pub fn conj(&self) -> FinVec<K> {
        FinVec { entries: self.entries.iter().map(|(k, v)| (k.clone(), v.conj())).collect() }
    }

    /// Extend a rule on basis tokens linearly.
    pub fn apply<L: Ord + Clone>(&self, mut f: impl FnMut(&K) -> FinVec<L>) -> FinVec<L> {
        let mut out = FinVec::zero();
        for (k, c) in &self.entries {
            out.add_scaled(&f(k), c);
        }
        out
    }

    /// Extend a rule on basis tokens conjugate-linearly.
    pub fn apply_conj<L: Ord + Clone>(&self, mut f: impl FnMut(&K) -> FinVec<L>) -> FinVec<L> {
        let mut out = FinVec::zero();
        for (k, c) in &self.entries {
            out.add_scaled(&f(k), &c.conj());
        }
        out
    }

    /// Linear functional given by a rule on basis tokens.
    pub fn pair_with(&self, mut f: impl FnMut(&K) -> Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for (k, c) in &self.entries {
            let v = f(k);
            if !v.is_zero() {
                acc += &(c * &v);
            }
        }
        acc
    }

    /// Relabel keys injectively.
    pub fn map_keys<L: Ord + Clone>(&self, mut f: impl FnMut(&K) -> L) -> FinVec<L> {
        FinVec::from_terms(self.entries.iter().map(|(k, c)| (f(k), c.clone())))
    }

    pub fn tensor<L: Ord + Clone>(&self, other: &FinVec<L>) -> FinVec<(K, L)> {
        let mut out = FinVec::zero();
        for (k, c) in &self.entries {
            for (l, d) in &other.entries {
                out.entries.insert((k.clone(), l.clone()), c * d);
            }
        }
        out
    }
}

impl FinVec<(Idx, Idx)> {
    /// The flip σ(a⊗b) = b⊗a.
    pub fn flip(&self) -> Vec2 {
        self.map_keys(|&(a, b)| (b, a))
    }
}

impl<K: Ord + fmt::Debug> fmt::Debug for FinVec<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return f.write_str("0");
        }
        for (n, (k, c)) in self.entries.iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})·{k:?}")?;
        }
        Ok(())
    }
}

/// Pure tensor of two basis tokens.
pub fn tensor(v: &Vec1, w: &Vec1) -> Vec2 {
    v.tensor(w)
}

pub fn tensor3(u: &Vec1, v: &Vec1, w: &Vec1) -> Vec3 {
    let mut out = Vec3::zero();
    for (a, x) in u.iter() {
        for (b, y) in v.iter() {
            let xy = x * y;
            for (c, z) in w.iter() {
                out.add_term((*a, *b, *c), &xy * z);
            }
        }
    }
    out
}

/// Leg split of a three-fold tensor as (first leg, rest).
pub fn split_first(x: &Vec3) -> FinVec<(Idx, (Idx, Idx))> {
    x.map_keys(|&(a, b, c)| (a, (b, c)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn d(i: Idx) -> Vec1 {
        Vec1::basis(i)
    }

    #[test]
    fn tensor_of_basis_vectors() {
        assert_eq!(tensor(&d(1), &d(2)), Vec2::basis((1, 2)));
    }

    #[test]
    fn tensor_with_zero_is_zero() {
        assert!(tensor(&Vec1::zero(), &d(3)).is_zero());
    }

    #[test]
    fn tensor_is_additive_in_first_slot() {
        let lhs = tensor(&d(0).add(&d(1)), &d(2));
        assert_eq!(lhs, Vec2::basis((0, 2)).add(&Vec2::basis((1, 2))));
    }

    #[test]
    fn cancellation_removes_the_entry() {
        let mut v = d(4);
        v.add_term(4, Scalar::from_int(-1));
        assert!(v.is_zero());
        assert_eq!(v.len(), 0);
    }

    fn vec1() -> impl Strategy<Value = Vec1> {
        proptest::collection::vec((0usize..6, -3i64..3, -3i64..3), 0..6).prop_map(|ts| {
            Vec1::from_terms(ts.into_iter().map(|(k, a, b)| (k, Scalar::gaussian(a, b))))
        })
    }

    proptest! {
        #[test]
        fn no_stored_zeros(v in vec1(), w in vec1()) {
            let s = v.add(&w).sub(&v);
            prop_assert!(s.iter().all(|(_, c)| !c.is_zero()));
            prop_assert_eq!(s, w);
        }

        #[test]
        fn tensor_is_bilinear(u in vec1(), v in vec1(), w in vec1(), a in -3i64..3) {
            let c = Scalar::from_int(a);
            let lhs = tensor(&u.scale(&c).add(&v), &w);
            let rhs = tensor(&u, &w).scale(&c).add(&tensor(&v, &w));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn flip_is_involutive(u in vec1(), v in vec1()) {
            let x = tensor(&u, &v);
            prop_assert_eq!(x.flip().flip(), x.clone());
            prop_assert_eq!(x.flip(), tensor(&v, &u));
        }
    }
}
