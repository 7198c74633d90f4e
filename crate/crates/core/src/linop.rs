//! Linear operators given by a rule on basis tokens, optionally tabulated.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::finvec::FinVec;

type Rule<K, L> = Arc<dyn Fn(&K) -> FinVec<L> + Send + Sync>;

/// A linear map extended from its values on basis tokens.
pub struct LinOp<K: Ord, L: Ord = K> {
    rule: Rule<K, L>,
    matrix: Option<Arc<BTreeMap<K, FinVec<L>>>>,
}

impl<K: Ord, L: Ord> Clone for LinOp<K, L> {
    fn clone(&self) -> Self {
        LinOp { rule: self.rule.clone(), matrix: self.matrix.clone() }
    }
}

impl<K: Ord, L: Ord> fmt::Debug for LinOp<K, L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinOp(tabulated: {})", self.matrix.as_ref().map_or(0, |m| m.len()))
    }
}

impl<K: Ord + Clone + Send + Sync + 'static, L: Ord + Clone + Send + Sync + 'static> LinOp<K, L> {
    pub fn new(rule: impl Fn(&K) -> FinVec<L> + Send + Sync + 'static) -> Self {
        LinOp { rule: Arc::new(rule), matrix: None }
    }

    pub fn zero() -> Self {
        LinOp::new(|_| FinVec::zero())
    }

    /// Operator defined only through its table; tokens outside map to zero.
    pub fn from_matrix(matrix: BTreeMap<K, FinVec<L>>) -> Self {
        let m = Arc::new(matrix);
        let lookup = m.clone();
        LinOp {
            rule: Arc::new(move |k| lookup.get(k).cloned().unwrap_or_default()),
            matrix: Some(m),
        }
    }

    /// Attach a tabulation of the rule over a window.
    pub fn tabulate(&self, window: &[K]) -> Self {
        let m: BTreeMap<K, FinVec<L>> = window.iter().map(|k| (k.clone(), (self.rule)(k))).collect();
        LinOp { rule: self.rule.clone(), matrix: Some(Arc::new(m)) }
    }

    pub fn matrix(&self) -> Option<&BTreeMap<K, FinVec<L>>> {
        self.matrix.as_deref()
    }

    /// Tokens of the tabulated window where rule and table disagree.
    pub fn disagreements(&self) -> Vec<K> {
        match &self.matrix {
            None => Vec::new(),
            Some(m) => m.iter().filter(|(k, v)| (self.rule)(k) != **v).map(|(k, _)| k.clone()).collect(),
        }
    }

    pub fn apply_basis(&self, k: &K) -> FinVec<L> {
        if let Some(v) = self.matrix.as_ref().and_then(|m| m.get(k)) {
            return v.clone();
        }
        (self.rule)(k)
    }

    pub fn apply(&self, x: &FinVec<K>) -> FinVec<L> {
        x.apply(|k| self.apply_basis(k))
    }

    /// `other ∘ self`.
    pub fn then<M: Ord + Clone + Send + Sync + 'static>(&self, other: &LinOp<L, M>) -> LinOp<K, M> {
        let (a, b) = (self.clone(), other.clone());
        LinOp::new(move |k| b.apply(&a.apply_basis(k)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finvec::Vec1;
    use crate::scalar::Scalar;
    use proptest::prelude::*;

    fn shift() -> LinOp<usize> {
        LinOp::new(|&k| Vec1::basis(k + 1).add(&Vec1::term(k, Scalar::from_int(2))))
    }

    #[test]
    fn tabulation_agrees_with_rule() {
        let op = shift().tabulate(&(0..81).collect::<Vec<_>>());
        assert!(op.disagreements().is_empty());
    }

    #[test]
    fn corrupted_table_is_detected() {
        let mut m = shift().tabulate(&[0, 1, 2]).matrix().unwrap().clone();
        m.insert(1, Vec1::zero());
        let bad = LinOp { rule: shift().rule, matrix: Some(Arc::new(m)) };
        assert_eq!(bad.disagreements(), vec![1]);
    }

    #[test]
    fn composition_applies_in_order() {
        let double = LinOp::<usize>::new(|&k| Vec1::term(k, Scalar::from_int(2)));
        let c = shift().then(&double);
        assert_eq!(c.apply_basis(&0), Vec1::term(1, Scalar::from_int(2)).add(&Vec1::term(0, Scalar::from_int(4))));
    }

    proptest! {
        #[test]
        fn application_is_linear(xs in proptest::collection::vec((0usize..9, -3i64..3), 0..5),
                                 ys in proptest::collection::vec((0usize..9, -3i64..3), 0..5),
                                 a in -3i64..3, b in -3i64..3) {
            let x = Vec1::from_terms(xs.into_iter().map(|(k, c)| (k, Scalar::from_int(c))));
            let y = Vec1::from_terms(ys.into_iter().map(|(k, c)| (k, Scalar::from_int(c))));
            let (a, b) = (Scalar::gaussian(a, 1), Scalar::from_int(b));
            let op = shift();
            let lhs = op.apply(&x.scale(&a).add(&y.scale(&b)));
            let rhs = op.apply(&x).scale(&a).add(&op.apply(&y).scale(&b));
            prop_assert_eq!(lhs, rhs);
        }
    }
}
