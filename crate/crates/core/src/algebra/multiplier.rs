//! Multipliers as pairs of action maps.

use std::fmt;
use std::sync::Arc;

use super::{mul, mul2, AlgRef, Algebra};
use crate::finvec::{FinVec, Idx, Vec1, Vec2};
use crate::linop::LinOp;

/// A (one- or two-sided) multiplier, given by `x ↦ m·x` and `x ↦ x·m`.
pub struct Multiplier<K: Ord> {
    pub left: Option<LinOp<K>>,
    pub right: Option<LinOp<K>>,
}

/// Multiplier of A⊗A.
pub type TensorMultiplier = Multiplier<(Idx, Idx)>;

impl<K: Ord> Clone for Multiplier<K> {
    fn clone(&self) -> Self {
        Multiplier { left: self.left.clone(), right: self.right.clone() }
    }
}

impl<K: Ord> fmt::Debug for Multiplier<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Multiplier(left: {}, right: {})", self.left.is_some(), self.right.is_some())
    }
}

impl<K: Ord + Clone + Send + Sync + 'static> Multiplier<K> {
    pub fn two_sided(left: LinOp<K>, right: LinOp<K>) -> Self {
        Multiplier { left: Some(left), right: Some(right) }
    }

    pub fn left_only(left: LinOp<K>) -> Self {
        Multiplier { left: Some(left), right: None }
    }

    pub fn right_only(right: LinOp<K>) -> Self {
        Multiplier { left: None, right: Some(right) }
    }

    pub fn identity() -> Self {
        Self::two_sided(LinOp::new(|k: &K| FinVec::basis(k.clone())), LinOp::new(|k: &K| FinVec::basis(k.clone())))
    }

    /// `m·x`. Panics on a right-only multiplier.
    pub fn apply_left(&self, x: &FinVec<K>) -> FinVec<K> {
        self.left.as_ref().expect("multiplier has a left action").apply(x)
    }

    /// `x·m`. Panics on a left-only multiplier.
    pub fn apply_right(&self, x: &FinVec<K>) -> FinVec<K> {
        self.right.as_ref().expect("multiplier has a right action").apply(x)
    }

    /// The product `self · other`.
    pub fn compose(&self, other: &Self) -> Self {
        let left = match (&self.left, &other.left) {
            (Some(a), Some(b)) => Some(b.then(a)),
            _ => None,
        };
        // x(mn) = (xm)n
        let right = match (&self.right, &other.right) {
            (Some(a), Some(b)) => Some(a.then(b)),
            _ => None,
        };
        Multiplier { left, right }
    }
}

impl Multiplier<Idx> {
    pub fn from_element(alg: AlgRef, a: Vec1) -> Self {
        let (alg2, a2) = (alg.clone(), a.clone());
        Self::two_sided(
            LinOp::new(move |&j| mul(alg.as_ref(), &a, &Vec1::basis(j))),
            LinOp::new(move |&j| mul(alg2.as_ref(), &Vec1::basis(j), &a2)),
        )
    }

    /// The unit of M(A): identity actions.
    pub fn unit_embed() -> Self {
        Self::identity()
    }
}

impl TensorMultiplier {
    pub fn from_element2(alg: AlgRef, x: Vec2) -> Self {
        let (alg2, x2) = (alg.clone(), x.clone());
        Self::two_sided(
            LinOp::new(move |k: &(Idx, Idx)| mul2(alg.as_ref(), &x, &Vec2::basis(*k))),
            LinOp::new(move |k: &(Idx, Idx)| mul2(alg2.as_ref(), &Vec2::basis(*k), &x2)),
        )
    }
}

/// Which sandwich a kernel multiplier encodes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SandwichSide {
    /// (a⊗1)F(1⊗b) = Σ aF'⊗F''b.
    Inner,
    /// (1⊗b)F(a⊗1) = Σ F'a⊗bF''.
    Outer,
}

type Sandwich = Arc<dyn Fn(Idx, Idx) -> Vec2 + Send + Sync>;

/// A one-sided multiplier of A⊗A^op (or A^op⊗A) known only through its
/// sandwich values.
#[derive(Clone)]
pub struct KernelMultiplier {
    pub side: SandwichSide,
    rule: Sandwich,
}

impl fmt::Debug for KernelMultiplier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "KernelMultiplier({:?})", self.side)
    }
}

impl KernelMultiplier {
    pub fn new(side: SandwichSide, rule: impl Fn(Idx, Idx) -> Vec2 + Send + Sync + 'static) -> Self {
        KernelMultiplier { side, rule: Arc::new(rule) }
    }

    /// Sandwiches of an element F ∈ A⊗A.
    pub fn from_element(alg: AlgRef, side: SandwichSide, f: Vec2) -> Self {
        Self::new(side, move |a, b| {
            let mut out = Vec2::zero();
            for ((p, q), c) in f.iter() {
                let (l, r) = match side {
                    SandwichSide::Inner => (alg.mul_basis(a, *p), alg.mul_basis(*q, b)),
                    SandwichSide::Outer => (alg.mul_basis(*p, a), alg.mul_basis(b, *q)),
                };
                if !l.is_zero() && !r.is_zero() {
                    out.add_scaled(&l.tensor(&r), c);
                }
            }
            out
        })
    }

    pub fn sandwich_basis(&self, a: Idx, b: Idx) -> Vec2 {
        (self.rule)(a, b)
    }

    /// Bilinear extension of the sandwich.
    pub fn sandwich(&self, a: &Vec1, b: &Vec1) -> Vec2 {
        let mut out = Vec2::zero();
        for (i, x) in a.iter() {
            for (j, y) in b.iter() {
                out.add_scaled(&(self.rule)(*i, *j), &(x * y));
            }
        }
        out
    }

    /// The linear operator a⊗b ↦ sandwich(a, b).
    pub fn operator(&self, x: &Vec2) -> Vec2 {
        x.apply(|&(a, b)| (self.rule)(a, b))
    }
}

/// Check `(a·m)·b = a·(m·b)` on the given elements.
pub fn interchange_holds(alg: &dyn Algebra, m: &Multiplier<Idx>, xs: &[Vec1]) -> Option<(Vec1, Vec1)> {
    for a in xs {
        for b in xs {
            let lhs = mul(alg, &m.apply_right(a), b);
            let rhs = mul(alg, a, &m.apply_left(b));
            if lhs != rhs {
                return Some((a.clone(), b.clone()));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::tests::matrices;

    fn basis_vecs(n: usize) -> Vec<Vec1> {
        (0..n).map(Vec1::basis).collect()
    }

    #[test]
    fn from_element_is_an_embedding() {
        let alg: AlgRef = Arc::new(matrices());
        for i in 0..4 {
            for j in 0..4 {
                let prod = Multiplier::from_element(alg.clone(), Vec1::basis(i))
                    .compose(&Multiplier::from_element(alg.clone(), Vec1::basis(j)));
                let direct = Multiplier::from_element(alg.clone(), alg.mul_basis(i, j));
                for k in 0..4 {
                    let x = Vec1::basis(k);
                    assert_eq!(prod.apply_left(&x), direct.apply_left(&x));
                    assert_eq!(prod.apply_right(&x), direct.apply_right(&x));
                }
            }
        }
    }

    #[test]
    fn interchange_law_for_elements() {
        let alg: AlgRef = Arc::new(matrices());
        let m = Multiplier::from_element(alg.clone(), Vec1::basis(1).add(&Vec1::basis(2)));
        assert!(interchange_holds(alg.as_ref(), &m, &basis_vecs(4)).is_none());
    }

    #[test]
    fn unit_acts_trivially() {
        let u = Multiplier::unit_embed();
        let x = Vec1::basis(3);
        assert_eq!(u.apply_left(&x), x);
        assert_eq!(u.apply_right(&x), x);
    }

    #[test]
    fn sandwich_sides() {
        let alg: AlgRef = Arc::new(matrices());
        // F = e12⊗e21
        let f = Vec2::basis((1, 2));
        let inner = KernelMultiplier::from_element(alg.clone(), SandwichSide::Inner, f.clone());
        let outer = KernelMultiplier::from_element(alg.clone(), SandwichSide::Outer, f);
        // (e11⊗1)F(1⊗e11) = e12⊗e21
        assert_eq!(inner.sandwich_basis(0, 0), Vec2::basis((1, 2)));
        // (1⊗e11)F(e11⊗1) = e12e11⊗e11e21 = 0
        assert!(outer.sandwich_basis(0, 0).is_zero());
        // (1⊗e12)F(e21⊗1) = e12e21⊗e12e21 = e11⊗e11
        assert_eq!(outer.sandwich_basis(2, 1), Vec2::basis((0, 0)));
    }
}
