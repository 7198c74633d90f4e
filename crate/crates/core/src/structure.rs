//! A candidate weak multiplier Hopf algebra: algebra, coproduct and every
//! derived datum, each given by its action on basis vectors.

use std::fmt;
use std::sync::Arc;

use crate::algebra::{mul, AlgRef, Algebra};
use crate::coproduct::CopRef;
use crate::finvec::{Idx, Vec1, Vec2};
use crate::scalar::Scalar;

pub type Op1 = Arc<dyn Fn(Idx) -> Vec1 + Send + Sync>;
pub type Op2 = Arc<dyn Fn(Idx, Idx) -> Vec2 + Send + Sync>;
pub type Bilinear = Arc<dyn Fn(Idx, Idx) -> Vec1 + Send + Sync>;
pub type Functional = Arc<dyn Fn(Idx) -> Scalar + Send + Sync>;

/// Apply a basis map linearly.
pub fn apply1(op: &Op1, v: &Vec1) -> Vec1 {
    v.apply(|&i| op(i))
}

pub fn apply2(op: &Op2, x: &Vec2) -> Vec2 {
    x.apply(|&(a, b)| op(a, b))
}

/// Bilinear extension of a rule on pairs of basis vectors.
pub fn bilinear1(op: &Bilinear, a: &Vec1, b: &Vec1) -> Vec1 {
    let mut out = Vec1::zero();
    for (i, x) in a.iter() {
        for (j, y) in b.iter() {
            out.add_scaled(&op(*i, *j), &(x * y));
        }
    }
    out
}

pub fn bilinear2(op: &Op2, a: &Vec1, b: &Vec1) -> Vec2 {
    let mut out = Vec2::zero();
    for (i, x) in a.iter() {
        for (j, y) in b.iter() {
            out.add_scaled(&op(*i, *j), &(x * y));
        }
    }
    out
}

pub fn eval(eps: &Functional, v: &Vec1) -> Scalar {
    v.pair_with(|&i| eps(i))
}

/// Which side an antipode value multiplies from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// S(a) ∈ L(A), known through b ↦ S(a)b.
    Left,
    /// S(a) ∈ R(A), known through b ↦ bS(a).
    Right,
}

/// An antipode-type map A → L(A) or A → R(A).
#[derive(Clone)]
pub struct AntipodeMap {
    pub side: Side,
    /// `(a, b) ↦ S(a)b` for [`Side::Left`], `(a, b) ↦ bS(a)` for [`Side::Right`].
    pub act: Bilinear,
    /// S as a map A → A, when its values lie in A.
    pub endo: Option<Op1>,
    /// S⁻¹ when S is bijective on A.
    pub inverse: Option<Op1>,
}

impl fmt::Debug for AntipodeMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AntipodeMap({:?}, endo: {}, inverse: {})", self.side, self.endo.is_some(), self.inverse.is_some())
    }
}

impl AntipodeMap {
    /// An antipode mapping A into A, acting by multiplication on the given side.
    pub fn from_endo(alg: AlgRef, side: Side, s: Op1, inverse: Option<Op1>) -> Self {
        let s2 = s.clone();
        let act: Bilinear = Arc::new(move |a, b| {
            let sa = s2(a);
            match side {
                Side::Left => mul(alg.as_ref(), &sa, &Vec1::basis(b)),
                Side::Right => mul(alg.as_ref(), &Vec1::basis(b), &sa),
            }
        });
        AntipodeMap { side, act, endo: Some(s), inverse }
    }

    /// S(a)b or bS(a) depending on the side.
    pub fn act(&self, a: &Vec1, b: &Vec1) -> Vec1 {
        bilinear1(&self.act, a, b)
    }

    pub fn apply(&self, a: &Vec1) -> Option<Vec1> {
        self.endo.as_ref().map(|s| apply1(s, a))
    }

    pub fn apply_inverse(&self, a: &Vec1) -> Option<Vec1> {
        self.inverse.as_ref().map(|s| apply1(s, a))
    }

    pub fn is_bijective(&self) -> bool {
        self.endo.is_some() && self.inverse.is_some()
    }
}

/// The canonical idempotent through its two actions on A⊗A.
#[derive(Clone)]
pub struct Idempotent {
    /// x ↦ E·x on basis tensors.
    pub left: Op2,
    /// x ↦ x·E on basis tensors.
    pub right: Op2,
    /// E as an element of A⊗A, for unital algebras.
    pub element: Option<Vec2>,
}

impl fmt::Debug for Idempotent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Idempotent(element: {:?})", self.element)
    }
}

impl Idempotent {
    pub fn left(&self, x: &Vec2) -> Vec2 {
        apply2(&self.left, x)
    }

    pub fn right(&self, x: &Vec2) -> Vec2 {
        apply2(&self.right, x)
    }
}

/// All data of a candidate structure.
#[derive(Clone)]
pub struct Wmha {
    pub name: String,
    pub alg: AlgRef,
    pub cp: CopRef,
    pub eps: Functional,
    pub e: Idempotent,
    /// (a⊗1)F1(1⊗b).
    pub f1: Op2,
    /// (a⊗1)F2(1⊗b).
    pub f2: Op2,
    pub r1: Op2,
    pub r2: Op2,
    /// S1 : A → L(A).
    pub s1: AntipodeMap,
    /// S2 : A → R(A).
    pub s2: AntipodeMap,
}

impl fmt::Debug for Wmha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Wmha({})", self.name)
    }
}

impl Wmha {
    pub fn algebra(&self) -> &dyn Algebra {
        self.alg.as_ref()
    }

    pub fn eps(&self, v: &Vec1) -> Scalar {
        eval(&self.eps, v)
    }

    pub fn f1(&self, a: &Vec1, b: &Vec1) -> Vec2 {
        bilinear2(&self.f1, a, b)
    }

    pub fn f2(&self, a: &Vec1, b: &Vec1) -> Vec2 {
        bilinear2(&self.f2, a, b)
    }

    pub fn r1(&self, x: &Vec2) -> Vec2 {
        apply2(&self.r1, x)
    }

    pub fn r2(&self, x: &Vec2) -> Vec2 {
        apply2(&self.r2, x)
    }

    /// The antipode as a map A → A, when S1 has one.
    pub fn antipode(&self) -> Option<&Op1> {
        self.s1.endo.as_ref()
    }

    pub fn antipode_inverse(&self) -> Option<&Op1> {
        self.s1.inverse.as_ref()
    }

    pub fn is_regular_candidate(&self) -> bool {
        self.cp.is_regular() && self.s1.is_bijective()
    }
}
