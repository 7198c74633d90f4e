//! Coproducts through their slices, the canonical maps T1–T4, and the
//! derived transforms.

mod checks;
mod pairing;

use std::fmt;
use std::sync::Arc;

pub use checks::{
    check_coassociativity, check_full, check_homomorphism, check_slice_nondegenerate, check_star_coproduct,
    counit_laws, fmt_functional, solve_counit, CounitOutcome,
};
pub use pairing::{check_pairing, pairing_matrix, DualPairing, PairingSide};

use crate::algebra::{lmul_leg2, mul, rmul_leg2, AlgRef, Algebra};
use crate::error::{Error, Result};
use crate::finvec::{Idx, Vec1, Vec2};
use crate::linop::LinOp;
use crate::algebra::TensorMultiplier;

/// A coproduct A → M(A⊗A) known through its slices on basis vectors.
pub trait Coproduct: Send + Sync + fmt::Debug {
    fn name(&self) -> String;
    /// T1(a⊗b) = Δ(a)(1⊗b).
    fn t1(&self, a: Idx, b: Idx) -> Vec2;
    /// T2(a⊗b) = (a⊗1)Δ(b).
    fn t2(&self, a: Idx, b: Idx) -> Vec2;
    /// T3(a⊗b) = (1⊗b)Δ(a), for regular coproducts.
    fn t3(&self, _a: Idx, _b: Idx) -> Option<Vec2> {
        None
    }
    /// T4(a⊗b) = Δ(b)(a⊗1), for regular coproducts.
    fn t4(&self, _a: Idx, _b: Idx) -> Option<Vec2> {
        None
    }
    fn is_regular(&self) -> bool {
        false
    }
}

pub type CopRef = Arc<dyn Coproduct>;

/// Apply T_k to an element of A⊗A.
pub fn canonical_map(k: u8, cp: &dyn Coproduct, x: &Vec2) -> Result<Vec2> {
    if matches!(k, 3 | 4) && !cp.is_regular() {
        return Err(Error::NotRegular);
    }
    Ok(x.apply(|&(a, b)| match k {
        1 => cp.t1(a, b),
        2 => cp.t2(a, b),
        3 => cp.t3(a, b).expect("regular"),
        4 => cp.t4(a, b).expect("regular"),
        _ => panic!("canonical maps are numbered 1 to 4"),
    }))
}

pub fn t1(cp: &dyn Coproduct, x: &Vec2) -> Vec2 {
    x.apply(|&(a, b)| cp.t1(a, b))
}

pub fn t2(cp: &dyn Coproduct, x: &Vec2) -> Vec2 {
    x.apply(|&(a, b)| cp.t2(a, b))
}

pub fn t3(cp: &dyn Coproduct, x: &Vec2) -> Vec2 {
    x.apply(|&(a, b)| cp.t3(a, b).expect("regular coproduct"))
}

pub fn t4(cp: &dyn Coproduct, x: &Vec2) -> Vec2 {
    x.apply(|&(a, b)| cp.t4(a, b).expect("regular coproduct"))
}

/// Δ(a)·x for x ∈ A⊗A, using Δ(a)(p⊗q) = T1(a⊗q)(p⊗1).
pub fn delta_left(alg: &dyn Algebra, cp: &dyn Coproduct, a: Idx, x: &Vec2) -> Vec2 {
    let mut out = Vec2::zero();
    for ((p, q), c) in x.iter() {
        out.add_scaled(&rmul_leg2(alg, 0, &cp.t1(a, *q), &Vec1::basis(*p)), c);
    }
    out
}

/// x·Δ(a) for x ∈ A⊗A, using (p⊗q)Δ(a) = (1⊗q)T2(p⊗a).
pub fn delta_right(alg: &dyn Algebra, cp: &dyn Coproduct, x: &Vec2, a: Idx) -> Vec2 {
    let mut out = Vec2::zero();
    for ((p, q), c) in x.iter() {
        out.add_scaled(&lmul_leg2(alg, 1, &Vec1::basis(*q), &cp.t2(*p, a)), c);
    }
    out
}

/// Δ(a) for an element a, as a multiplier of A⊗A.
pub fn delta(alg: AlgRef, cp: CopRef, a: Vec1) -> TensorMultiplier {
    let (alg2, cp2, a2) = (alg.clone(), cp.clone(), a.clone());
    TensorMultiplier::two_sided(
        LinOp::new(move |k: &(Idx, Idx)| {
            let x = Vec2::basis(*k);
            a.apply(|&i| delta_left(alg.as_ref(), cp.as_ref(), i, &x))
        }),
        LinOp::new(move |k: &(Idx, Idx)| {
            let x = Vec2::basis(*k);
            a2.apply(|&i| delta_right(alg2.as_ref(), cp2.as_ref(), &x, i))
        }),
    )
}

/// Coproduct whose values Δ(e_i) are elements of A⊗A.
#[derive(Clone, Debug)]
pub struct ElementCoproduct {
    pub alg: AlgRef,
    pub values: Vec<Vec2>,
}

impl ElementCoproduct {
    pub fn new(alg: AlgRef, values: Vec<Vec2>) -> Result<Self> {
        let n = alg.dim().ok_or_else(|| Error::Unsupported("element coproducts need a finite basis".into()))?;
        if values.len() != n {
            return Err(Error::InvalidSpec(format!("expected {n} coproduct values, got {}", values.len())));
        }
        Ok(ElementCoproduct { alg, values })
    }
}

impl Coproduct for ElementCoproduct {
    fn name(&self) -> String {
        format!("Δ[{}]", self.alg.name())
    }
    fn t1(&self, a: Idx, b: Idx) -> Vec2 {
        rmul_leg2(self.alg.as_ref(), 1, &self.values[a], &Vec1::basis(b))
    }
    fn t2(&self, a: Idx, b: Idx) -> Vec2 {
        lmul_leg2(self.alg.as_ref(), 0, &Vec1::basis(a), &self.values[b])
    }
    fn t3(&self, a: Idx, b: Idx) -> Option<Vec2> {
        Some(lmul_leg2(self.alg.as_ref(), 1, &Vec1::basis(b), &self.values[a]))
    }
    fn t4(&self, a: Idx, b: Idx) -> Option<Vec2> {
        Some(rmul_leg2(self.alg.as_ref(), 0, &self.values[b], &Vec1::basis(a)))
    }
    fn is_regular(&self) -> bool {
        true
    }
}

impl ElementCoproduct {
    /// Δ(x) for an element x.
    pub fn value(&self, x: &Vec1) -> Vec2 {
        let mut out = Vec2::zero();
        for (i, c) in x.iter() {
            out.add_scaled(&self.values[*i], c);
        }
        out
    }
}

/// The same coproduct viewed on the opposite algebra: T_k^op = T_{k±2}.
#[derive(Clone, Debug)]
pub struct OpCoproduct(pub CopRef);

impl Coproduct for OpCoproduct {
    fn name(&self) -> String {
        format!("op[{}]", self.0.name())
    }
    fn t1(&self, a: Idx, b: Idx) -> Vec2 {
        self.0.t3(a, b).expect("op transform needs a regular coproduct")
    }
    fn t2(&self, a: Idx, b: Idx) -> Vec2 {
        self.0.t4(a, b).expect("op transform needs a regular coproduct")
    }
    fn t3(&self, a: Idx, b: Idx) -> Option<Vec2> {
        Some(self.0.t1(a, b))
    }
    fn t4(&self, a: Idx, b: Idx) -> Option<Vec2> {
        Some(self.0.t2(a, b))
    }
    fn is_regular(&self) -> bool {
        self.0.is_regular()
    }
}

/// Δ^cop = σΔ on the same algebra.
#[derive(Clone, Debug)]
pub struct CopCoproduct(pub CopRef);

impl Coproduct for CopCoproduct {
    fn name(&self) -> String {
        format!("cop[{}]", self.0.name())
    }
    fn t1(&self, a: Idx, b: Idx) -> Vec2 {
        self.0.t4(b, a).expect("cop transform needs a regular coproduct").flip()
    }
    fn t2(&self, a: Idx, b: Idx) -> Vec2 {
        self.0.t3(b, a).expect("cop transform needs a regular coproduct").flip()
    }
    fn t3(&self, a: Idx, b: Idx) -> Option<Vec2> {
        Some(self.0.t2(b, a).flip())
    }
    fn t4(&self, a: Idx, b: Idx) -> Option<Vec2> {
        Some(self.0.t1(b, a).flip())
    }
    fn is_regular(&self) -> bool {
        self.0.is_regular()
    }
}

/// (a⊗1)·x·(1⊗b).
pub fn sandwich_element(alg: &dyn Algebra, a: &Vec1, x: &Vec2, b: &Vec1) -> Vec2 {
    let mut out = Vec2::zero();
    for ((p, q), c) in x.iter() {
        out.add_scaled(&mul(alg, a, &Vec1::basis(*p)).tensor(&mul(alg, &Vec1::basis(*q), b)), c);
    }
    out
}
