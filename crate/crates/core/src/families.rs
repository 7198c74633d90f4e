//! The function algebra K(G) and the convolution algebra ℂG of a groupoid,
//! with every structure map in closed form.

use std::sync::Arc;

use crate::algebra::{AlgRef, Algebra};
use crate::coproduct::{CopRef, Coproduct, DualPairing};
use crate::error::{Error, Result};
use crate::finvec::{Idx, Vec1, Vec2};
use crate::groupoid::{local_window, validate_groupoid, Arrow, Groupoid};
use crate::scalar::Scalar;
use crate::structure::{AntipodeMap, Functional, Idempotent, Op1, Op2, Side, Wmha};

pub type GroupoidRef = Arc<dyn Groupoid>;

/// Finitely supported functions on G with the pointwise product; δ_p is basis vector p.
#[derive(Debug)]
pub struct FunctionAlgebra {
    g: GroupoidRef,
}

impl FunctionAlgebra {
    pub fn new(g: GroupoidRef) -> Self {
        FunctionAlgebra { g }
    }
}

impl Algebra for FunctionAlgebra {
    fn name(&self) -> String {
        format!("K({})", self.g.name())
    }
    fn dim(&self) -> Option<usize> {
        self.g.size()
    }
    fn basis_label(&self, i: Idx) -> String {
        format!("δ{}", self.g.label(i))
    }
    fn mul_basis(&self, i: Idx, j: Idx) -> Vec1 {
        if i == j {
            Vec1::basis(i)
        } else {
            Vec1::zero()
        }
    }
    fn star_basis(&self, i: Idx) -> Option<Vec1> {
        Some(Vec1::basis(i))
    }
    fn has_star(&self) -> bool {
        true
    }
    fn unit(&self) -> Option<Vec1> {
        self.g.size().map(|n| Vec1::from_terms((0..n).map(|p| (p, Scalar::one()))))
    }
    fn window(&self, size: usize) -> Vec<Idx> {
        self.g.window(size)
    }
    fn local_window(&self, support: &[Idx]) -> Vec<Idx> {
        match self.g.size() {
            Some(n) => (0..n).collect(),
            None => local_window(self.g.as_ref(), support),
        }
    }
}

/// Finite combinations of λ_p with λ_pλ_q = λ_{pq} when composable and 0 otherwise.
#[derive(Debug)]
pub struct ConvolutionAlgebra {
    g: GroupoidRef,
}

impl ConvolutionAlgebra {
    pub fn new(g: GroupoidRef) -> Self {
        ConvolutionAlgebra { g }
    }
}

impl Algebra for ConvolutionAlgebra {
    fn name(&self) -> String {
        format!("C[{}]", self.g.name())
    }
    fn dim(&self) -> Option<usize> {
        self.g.size()
    }
    fn basis_label(&self, i: Idx) -> String {
        format!("λ{}", self.g.label(i))
    }
    fn mul_basis(&self, i: Idx, j: Idx) -> Vec1 {
        self.g.compose(i, j).map(Vec1::basis).unwrap_or_default()
    }
    fn star_basis(&self, i: Idx) -> Option<Vec1> {
        Some(Vec1::basis(self.g.inverse(i)))
    }
    fn has_star(&self) -> bool {
        true
    }
    /// Σ_e λ_e over the units, which lies in A only for finitely many units.
    fn unit(&self) -> Option<Vec1> {
        let n = self.g.size()?;
        Some(Vec1::from_terms((0..n).filter(|&p| self.g.is_unit(p)).map(|p| (p, Scalar::one()))))
    }
    fn window(&self, size: usize) -> Vec<Idx> {
        self.g.window(size)
    }
    fn local_window(&self, support: &[Idx]) -> Vec<Idx> {
        match self.g.size() {
            Some(n) => (0..n).collect(),
            None => local_window(self.g.as_ref(), support),
        }
    }
}

fn d2(p: Arrow, q: Arrow) -> Vec2 {
    Vec2::basis((p, q))
}

fn when(c: bool, v: impl FnOnce() -> Vec2) -> Vec2 {
    if c {
        v()
    } else {
        Vec2::zero()
    }
}

/// Δ(f)(p,q) = f(pq) on composable pairs, zero elsewhere.
#[derive(Debug)]
pub struct FunctionCoproduct {
    g: GroupoidRef,
}

impl FunctionCoproduct {
    pub fn new(g: GroupoidRef) -> Self {
        FunctionCoproduct { g }
    }
}

impl Coproduct for FunctionCoproduct {
    fn name(&self) -> String {
        format!("Δ[K({})]", self.g.name())
    }
    /// Δ(δ_a)(1⊗δ_b) = δ_{ab⁻¹}⊗δ_b when s(a) = s(b).
    fn t1(&self, a: Idx, b: Idx) -> Vec2 {
        let g = &self.g;
        when(g.source(a) == g.source(b), || d2(g.compose(a, g.inverse(b)).expect("s(a)=s(b)"), b))
    }
    /// (δ_a⊗1)Δ(δ_b) = δ_a⊗δ_{a⁻¹b} when t(a) = t(b).
    fn t2(&self, a: Idx, b: Idx) -> Vec2 {
        let g = &self.g;
        when(g.target(a) == g.target(b), || d2(a, g.compose(g.inverse(a), b).expect("t(a)=t(b)")))
    }
    fn t3(&self, a: Idx, b: Idx) -> Option<Vec2> {
        Some(self.t1(a, b))
    }
    fn t4(&self, a: Idx, b: Idx) -> Option<Vec2> {
        Some(self.t2(a, b))
    }
    fn is_regular(&self) -> bool {
        true
    }
}

/// Δ(λ_p) = λ_p⊗λ_p.
#[derive(Debug)]
pub struct ConvolutionCoproduct {
    g: GroupoidRef,
}

impl ConvolutionCoproduct {
    pub fn new(g: GroupoidRef) -> Self {
        ConvolutionCoproduct { g }
    }

    fn lam(&self, p: Arrow, q: Arrow) -> Option<Arrow> {
        self.g.compose(p, q)
    }
}

impl Coproduct for ConvolutionCoproduct {
    fn name(&self) -> String {
        format!("Δ[C[{}]]", self.g.name())
    }
    fn t1(&self, a: Idx, b: Idx) -> Vec2 {
        self.lam(a, b).map(|ab| d2(a, ab)).unwrap_or_default()
    }
    fn t2(&self, a: Idx, b: Idx) -> Vec2 {
        self.lam(a, b).map(|ab| d2(ab, b)).unwrap_or_default()
    }
    fn t3(&self, a: Idx, b: Idx) -> Option<Vec2> {
        Some(self.lam(b, a).map(|ba| d2(a, ba)).unwrap_or_default())
    }
    fn t4(&self, a: Idx, b: Idx) -> Option<Vec2> {
        Some(self.lam(b, a).map(|ba| d2(ba, b)).unwrap_or_default())
    }
    fn is_regular(&self) -> bool {
        true
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// K(G).
    Functions,
    /// ℂG.
    Convolution,
}

/// A groupoid-derived structure together with its groupoid.
#[derive(Clone, Debug)]
pub struct GroupoidWmha {
    pub groupoid: GroupoidRef,
    pub family: Family,
    pub wmha: Wmha,
}

fn validated(g: &GroupoidRef) -> Result<()> {
    let window = g.window(3);
    let report = validate_groupoid(g.as_ref(), &window);
    let failed = report.failures().next().map(|c| c.id.clone());
    match failed {
        Some(id) => Err(Error::InvalidGroupoid(id)),
        None => Ok(()),
    }
}

fn inverse_op(g: &GroupoidRef) -> Op1 {
    let g = g.clone();
    Arc::new(move |p| Vec1::basis(g.inverse(p)))
}

fn antipodes(alg: &AlgRef, g: &GroupoidRef) -> (AntipodeMap, AntipodeMap) {
    let s = inverse_op(g);
    (
        AntipodeMap::from_endo(alg.clone(), Side::Left, s.clone(), Some(s.clone())),
        AntipodeMap::from_endo(alg.clone(), Side::Right, s.clone(), Some(s)),
    )
}

/// K(G) with ε(f) = Σ_units f(e), S(f)(p) = f(p⁻¹), E(p,q) = [s(p)=t(q)],
/// F1(p,q) = [s(p)=s(q)], F2(p,q) = [t(p)=t(q)] and pointwise conjugation.
pub fn build_kg(g: GroupoidRef) -> Result<GroupoidWmha> {
    validated(&g)?;
    let alg: AlgRef = Arc::new(FunctionAlgebra::new(g.clone()));
    let cp: CopRef = Arc::new(FunctionCoproduct::new(g.clone()));
    let eps: Functional = {
        let g = g.clone();
        Arc::new(move |p| if g.is_unit(p) { Scalar::one() } else { Scalar::zero() })
    };
    let e_rule: Op2 = {
        let g = g.clone();
        Arc::new(move |p, q| when(g.source(p) == g.target(q), || d2(p, q)))
    };
    let element = g.size().map(|n| {
        let mut e = Vec2::zero();
        for p in 0..n {
            for q in 0..n {
                e.add_scaled(&e_rule(p, q), &Scalar::one());
            }
        }
        e
    });
    let f1: Op2 = {
        let g = g.clone();
        Arc::new(move |a, b| when(g.source(a) == g.source(b), || d2(a, b)))
    };
    let f2: Op2 = {
        let g = g.clone();
        Arc::new(move |a, b| when(g.target(a) == g.target(b), || d2(a, b)))
    };
    // R1(δa⊗δb) = δ_{ab}⊗δ_b and R2(δa⊗δb) = δ_a⊗δ_{ab}, both when s(a) = t(b).
    let r1: Op2 = {
        let g = g.clone();
        Arc::new(move |a, b| g.compose(a, b).map(|ab| d2(ab, b)).unwrap_or_default())
    };
    let r2: Op2 = {
        let g = g.clone();
        Arc::new(move |a, b| g.compose(a, b).map(|ab| d2(a, ab)).unwrap_or_default())
    };
    let (s1, s2) = antipodes(&alg, &g);
    let wmha = Wmha {
        name: alg.name(),
        alg,
        cp,
        eps,
        e: Idempotent { left: e_rule.clone(), right: e_rule, element },
        f1,
        f2,
        r1,
        r2,
        s1,
        s2,
    };
    Ok(GroupoidWmha { groupoid: g, family: Family::Functions, wmha })
}

/// ℂG with Δ(λ_p) = λ_p⊗λ_p, ε(λ_p) = 1, S(λ_p) = λ_{p⁻¹}, E = Σ_e λ_e⊗λ_e
/// (as an action when there are infinitely many units) and λ_p* = λ_{p⁻¹}.
pub fn build_cg(g: GroupoidRef) -> Result<GroupoidWmha> {
    validated(&g)?;
    let alg: AlgRef = Arc::new(ConvolutionAlgebra::new(g.clone()));
    let cp: CopRef = Arc::new(ConvolutionCoproduct::new(g.clone()));
    let eps: Functional = Arc::new(|_| Scalar::one());
    let left: Op2 = {
        let g = g.clone();
        Arc::new(move |p, q| when(g.target(p) == g.target(q), || d2(p, q)))
    };
    let right: Op2 = {
        let g = g.clone();
        Arc::new(move |p, q| when(g.source(p) == g.source(q), || d2(p, q)))
    };
    let element = g.size().map(|n| Vec2::from_terms((0..n).filter(|&p| g.is_unit(p)).map(|e| ((e, e), Scalar::one()))));
    // (λa⊗1)F(1⊗λb) = λa⊗λb when s(a) = t(b), for both F1 and F2.
    let f: Op2 = {
        let g = g.clone();
        Arc::new(move |a, b| when(g.source(a) == g.target(b), || d2(a, b)))
    };
    // R1(λa⊗λb) = λa⊗λ_{a⁻¹b}, R2(λa⊗λb) = λ_{ab⁻¹}⊗λb.
    let r1: Op2 = {
        let g = g.clone();
        Arc::new(move |a, b| g.compose(g.inverse(a), b).map(|x| d2(a, x)).unwrap_or_default())
    };
    let r2: Op2 = {
        let g = g.clone();
        Arc::new(move |a, b| g.compose(a, g.inverse(b)).map(|x| d2(x, b)).unwrap_or_default())
    };
    let (s1, s2) = antipodes(&alg, &g);
    let wmha = Wmha {
        name: alg.name(),
        alg,
        cp,
        eps,
        e: Idempotent { left, right, element },
        f1: f.clone(),
        f2: f,
        r1,
        r2,
        s1,
        s2,
    };
    Ok(GroupoidWmha { groupoid: g, family: Family::Convolution, wmha })
}

fn same_groupoid(a: &GroupoidRef, b: &GroupoidRef) -> bool {
    if Arc::ptr_eq(a, b) {
        return true;
    }
    if a.name() != b.name() || a.size() != b.size() {
        return false;
    }
    let w = a.window(3);
    w == b.window(3) && w.iter().all(|&p| a.label(p) == b.label(p) && a.inverse(p) == b.inverse(p))
}

/// ⟨f, λ_p⟩ = f(p).
pub fn canonical_pairing(kg: &GroupoidWmha, cg: &GroupoidWmha) -> Result<DualPairing> {
    if kg.family != Family::Functions || cg.family != Family::Convolution {
        return Err(Error::InvalidSpec("pairing expects K(G) on the left and ℂG on the right".into()));
    }
    if !same_groupoid(&kg.groupoid, &cg.groupoid) {
        return Err(Error::GroupoidMismatch);
    }
    Ok(DualPairing::new(|p, q| if p == q { Scalar::one() } else { Scalar::zero() }))
}

#[cfg(test)]
mod tests;
