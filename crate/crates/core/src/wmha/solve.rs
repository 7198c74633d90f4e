//! Dense exact solvers for finite unital structures: the counit, the canonical
//! idempotent, the kernel multipliers and the generalized inverses they fix.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{basis, leg13, mul2, mul3, tensor_12, tensor_23, AlgRef, Algebra, KernelMultiplier, SandwichSide};
use crate::antipode::{derive_antipode, table_op2, GeneralizedInverse};
use crate::coproduct::{canonical_map, solve_counit, CopRef, Coproduct, CounitOutcome};
use crate::error::{Error, Result};
use crate::finvec::{FinVec, Idx, Vec1, Vec2, Vec3};
use crate::linalg::{Echelon, LinearSystem};
use crate::scalar::Scalar;
use crate::structure::{Functional, Idempotent, Op2, Wmha};

/// Default cap on dim(A)³ for dense computations.
pub const DEFAULT_MAX_DIM: usize = 729;

/// The cap from `WMHA_MAX_DIM`, or the default.
pub fn max_dim_from_env() -> usize {
    std::env::var("WMHA_MAX_DIM").ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_MAX_DIM)
}

/// Basis and unit of a finite unital algebra whose cube fits under the cap.
pub fn dense_basis(alg: &dyn Algebra, cap: usize) -> Result<(Vec<Idx>, Vec1)> {
    let b = basis(alg)?;
    let unit = alg.unit().ok_or_else(|| Error::Unsupported(format!("{} has no unit", alg.name())))?;
    let dim = b.len().pow(3);
    if dim > cap {
        return Err(Error::DimensionCap { dim, cap });
    }
    Ok((b, unit))
}

pub fn basis_pairs(window: &[Idx]) -> Vec<(Idx, Idx)> {
    window.iter().flat_map(|&a| window.iter().map(move |&b| (a, b))).collect()
}

/// Span of T_k on basis tensors of the window.
pub fn range_echelon(cp: &dyn Coproduct, k: u8, window: &[Idx]) -> Result<Echelon<(Idx, Idx)>> {
    let mut ech = Echelon::new();
    for (a, b) in basis_pairs(window) {
        ech.insert(canonical_map(k, cp, &Vec2::basis((a, b)))?);
    }
    Ok(ech)
}

/// Basis of the kernel of T_k restricted to span(window ⊗ window).
pub fn kernel_basis(cp: &dyn Coproduct, k: u8, window: &[Idx]) -> Result<Vec<Vec2>> {
    let pairs = basis_pairs(window);
    // Row per output coordinate, indexed by input pairs.
    let mut rows: BTreeMap<(Idx, Idx), Vec2> = BTreeMap::new();
    for &x in &pairs {
        for (out, c) in canonical_map(k, cp, &Vec2::basis(x))?.iter() {
            rows.entry(*out).or_default().add_term(x, c.clone());
        }
    }
    let ech = Echelon::from_vectors(rows.values());
    Ok(ech.nullspace(&pairs))
}

/// Coefficient equations `Σ_u x_u col_u = rhs`, one per coordinate.
fn add_columns<K: Ord + Clone>(sys: &mut LinearSystem, cols: &[FinVec<K>], rhs: &FinVec<K>) {
    let mut eqs: BTreeMap<K, FinVec<usize>> = rhs.keys().map(|k| (k.clone(), FinVec::zero())).collect();
    for (u, col) in cols.iter().enumerate() {
        for (k, c) in col.iter() {
            eqs.entry(k.clone()).or_default().add_term(u, c.clone());
        }
    }
    for (k, lhs) in &eqs {
        sys.add_equation(lhs, &rhs.get(k));
    }
}

fn unknown_pairs(b: &[Idx]) -> Vec<(Idx, Idx)> {
    basis_pairs(b)
}

fn assemble(b: &[Idx], x: &FinVec<usize>) -> Vec2 {
    let pairs = unknown_pairs(b);
    Vec2::from_terms(x.iter().map(|(u, c)| (pairs[*u], c.clone())))
}

/// The unique idempotent E with E(A⊗A) = Ran(T1) and (A⊗A)E = Ran(T2).
///
/// Unknown E ∈ A⊗A with E·x = x on a basis of Ran(T1), y·E = y on a basis of
/// Ran(T2), and every annihilator of Ran(T1) (resp. Ran(T2)) vanishing on E·z
/// (resp. z·E) for all basis tensors z.
pub fn find_e(alg: &dyn Algebra, cp: &dyn Coproduct, cap: usize) -> Result<Vec2> {
    let (b, _) = dense_basis(alg, cap)?;
    let pairs = unknown_pairs(&b);
    let units: Vec<Vec2> = pairs.iter().map(|&u| Vec2::basis(u)).collect();
    let r1 = range_echelon(cp, 1, &b)?;
    let r2 = range_echelon(cp, 2, &b)?;
    let mut sys = LinearSystem::new(pairs.len());
    for x in r1.basis() {
        let cols: Vec<Vec2> = units.iter().map(|u| mul2(alg, u, &x)).collect();
        add_columns(&mut sys, &cols, &x);
    }
    for y in r2.basis() {
        let cols: Vec<Vec2> = units.iter().map(|u| mul2(alg, &y, u)).collect();
        add_columns(&mut sys, &cols, &y);
    }
    let ann1 = r1.nullspace(&pairs);
    let ann2 = r2.nullspace(&pairs);
    let dot = |phi: &Vec2, v: &Vec2| v.pair_with(|k| phi.get(k));
    for z in &units {
        let left: Vec<Vec2> = units.iter().map(|u| mul2(alg, u, z)).collect();
        for phi in &ann1 {
            let row = FinVec::from_terms(left.iter().enumerate().map(|(i, v)| (i, dot(phi, v))));
            sys.add_equation(&row, &Scalar::zero());
        }
        let right: Vec<Vec2> = units.iter().map(|u| mul2(alg, z, u)).collect();
        for phi in &ann2 {
            let row = FinVec::from_terms(right.iter().enumerate().map(|(i, v)| (i, dot(phi, v))));
            sys.add_equation(&row, &Scalar::zero());
        }
    }
    let sol = sys.solve().map_err(|e| Error::NoSuchIdempotent(e.to_string()))?;
    if !sol.is_unique() {
        return Err(Error::NotUnique { dim: sol.nullspace.len() });
    }
    let e = assemble(&b, &sol.particular);
    if mul2(alg, &e, &e) != e {
        return Err(Error::NoSuchIdempotent("the solution is not idempotent".into()));
    }
    Ok(e)
}

/// Which kernel multiplier to solve for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KernelKind {
    /// E13(F1⊗1) = E13(1⊗E).
    F1,
    /// (1⊗F2)E13 = (E⊗1)E13.
    F2,
    /// (F3⊗1)E13 = (1⊗E)E13.
    F3,
    /// E13(1⊗F4) = E13(E⊗1).
    F4,
}

impl KernelKind {
    pub fn label(self) -> &'static str {
        match self {
            KernelKind::F1 => "F1",
            KernelKind::F2 => "F2",
            KernelKind::F3 => "F3",
            KernelKind::F4 => "F4",
        }
    }

    /// Inner sandwiches (a⊗1)F(1⊗b) for F1, F2; outer (1⊗b)F(a⊗1) for F3, F4.
    pub fn side(self) -> SandwichSide {
        match self {
            KernelKind::F1 | KernelKind::F2 => SandwichSide::Inner,
            _ => SandwichSide::Outer,
        }
    }
}

/// Left side of the defining identity of F given as an element.
pub fn kernel_lhs(alg: &dyn Algebra, unit: &Vec1, e: &Vec2, kind: KernelKind, f: &Vec2) -> Vec3 {
    let e13 = leg13(e, unit);
    match kind {
        KernelKind::F1 => mul3(alg, &e13, &tensor_12(f, unit)),
        KernelKind::F2 => mul3(alg, &tensor_23(unit, f), &e13),
        KernelKind::F3 => mul3(alg, &tensor_12(f, unit), &e13),
        KernelKind::F4 => mul3(alg, &e13, &tensor_23(unit, f)),
    }
}

/// Right side of the defining identity, which involves E only.
pub fn kernel_rhs(alg: &dyn Algebra, unit: &Vec1, e: &Vec2, kind: KernelKind) -> Vec3 {
    let e13 = leg13(e, unit);
    match kind {
        KernelKind::F1 => mul3(alg, &e13, &tensor_23(unit, e)),
        KernelKind::F2 => mul3(alg, &tensor_12(e, unit), &e13),
        KernelKind::F3 => mul3(alg, &tensor_23(unit, e), &e13),
        KernelKind::F4 => mul3(alg, &e13, &tensor_12(e, unit)),
    }
}

/// The unique F ∈ A⊗A satisfying its identity with E.
pub fn solve_f(alg: &dyn Algebra, e: &Vec2, kind: KernelKind, cap: usize) -> Result<Vec2> {
    let (b, unit) = dense_basis(alg, cap)?;
    let pairs = unknown_pairs(&b);
    let cols: Vec<Vec3> = pairs.iter().map(|&u| kernel_lhs(alg, &unit, e, kind, &Vec2::basis(u))).collect();
    let rhs = kernel_rhs(alg, &unit, e, kind);
    let mut sys = LinearSystem::new(pairs.len());
    add_columns(&mut sys, &cols, &rhs);
    let sol = sys.solve().map_err(|e| Error::NoSolution(format!("{}: {e}", kind.label())))?;
    if !sol.is_unique() {
        return Err(Error::NotUnique { dim: sol.nullspace.len() });
    }
    Ok(assemble(&b, &sol.particular))
}

/// R_k = (T_k restricted to Ran Q)⁻¹ ∘ P, with P the projection onto
/// Ran(T_k) and Q the sandwich projection of the kernel multiplier.
pub fn r_from_projections(
    cp: &dyn Coproduct,
    k: u8,
    window: &[Idx],
    p: &dyn Fn(&Vec2) -> Vec2,
    q: &dyn Fn(Idx, Idx) -> Vec2,
) -> Result<BTreeMap<(Idx, Idx), Vec2>> {
    let gens: Vec<Vec2> = basis_pairs(window).into_iter().map(|(a, b)| q(a, b)).collect();
    let mut ech = Echelon::with_provenance();
    for (n, g) in gens.iter().enumerate() {
        ech.insert_tracked(canonical_map(k, cp, g)?, n);
    }
    let mut out = BTreeMap::new();
    for (a, b) in basis_pairs(window) {
        let y = p(&Vec2::basis((a, b)));
        let comb = ech
            .factor(&y)
            .ok_or_else(|| Error::FactorizationFailure(format!("P(x) outside T{k}(Ran Q) at basis pair ({a}, {b})")))?;
        let mut r = Vec2::zero();
        for (n, c) in comb.iter() {
            r.add_scaled(&gens[*n], c);
        }
        out.insert((a, b), r);
    }
    Ok(out)
}

/// Everything the dense path computes from (A, Δ) alone.
#[derive(Clone, Debug)]
pub struct DenseData {
    pub eps: Vec<Scalar>,
    pub e: Vec2,
    pub f1: Vec2,
    pub f2: Vec2,
}

pub fn dense_data(alg: &dyn Algebra, cp: &dyn Coproduct, cap: usize) -> Result<DenseData> {
    dense_basis(alg, cap)?;
    let eps = match solve_counit(alg, cp)? {
        CounitOutcome::Unique(v) => v,
        CounitOutcome::NoSolution => return Err(Error::NoSolution("counit".into())),
        CounitOutcome::NotUnique { dim } => return Err(Error::NotUnique { dim }),
    };
    let e = find_e(alg, cp, cap)?;
    let f1 = solve_f(alg, &e, KernelKind::F1, cap)?;
    let f2 = solve_f(alg, &e, KernelKind::F2, cap)?;
    Ok(DenseData { eps, e, f1, f2 })
}

fn element_actions(alg: &AlgRef, e: &Vec2) -> Idempotent {
    let (a1, a2, e1, e2) = (alg.clone(), alg.clone(), e.clone(), e.clone());
    Idempotent {
        left: Arc::new(move |p, q| mul2(a1.as_ref(), &e1, &Vec2::basis((p, q)))),
        right: Arc::new(move |p, q| mul2(a2.as_ref(), &Vec2::basis((p, q)), &e2)),
        element: Some(e.clone()),
    }
}

fn sandwich_op(alg: &AlgRef, f: &Vec2, side: SandwichSide) -> Op2 {
    let km = KernelMultiplier::from_element(alg.clone(), side, f.clone());
    Arc::new(move |a, b| km.sandwich_basis(a, b))
}

/// A structure assembled purely from (A, Δ) by the dense path.
pub fn generic_structure(alg: AlgRef, cp: CopRef, cap: usize) -> Result<Wmha> {
    let (b, _) = dense_basis(alg.as_ref(), cap)?;
    let data = dense_data(alg.as_ref(), cp.as_ref(), cap)?;
    let eps_table = data.eps.clone();
    let eps: Functional = Arc::new(move |i| eps_table.get(i).cloned().unwrap_or_else(Scalar::zero));
    let e = element_actions(&alg, &data.e);
    let f1 = sandwich_op(&alg, &data.f1, SandwichSide::Inner);
    let f2 = sandwich_op(&alg, &data.f2, SandwichSide::Inner);
    let r1 = {
        let el = e.left.clone();
        let p = move |x: &Vec2| crate::structure::apply2(&el, x);
        let f = f1.clone();
        table_op2(r_from_projections(cp.as_ref(), 1, &b, &p, &|a, c| f(a, c))?)
    };
    let r2 = {
        let er = e.right.clone();
        let p = move |x: &Vec2| crate::structure::apply2(&er, x);
        let f = f2.clone();
        table_op2(r_from_projections(cp.as_ref(), 2, &b, &p, &|a, c| f(a, c))?)
    };
    let s1 = derive_antipode(&GeneralizedInverse::new(1, r1.clone()), alg.clone(), cp.clone(), &eps, &b)?;
    let s2 = derive_antipode(&GeneralizedInverse::new(2, r2.clone()), alg.clone(), cp.clone(), &eps, &b)?;
    Ok(Wmha { name: alg.name(), alg, cp, eps, e, f1, f2, r1, r2, s1, s2 })
}
