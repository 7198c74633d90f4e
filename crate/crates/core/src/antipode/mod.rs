//! Generalized inverses of the canonical maps and the antipodes they induce.

mod checks;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

pub use checks::{
    check_anti_algebra, check_anti_coalgebra, check_antipode_identities, check_bridge, check_geninv_conditions,
    check_relations, check_s1_equals_s2, check_star_involutive, source_target, unifying_check, IdentitySide,
};

use crate::algebra::{contract_leg2, multiply_legs, mul, AlgRef, Algebra};
use crate::coproduct::{canonical_map, t1, t2, t3, t4, Coproduct};
use crate::error::{Error, Result};
use crate::finvec::{FinVec, Idx, Vec1, Vec2};
use crate::linalg::Echelon;
use crate::structure::{apply1, apply2, AntipodeMap, Bilinear, Functional, Op1, Op2, Side};

/// A map R on A⊗A paired with one of the canonical maps T_k.
#[derive(Clone)]
pub struct GeneralizedInverse {
    pub k: u8,
    pub r: Op2,
}

impl fmt::Debug for GeneralizedInverse {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GeneralizedInverse(R{})", self.k)
    }
}

impl GeneralizedInverse {
    pub fn new(k: u8, r: Op2) -> Self {
        assert!((1..=4).contains(&k), "canonical maps are numbered 1 to 4");
        GeneralizedInverse { k, r }
    }

    pub fn apply(&self, x: &Vec2) -> Vec2 {
        apply2(&self.r, x)
    }

    /// P = T∘R.
    pub fn p(&self, cp: &dyn Coproduct, x: &Vec2) -> Result<Vec2> {
        canonical_map(self.k, cp, &self.apply(x))
    }

    /// Q = R∘T.
    pub fn q(&self, cp: &dyn Coproduct, x: &Vec2) -> Result<Vec2> {
        Ok(self.apply(&canonical_map(self.k, cp, x)?))
    }
}

/// Δ(a) as an element of A⊗A, available when A has a unit.
pub fn delta_element(alg: &dyn Algebra, cp: &dyn Coproduct, a: &Vec1) -> Option<Vec2> {
    alg.unit().map(|u| t1(cp, &a.tensor(&u)))
}

fn need_endo(s: &AntipodeMap, k: u8) -> Result<(Op1, Op1)> {
    match (&s.endo, &s.inverse) {
        (Some(e), Some(i)) => Ok((e.clone(), i.clone())),
        _ => Err(Error::CoveringFailure(format!(
            "R{k} needs a unit or a bijective antipode mapping A to A"
        ))),
    }
}

/// The Sweedler formula for R_k written with the given antipode:
///
/// R1(a⊗b) = Σ a(1)⊗S1(a(2))b,  R2(a⊗b) = Σ aS2(b(1))⊗b(2),
/// R3(a⊗b) = Σ a(1)⊗bS3(a(2)),  R4(a⊗b) = Σ S4(b(1))a⊗b(2).
///
/// With a unit the sums are read off Δ(a) ∈ A⊗A; otherwise S must be a
/// bijection of A and the sums are covered by T3, T4, T1 and T2 respectively.
pub fn build_r_from_antipode(k: u8, alg: AlgRef, cp: Arc<dyn Coproduct>, s: &AntipodeMap) -> Result<GeneralizedInverse> {
    let expected = match k {
        1 | 4 => Side::Left,
        2 | 3 => Side::Right,
        _ => return Err(Error::InvalidSpec(format!("no canonical map T{k}"))),
    };
    if s.side != expected {
        return Err(Error::InvalidSpec(format!("R{k} needs an antipode acting on the {expected:?} side")));
    }
    let act = s.act.clone();
    let r: Op2 = if let Some(unit) = alg.unit() {
        let u = unit.clone();
        match k {
            1 | 3 => Arc::new(move |a, b| {
                let d = t1(cp.as_ref(), &Vec1::basis(a).tensor(&u));
                split_right(&d, |q| act(q, b))
            }),
            _ => Arc::new(move |a, b| {
                let d = t2(cp.as_ref(), &u.tensor(&Vec1::basis(b)));
                split_left(&d, |p| act(p, a))
            }),
        }
    } else {
        let (sm, si) = need_endo(s, k)?;
        if matches!(k, 1 | 2) && !cp.is_regular() {
            return Err(Error::CoveringFailure(format!("R{k} covering uses T{} on a regular coproduct", k + 2)));
        }
        match k {
            1 => Arc::new(move |a, b| {
                let x = t3(cp.as_ref(), &Vec1::basis(a).tensor(&si(b)));
                split_right(&x, |q| sm(q))
            }),
            2 => Arc::new(move |a, b| {
                let x = t4(cp.as_ref(), &si(a).tensor(&Vec1::basis(b)));
                split_left(&x, |p| sm(p))
            }),
            3 => Arc::new(move |a, b| {
                let x = t1(cp.as_ref(), &Vec1::basis(a).tensor(&si(b)));
                split_right(&x, |q| sm(q))
            }),
            _ => Arc::new(move |a, b| {
                let x = t2(cp.as_ref(), &si(a).tensor(&Vec1::basis(b)));
                split_left(&x, |p| sm(p))
            }),
        }
    };
    Ok(GeneralizedInverse::new(k, r))
}

fn split_right(x: &Vec2, mut f: impl FnMut(Idx) -> Vec1) -> Vec2 {
    let mut out = Vec2::zero();
    for ((p, q), c) in x.iter() {
        out.add_scaled(&Vec1::basis(*p).tensor(&f(*q)), c);
    }
    out
}

fn split_left(x: &Vec2, mut f: impl FnMut(Idx) -> Vec1) -> Vec2 {
    let mut out = Vec2::zero();
    for ((p, q), c) in x.iter() {
        out.add_scaled(&f(*p).tensor(&Vec1::basis(*q)), c);
    }
    out
}

/// S_k from R_k by applying the counit to the free leg:
///
/// S1(a)b = (ε⊗ι)R1(a⊗b),  bS2(a) = (ι⊗ε)R2(b⊗a),
/// bS3(a) = (ε⊗ι)R3(a⊗b),  S4(a)b = (ι⊗ε)R4(b⊗a).
pub fn antipode_from_r(gi: &GeneralizedInverse, eps: &Functional) -> AntipodeMap {
    let (k, r) = (gi.k, gi.r.clone());
    let e = eps.clone();
    let (side, act): (Side, Bilinear) = match k {
        1 | 3 => (
            if k == 1 { Side::Left } else { Side::Right },
            Arc::new(move |a, b| contract_leg2(&r(a, b), 0, |i| e(i))),
        ),
        _ => (
            if k == 4 { Side::Left } else { Side::Right },
            Arc::new(move |a, b| contract_leg2(&r(b, a), 1, |i| e(i))),
        ),
    };
    AntipodeMap { side, act, endo: None, inverse: None }
}

/// [`antipode_from_r`] on a finite unital algebra, with S tabulated as a map
/// A → A, inverted when bijective, and checked to reproduce R_k on the
/// window pairs.
pub fn derive_antipode(
    gi: &GeneralizedInverse,
    alg: AlgRef,
    cp: Arc<dyn Coproduct>,
    eps: &Functional,
    window: &[Idx],
) -> Result<AntipodeMap> {
    let mut s = antipode_from_r(gi, eps);
    let (unit, n) = match (alg.unit(), alg.dim()) {
        (Some(u), Some(n)) => (u, n),
        _ => return Err(Error::Unsupported("deriving S as a map needs a finite unital algebra".into())),
    };
    let act = s.act.clone();
    let endo: Op1 = Arc::new(move |a| {
        let mut out = Vec1::zero();
        for (j, c) in unit.iter() {
            out.add_scaled(&act(a, *j), c);
        }
        out
    });
    let basis: Vec<Idx> = (0..n).collect();
    let table = tabulate1(&basis, &endo);
    s.inverse = invert(&basis, &table);
    s.endo = Some(table_op(table));
    let rebuilt = build_r_from_antipode(gi.k, alg, cp, &s)?;
    for &a in window {
        for &b in window {
            if (gi.r)(a, b) != (rebuilt.r)(a, b) {
                return Err(Error::ReconstructionMismatch(format!("R{} at basis pair ({a}, {b})", gi.k)));
            }
        }
    }
    Ok(s)
}

pub fn tabulate1(basis: &[Idx], op: &Op1) -> BTreeMap<Idx, Vec1> {
    basis.iter().map(|&i| (i, op(i))).collect()
}

pub fn tabulate2(basis: &[Idx], op: &Op2) -> BTreeMap<(Idx, Idx), Vec2> {
    let mut out = BTreeMap::new();
    for &a in basis {
        for &b in basis {
            out.insert((a, b), op(a, b));
        }
    }
    out
}

pub fn table_op(t: BTreeMap<Idx, Vec1>) -> Op1 {
    Arc::new(move |i| t.get(&i).cloned().unwrap_or_default())
}

pub fn table_op2(t: BTreeMap<(Idx, Idx), Vec2>) -> Op2 {
    Arc::new(move |a, b| t.get(&(a, b)).cloned().unwrap_or_default())
}

/// Inverse of a linear map given on a finite basis, if it is bijective.
pub fn invert(basis: &[Idx], table: &BTreeMap<Idx, Vec1>) -> Option<Op1> {
    let mut ech = Echelon::with_provenance();
    for (n, &i) in basis.iter().enumerate() {
        ech.insert_tracked(table[&i].clone(), n);
    }
    if ech.rank() != basis.len() {
        return None;
    }
    let mut inv = BTreeMap::new();
    for &j in basis {
        let comb: FinVec<usize> = ech.factor(&Vec1::basis(j))?;
        inv.insert(j, comb.map_keys(|&n| basis[n]));
    }
    Some(table_op(inv))
}

/// ε_t(a)b = Σ a(1)S(a(2))b.
pub fn target_apply(alg: &dyn Algebra, cp: &dyn Coproduct, s: &AntipodeMap, a: &Vec1, b: &Vec1) -> Result<Vec1> {
    if let Some(d) = delta_element(alg, cp, a) {
        let mut out = Vec1::zero();
        for ((p, q), c) in d.iter() {
            out.add_scaled(&mul(alg, &Vec1::basis(*p), &s.act(&Vec1::basis(*q), b)), c);
        }
        return Ok(out);
    }
    // Σ p(1)S(p(2))q = m(ι⊗S)T3(p⊗S⁻¹q)
    let (sm, si) = need_endo(s, 1)?;
    if !cp.is_regular() {
        return Err(Error::NotRegular);
    }
    let x = t3(cp, &a.tensor(&apply1(&si, b)));
    Ok(multiply_legs(alg, &split_right(&x, |q| sm(q))))
}

#[cfg(test)]
mod tests;
