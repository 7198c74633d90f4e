//! Coassociativity, fullness and counit computations.

use std::collections::BTreeMap;

use super::{delta_left, delta_right, t1, t2, t3, t4, Coproduct};
use crate::algebra::{basis, contract_leg2, fmt1, map_legs3, mul, star, star2, Algebra};
use crate::error::Result;
use crate::finvec::{tensor3, FinVec, Idx, Vec1};
use crate::linalg::{Echelon, LinearSystem};
use crate::report::Witness;
use crate::sample::TestInputs;
use crate::scalar::Scalar;

type Outcome = std::result::Result<(), Witness>;

fn w3(alg: &dyn Algebra, a: &Vec1, b: &Vec1, c: &Vec1) -> Witness {
    Witness::new().with("a", fmt1(alg, a)).with("b", fmt1(alg, b)).with("c", fmt1(alg, c))
}

fn w2(alg: &dyn Algebra, a: &Vec1, b: &Vec1) -> Witness {
    Witness::new().with("a", fmt1(alg, a)).with("b", fmt1(alg, b))
}

/// (T2⊗ι)(ι⊗T1) = (ι⊗T1)(T2⊗ι) on the test triples.
pub fn check_coassociativity(alg: &dyn Algebra, cp: &dyn Coproduct, inputs: &TestInputs) -> Outcome {
    for (a, b, c) in &inputs.triples {
        let x = tensor3(a, b, c);
        let lhs = map_legs3(&map_legs3(&x, 1, |p, q| cp.t1(p, q)), 0, |p, q| cp.t2(p, q));
        let rhs = map_legs3(&map_legs3(&x, 0, |p, q| cp.t2(p, q)), 1, |p, q| cp.t1(p, q));
        if lhs != rhs {
            return Err(w3(alg, a, b, c));
        }
    }
    Ok(())
}

/// Δ(ab) = Δ(a)Δ(b) through slices: T1(ab⊗c) = Δ(a)T1(b⊗c) and
/// T2(a⊗bc) = T2(a⊗b)Δ(c).
pub fn check_homomorphism(alg: &dyn Algebra, cp: &dyn Coproduct, inputs: &TestInputs) -> Outcome {
    for (a, b, c) in &inputs.triples {
        let lhs = t1(cp, &mul(alg, a, b).tensor(c));
        let inner = t1(cp, &b.tensor(c));
        let rhs = a.apply(|&i| delta_left(alg, cp, i, &inner));
        if lhs != rhs {
            return Err(w3(alg, a, b, c).with("slice", "T1"));
        }
        let lhs = t2(cp, &a.tensor(&mul(alg, b, c)));
        let inner = t2(cp, &a.tensor(b));
        let rhs = c.apply(|&i| delta_right(alg, cp, &inner, i));
        if lhs != rhs {
            return Err(w3(alg, a, b, c).with("slice", "T2"));
        }
    }
    Ok(())
}

/// T3(a*⊗b*) = T1(a⊗b)* and T4(a*⊗b*) = T2(a⊗b)*.
pub fn check_star_coproduct(alg: &dyn Algebra, cp: &dyn Coproduct, inputs: &TestInputs) -> Outcome {
    for (a, b) in &inputs.pairs {
        let (sa, sb) = (star(alg, a).expect("star"), star(alg, b).expect("star"));
        let x = sa.tensor(&sb);
        if t3(cp, &x) != star2(alg, &t1(cp, &a.tensor(b))).expect("star") {
            return Err(w2(alg, a, b).with("law", "T3(a*⊗b*)=T1(a⊗b)*"));
        }
        if t4(cp, &x) != star2(alg, &t2(cp, &a.tensor(b))).expect("star") {
            return Err(w2(alg, a, b).with("law", "T4(a*⊗b*)=T2(a⊗b)*"));
        }
    }
    Ok(())
}

/// Legs of Δ span A: the right-leg span of (c⊗1)Δ(b) and the left-leg span
/// of Δ(b)(1⊗c) must contain every window basis vector. b and c range over
/// the local window, which is the whole basis for finite algebras.
pub fn check_full(alg: &dyn Algebra, cp: &dyn Coproduct, window: &[Idx]) -> Outcome {
    let tests = alg.local_window(window);
    let mut left = Echelon::new();
    let mut right = Echelon::new();
    for &b in &tests {
        for &c in &tests {
            let mut by_second: BTreeMap<Idx, Vec1> = BTreeMap::new();
            for ((i, k), v) in cp.t1(b, c).iter() {
                by_second.entry(*k).or_default().add_term(*i, v.clone());
            }
            for v in by_second.into_values() {
                left.insert(v);
            }
            let mut by_first: BTreeMap<Idx, Vec1> = BTreeMap::new();
            for ((k, j), v) in cp.t2(c, b).iter() {
                by_first.entry(*k).or_default().add_term(*j, v.clone());
            }
            for v in by_first.into_values() {
                right.insert(v);
            }
        }
    }
    for &i in window {
        let e = Vec1::basis(i);
        if !left.contains(&e) {
            return Err(Witness::new().with("leg", "left").with("missing", alg.basis_label(i)).with("rank", left.rank()));
        }
        if !right.contains(&e) {
            return Err(Witness::new().with("leg", "right").with("missing", alg.basis_label(i)).with("rank", right.rank()));
        }
    }
    Ok(())
}

/// The weaker non-degeneracy: b = 0 whenever Δ(a)(1⊗b) = 0 for all a, and
/// a = 0 whenever (a⊗1)Δ(b) = 0 for all b.
pub fn check_slice_nondegenerate(alg: &dyn Algebra, cp: &dyn Coproduct, window: &[Idx]) -> Outcome {
    let tests = alg.local_window(window);
    for side in ["T1", "T2"] {
        let mut ech = Echelon::with_provenance();
        for (n, &b) in window.iter().enumerate() {
            let mut row: FinVec<(Idx, Idx, Idx)> = FinVec::zero();
            for &a in &tests {
                let v = if side == "T1" { cp.t1(a, b) } else { cp.t2(b, a) };
                for ((i, j), c) in v.iter() {
                    row.add_term((a, *i, *j), c.clone());
                }
            }
            if let Some(comb) = ech.factor(&row) {
                let mut x = Vec1::basis(b);
                for (m, c) in comb.iter() {
                    x.add_term(window[*m], -c);
                }
                return Err(Witness::new().with("slice", side).with("element", fmt1(alg, &x)));
            }
            ech.insert_tracked(row, n);
        }
    }
    Ok(())
}

/// Both counit laws for a given functional.
pub fn counit_laws(
    alg: &dyn Algebra,
    cp: &dyn Coproduct,
    eps: &dyn Fn(Idx) -> Scalar,
    inputs: &TestInputs,
) -> Outcome {
    for (a, b) in &inputs.pairs {
        let ab = mul(alg, a, b);
        let l = contract_leg2(&t1(cp, &a.tensor(b)), 0, eps);
        if l != ab {
            return Err(w2(alg, a, b).with("law", "(ε⊗ι)T1=m").with("got", fmt1(alg, &l)));
        }
        let r = contract_leg2(&t2(cp, &a.tensor(b)), 1, eps);
        if r != ab {
            return Err(w2(alg, a, b).with("law", "(ι⊗ε)T2=m").with("got", fmt1(alg, &r)));
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CounitOutcome {
    Unique(Vec<Scalar>),
    NoSolution,
    NotUnique { dim: usize },
}

/// Solve both counit laws as one linear system in the values ε(e_i).
pub fn solve_counit(alg: &dyn Algebra, cp: &dyn Coproduct) -> Result<CounitOutcome> {
    let b = basis(alg)?;
    let mut sys = LinearSystem::new(b.len());
    for &x in &b {
        for &y in &b {
            let ab = alg.mul_basis(x, y);
            // (ε⊗ι)T1: for each second index k, Σ_i T1_{ik} ε_i = (ab)_k.
            let mut eqs: BTreeMap<Idx, FinVec<usize>> = ab.keys().map(|&k| (k, FinVec::zero())).collect();
            for ((i, k), c) in cp.t1(x, y).iter() {
                eqs.entry(*k).or_default().add_term(*i, c.clone());
            }
            for (k, lhs) in &eqs {
                sys.add_equation(lhs, &ab.get(k));
            }
            let mut eqs: BTreeMap<Idx, FinVec<usize>> = ab.keys().map(|&k| (k, FinVec::zero())).collect();
            for ((k, j), c) in cp.t2(x, y).iter() {
                eqs.entry(*k).or_default().add_term(*j, c.clone());
            }
            for (k, lhs) in &eqs {
                sys.add_equation(lhs, &ab.get(k));
            }
        }
    }
    Ok(match sys.solve() {
        Err(_) => CounitOutcome::NoSolution,
        Ok(sol) if !sol.is_unique() => CounitOutcome::NotUnique { dim: sol.nullspace.len() },
        Ok(sol) => CounitOutcome::Unique(b.iter().map(|i| sol.particular.get(i)).collect()),
    })
}

/// Render a functional for witnesses.
pub fn fmt_functional(alg: &dyn Algebra, values: &[Scalar]) -> String {
    let v = Vec1::from_terms(values.iter().cloned().enumerate());
    fmt1(alg, &v)
}
