//! The individual axiom groups of a weak multiplier Hopf algebra.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::extend::{delta_hom, delta_id_hom, e_leg_multiplier, e_multiplier, element_multiplier, id_delta_hom, Extension};
use super::solve::{basis_pairs, kernel_basis, kernel_lhs, kernel_rhs, solve_f, KernelKind};
use crate::algebra::{
    fmt1, fmt2, fmt3, lmul_leg2, map_both2, rmul_leg2, map_leg2, map_legs3, mul, mul3, star, star2, tensor_12, tensor_23, Algebra, Multiplier,
};
use crate::antipode::{
    antipode_from_r, build_r_from_antipode, check_anti_algebra, check_anti_coalgebra, check_antipode_identities,
    check_geninv_conditions, check_relations, check_star_involutive, delta_element, derive_antipode,
    GeneralizedInverse, IdentitySide,
};
use crate::coproduct::{t1, t2, t3, t4};
use crate::error::Error;
use crate::finvec::{tensor3, Idx, Vec1, Vec2, Vec3};
use crate::linalg::Echelon;
use crate::report::{Report, Witness};
use crate::sample::{random_element, TestInputs};
use crate::structure::{apply1, apply2, AntipodeMap, Op1, Side, Wmha};

type Outcome = std::result::Result<(), Witness>;

/// Basis and unit of a finite unital structure.
#[derive(Clone, Debug)]
pub struct Finite {
    pub basis: Vec<Idx>,
    pub unit: Vec1,
    /// Cap on dim(A)³ for the dense solvers.
    pub cap: usize,
}

impl Finite {
    pub fn of(alg: &dyn Algebra, cap: usize) -> Option<Finite> {
        let n = alg.dim()?;
        Some(Finite { basis: (0..n).collect(), unit: alg.unit()?, cap })
    }

    pub fn pairs(&self) -> Vec<Vec2> {
        basis_pairs(&self.basis).into_iter().map(Vec2::basis).collect()
    }

    pub fn triples(&self) -> Vec<(Idx, Idx, Idx)> {
        let b = &self.basis;
        b.iter().flat_map(|&x| b.iter().flat_map(move |&y| b.iter().map(move |&z| (x, y, z)))).collect()
    }
}

fn err(e: &Error) -> Witness {
    Witness::new().with("error", e)
}

fn compare2(alg: &dyn Algebra, xs: &[Vec2], lhs: impl Fn(&Vec2) -> Vec2, rhs: impl Fn(&Vec2) -> Vec2) -> Outcome {
    for x in xs {
        let (l, r) = (lhs(x), rhs(x));
        if l != r {
            return Err(Witness::new().with("x", fmt2(alg, x)).with("lhs", fmt2(alg, &l)).with("rhs", fmt2(alg, &r)));
        }
    }
    Ok(())
}

fn input_pairs(inputs: &TestInputs) -> Vec<Vec2> {
    inputs.pairs.iter().map(|(a, b)| a.tensor(b)).collect()
}

fn input_triples(inputs: &TestInputs) -> Vec<Vec3> {
    inputs.triples.iter().map(|(a, b, c)| tensor3(a, b, c)).collect()
}

fn compare3(alg: &dyn Algebra, xs: &[Vec3], lhs: impl Fn(&Vec3) -> Vec3, rhs: impl Fn(&Vec3) -> Vec3) -> Outcome {
    for x in xs {
        let (l, r) = (lhs(x), rhs(x));
        if l != r {
            return Err(Witness::new().with("x", fmt3(alg, x)).with("lhs", fmt3(alg, &l)).with("rhs", fmt3(alg, &r)));
        }
    }
    Ok(())
}

/// E² = E, EΔ(a) = Δ(a) = Δ(a)E through slices, commutation of E⊗1 with
/// 1⊗E, and (Δ⊗ι)(E) = (ι⊗Δ)(E) = (E⊗1)(1⊗E) in the unital case.
pub fn check_e_laws(w: &Wmha, inputs: &TestInputs, fin: Option<&Finite>, report: &mut Report) {
    let alg = w.algebra();
    let cp = w.cp.as_ref();
    let xs = input_pairs(inputs);
    report.record(
        "idempotent.square",
        compare2(alg, &xs, |x| w.e.left(&w.e.left(x)), |x| w.e.left(x))
            .and_then(|_| compare2(alg, &xs, |x| w.e.right(&w.e.right(x)), |x| w.e.right(x)))
            .and_then(|_| compare2(alg, &xs, |x| w.e.right(&w.e.left(x)), |x| w.e.left(&w.e.right(x)))),
    );
    report.record(
        "idempotent.absorbs",
        compare2(alg, &xs, |x| w.e.left(&t1(cp, x)), |x| t1(cp, x))
            .and_then(|_| compare2(alg, &xs, |x| w.e.right(&t2(cp, x)), |x| t2(cp, x))),
    );
    let ys = input_triples(inputs);
    let (l, r) = (w.e.left.clone(), w.e.right.clone());
    report.record(
        "idempotent.commute",
        compare3(
            alg,
            &ys,
            |y| map_legs3(&map_legs3(y, 1, |p, q| l(p, q)), 0, |p, q| l(p, q)),
            |y| map_legs3(&map_legs3(y, 0, |p, q| l(p, q)), 1, |p, q| l(p, q)),
        )
        .and_then(|_| {
            compare3(
                alg,
                &ys,
                |y| map_legs3(&map_legs3(y, 1, |p, q| r(p, q)), 0, |p, q| r(p, q)),
                |y| map_legs3(&map_legs3(y, 0, |p, q| r(p, q)), 1, |p, q| r(p, q)),
            )
        }),
    );
    let (t1m, t2m) = (|p, q| cp.t1(p, q), |p, q| cp.t2(p, q));
    report.record(
        "idempotent.t1r1-coproduct",
        compare3(
            alg,
            &ys,
            |y| map_legs3(&map_legs3(y, 0, |p, q| l(p, q)), 1, t1m),
            |y| map_legs3(&map_legs3(y, 1, t1m), 0, |p, q| l(p, q)),
        ),
    );
    report.record(
        "idempotent.t2r2-coproduct",
        compare3(
            alg,
            &ys,
            |y| map_legs3(&map_legs3(y, 1, |p, q| r(p, q)), 0, t2m),
            |y| map_legs3(&map_legs3(y, 0, t2m), 1, |p, q| r(p, q)),
        ),
    );
    match (fin, &w.e.element) {
        (Some(f), Some(e)) => {
            let u = &f.unit;
            let mut de = Vec3::zero();
            let mut ed = Vec3::zero();
            for ((p, q), c) in e.iter() {
                let dp = delta_element(alg, cp, &Vec1::basis(*p)).expect("unital");
                de.add_scaled(&tensor_12(&dp, &Vec1::basis(*q)), c);
                let dq = delta_element(alg, cp, &Vec1::basis(*q)).expect("unital");
                ed.add_scaled(&tensor_23(&Vec1::basis(*p), &dq), c);
            }
            let prod = mul3(alg, &tensor_12(e, u), &tensor_23(u, e));
            let outcome = if de != ed {
                Err(Witness::new().with("(Δ⊗ι)E", fmt3(alg, &de)).with("(ι⊗Δ)E", fmt3(alg, &ed)))
            } else if de != prod {
                Err(Witness::new().with("(Δ⊗ι)E", fmt3(alg, &de)).with("(E⊗1)(1⊗E)", fmt3(alg, &prod)))
            } else {
                Ok(())
            };
            report.record("idempotent.coproduct", outcome);
        }
        _ => report.skip("idempotent.coproduct", "needs E as an element of A⊗A"),
    }
}

/// The window used for spans: all of A when finite, else the check window
/// and its local closure.
fn span_windows(w: &Wmha, inputs: &TestInputs, fin: Option<&Finite>) -> (Vec<Idx>, Vec<Idx>) {
    match fin {
        Some(f) => (f.basis.clone(), f.basis.clone()),
        None => (inputs.window.clone(), w.alg.local_window(&inputs.window)),
    }
}

fn span_inclusion(alg: &dyn Algebra, small: &[Vec2], big: &[Vec2], what: &str) -> Outcome {
    let ech = Echelon::from_vectors(big);
    match small.iter().find(|x| !ech.contains(x)) {
        Some(x) => Err(Witness::new().with("inclusion", what).with("vector", fmt2(alg, x)).with("rank", ech.rank())),
        None => Ok(()),
    }
}

/// Ran(T1) = E(A⊗A) and Ran(T2) = (A⊗A)E. On an infinite algebra, images of
/// window tensors must lie in the span of images of the closed window.
pub fn check_ranges(w: &Wmha, inputs: &TestInputs, fin: Option<&Finite>, report: &mut Report) {
    let alg = w.algebra();
    let cp = w.cp.as_ref();
    let (win, local) = span_windows(w, inputs, fin);
    let on = |v: &[Idx], f: &dyn Fn(&Vec2) -> Vec2| -> Vec<Vec2> {
        basis_pairs(v).into_iter().map(|k| f(&Vec2::basis(k))).collect()
    };
    let t1v = |x: &Vec2| t1(cp, x);
    let t2v = |x: &Vec2| t2(cp, x);
    let el = |x: &Vec2| w.e.left(x);
    let er = |x: &Vec2| w.e.right(x);
    report.record(
        "idempotent.range-t1",
        span_inclusion(alg, &on(&win, &t1v), &on(&local, &el), "Ran(T1) ⊆ E(A⊗A)")
            .and_then(|_| span_inclusion(alg, &on(&win, &el), &on(&local, &t1v), "E(A⊗A) ⊆ Ran(T1)")),
    );
    report.record(
        "idempotent.range-t2",
        span_inclusion(alg, &on(&win, &t2v), &on(&local, &er), "Ran(T2) ⊆ (A⊗A)E")
            .and_then(|_| span_inclusion(alg, &on(&win, &er), &on(&local, &t2v), "(A⊗A)E ⊆ Ran(T2)")),
    );
}

/// Ker(T1) = span (a⊗1)(1−F1)(1⊗b) and Ker(T2) = span (a⊗1)(1−F2)(1⊗b),
/// plus idempotency of the sandwich projections.
pub fn check_kernels(w: &Wmha, inputs: &TestInputs, fin: Option<&Finite>, report: &mut Report) {
    let alg = w.algebra();
    let cp = w.cp.as_ref();
    let (win, local) = span_windows(w, inputs, fin);
    for (k, f, id) in [(1u8, &w.f1, "kernel.t1"), (2u8, &w.f2, "kernel.t2")] {
        let sandwiches = |v: &[Idx]| -> Vec<Vec2> {
            basis_pairs(v).into_iter().map(|(a, b)| Vec2::basis((a, b)).sub(&f(a, b))).collect()
        };
        let outcome = match kernel_basis(cp, k, &win) {
            Err(e) => Err(err(&e)),
            Ok(ker) => {
                let t = |x: &Vec2| if k == 1 { t1(cp, x) } else { t2(cp, x) };
                let small = sandwiches(&win);
                match small.iter().find(|x| !t(x).is_zero()) {
                    Some(x) => Err(Witness::new().with("sandwich outside the kernel", fmt2(alg, x))),
                    None => span_inclusion(alg, &ker, &sandwiches(&local), "Ker ⊆ span (1−F) sandwiches")
                        .map_err(|w| w.with("dim Ker", ker.len())),
                }
            }
        };
        report.record(id, outcome);
    }
    let xs = input_pairs(inputs);
    for (f, id) in [(&w.f1, "kernel.f1-idempotent"), (&w.f2, "kernel.f2-idempotent")] {
        report.record(id, compare2(alg, &xs, |x| apply2(f, &apply2(f, x)), |x| apply2(f, x)));
    }
}

/// F as an element of A⊗A from its inner sandwiches with the unit.
fn f_element(f: &crate::structure::Op2, unit: &Vec1) -> Vec2 {
    crate::structure::bilinear2(f, unit, unit)
}

/// E13(F1⊗1) = E13(1⊗E), (1⊗F2)E13 = (E⊗1)E13, and the coproduct formulas
/// for F1 and F2, all as elements in the unital case.
pub fn check_f_identities(w: &Wmha, fin: Option<&Finite>, report: &mut Report) {
    let ids = ["kernel.f1-identity", "kernel.f2-identity", "kernel.f1-coproduct", "kernel.f2-coproduct"];
    let (Some(f), Some(e)) = (fin, &w.e.element) else {
        for id in ids {
            report.skip(id, "needs a finite unital algebra");
        }
        return;
    };
    let alg = w.algebra();
    let cp = w.cp.as_ref();
    let u = &f.unit;
    let f1 = f_element(&w.f1, u);
    let f2 = f_element(&w.f2, u);
    for (kind, fe, id) in [(KernelKind::F1, &f1, ids[0]), (KernelKind::F2, &f2, ids[1])] {
        let (l, r) = (kernel_lhs(alg, u, e, kind, fe), kernel_rhs(alg, u, e, kind));
        report.record(
            id,
            if l == r { Ok(()) } else { Err(Witness::new().with("lhs", fmt3(alg, &l)).with("rhs", fmt3(alg, &r))) },
        );
    }
    let d = |p: Idx| delta_element(alg, cp, &Vec1::basis(p)).expect("unital");
    let mut d_f1 = Vec3::zero();
    let mut f1_d = Vec3::zero();
    let mut d_f2 = Vec3::zero();
    let mut f2_d = Vec3::zero();
    for ((p, q), c) in f1.iter() {
        d_f1.add_scaled(&tensor_12(&d(*p), &Vec1::basis(*q)), c);
        f1_d.add_scaled(&tensor_23(&Vec1::basis(*p), &d(*q)), c);
    }
    for ((p, q), c) in f2.iter() {
        d_f2.add_scaled(&tensor_12(&d(*p), &Vec1::basis(*q)), c);
        f2_d.add_scaled(&tensor_23(&Vec1::basis(*p), &d(*q)), c);
    }
    // Third legs of F1 and first legs of F2 multiply in the opposite algebra.
    let mut f1_13_e = Vec3::zero();
    for ((p, q), c) in f1.iter() {
        for ((x, y), k) in e.iter() {
            let r = mul(alg, &Vec1::basis(*y), &Vec1::basis(*q));
            f1_13_e.add_scaled(&tensor3(&Vec1::basis(*p), &Vec1::basis(*x), &r), &(c * k));
        }
    }
    let mut e_f2_13 = Vec3::zero();
    for ((p, q), c) in f2.iter() {
        for ((x, y), k) in e.iter() {
            let l = mul(alg, &Vec1::basis(*p), &Vec1::basis(*x));
            e_f2_13.add_scaled(&tensor3(&l, &Vec1::basis(*y), &Vec1::basis(*q)), &(c * k));
        }
    }
    let e1_1f1 = mul3(alg, &tensor_12(e, u), &tensor_23(u, &f1));
    let f21_1e = mul3(alg, &tensor_12(&f2, u), &tensor_23(u, e));
    let eq = |a: &Vec3, b: &Vec3, what: &str| -> Outcome {
        if a == b {
            Ok(())
        } else {
            Err(Witness::new().with("formula", what).with("lhs", fmt3(alg, a)).with("rhs", fmt3(alg, b)))
        }
    };
    report.record(
        ids[2],
        eq(&d_f1, &e1_1f1, "(Δ⊗ι)F1 = (E⊗1)(1⊗F1)").and_then(|_| eq(&f1_d, &f1_13_e, "(ι⊗Δ)F1 = (F1)13(1⊗E)")),
    );
    report.record(
        ids[3],
        eq(&f2_d, &f21_1e, "(ι⊗Δ)F2 = (F2⊗1)(1⊗E)").and_then(|_| eq(&d_f2, &e_f2_13, "(Δ⊗ι)F2 = (E⊗1)(F2)13")),
    );
}

/// Generalized-inverse conditions and the module and Δ rules for R1 and R2, the derivation of
/// S1 and S2 from them, the antipode identities, S1 = S2 and the bridge
/// identities, and the equivalence of S1 = S2 with the F identities.
pub fn check_antipodes(w: &Wmha, inputs: &TestInputs, fin: Option<&Finite>, report: &mut Report) {
    let alg = w.algebra();
    let cp = w.cp.as_ref();
    let g1 = GeneralizedInverse::new(1, w.r1.clone());
    let g2 = GeneralizedInverse::new(2, w.r2.clone());
    report.extend(check_geninv_conditions(&g1, alg, cp, inputs));
    report.extend(check_geninv_conditions(&g2, alg, cp, inputs));
    let t1x = |x: &Vec2| t1(cp, x);
    let t2x = |x: &Vec2| t2(cp, x);
    report.record(
        "inverse.r1.range",
        pairs_outcome(alg, inputs, |a, b| t1x(&g1.apply(&a.tensor(b))), |a, b| w.e.left(&a.tensor(b))),
    );
    report.record(
        "inverse.r2.range",
        pairs_outcome(alg, inputs, |a, b| t2x(&g2.apply(&a.tensor(b))), |a, b| w.e.right(&a.tensor(b))),
    );
    report.record(
        "inverse.r1.kernel",
        pairs_outcome(alg, inputs, |a, b| g1.apply(&t1x(&a.tensor(b))), |a, b| w.f1(a, b)),
    );
    report.record(
        "inverse.r2.kernel",
        pairs_outcome(alg, inputs, |a, b| g2.apply(&t2x(&a.tensor(b))), |a, b| w.f2(a, b)),
    );
    let triples_outcome = |lhs: &dyn Fn(&Vec1, &Vec1, &Vec1) -> Vec2, rhs: &dyn Fn(&Vec1, &Vec1, &Vec1) -> Vec2| -> Outcome {
        for (a, b, c) in &inputs.triples {
            let (l, r) = (lhs(a, b, c), rhs(a, b, c));
            if l != r {
                return Err(Witness::new()
                    .with("a", fmt1(alg, a))
                    .with("b", fmt1(alg, b))
                    .with("c", fmt1(alg, c))
                    .with("lhs", fmt2(alg, &l))
                    .with("rhs", fmt2(alg, &r)));
            }
        }
        Ok(())
    };
    let q1 = |x: &Vec2| g1.apply(&t1x(x));
    let q2 = |x: &Vec2| g2.apply(&t2x(x));
    report.record(
        "kernel.q1-module",
        triples_outcome(&|a, b, c| q1(&mul(alg, a, b).tensor(c)), &|a, b, c| lmul_leg2(alg, 0, a, &q1(&b.tensor(c)))),
    );
    report.record(
        "kernel.q2-module",
        triples_outcome(&|a, b, c| q2(&a.tensor(&mul(alg, b, c))), &|a, b, c| rmul_leg2(alg, 1, &q2(&a.tensor(b)), c)),
    );
    report.record("antipode.derived", derived_matches(w, &g1, &g2, inputs, fin));
    report.extend(check_antipode_identities(alg, cp, &w.s1, inputs, IdentitySide::Direct));
    let s12 = crate::antipode::check_s1_equals_s2(alg, &w.s1, &w.s2, inputs);
    let s12_ok = s12.is_ok();
    report.record("antipode.s1-equals-s2", s12);
    report.record("antipode.bridge", crate::antipode::check_bridge(alg, cp, &w.s1, &w.s2, inputs));
    let f_ok = ["kernel.f1-identity", "kernel.f2-identity"].map(|id| report.status(id));
    use crate::report::Status;
    match f_ok {
        [Some(Status::Skipped), _] | [_, Some(Status::Skipped)] | [None, _] | [_, None] => {
            report.skip("antipode.equivalence", "the F identities were not evaluated")
        }
        [Some(a), Some(b)] => {
            let f_hold = a == Status::Pass && b == Status::Pass;
            report.record(
                "antipode.equivalence",
                if f_hold == s12_ok {
                    Ok(())
                } else {
                    Err(Witness::new().with("S1 = S2", s12_ok).with("F identities", f_hold))
                },
            );
        }
    }
}

fn derived_matches(w: &Wmha, g1: &GeneralizedInverse, g2: &GeneralizedInverse, inputs: &TestInputs, fin: Option<&Finite>) -> Outcome {
    let alg = w.algebra();
    for (gi, s) in [(g1, &w.s1), (g2, &w.s2)] {
        let derived = match fin {
            Some(f) => derive_antipode(gi, w.alg.clone(), w.cp.clone(), &w.eps, &f.basis).map_err(|e| err(&e).with("k", gi.k))?,
            None => {
                let d = antipode_from_r(gi, &w.eps);
                let rebuilt = build_r_from_antipode(gi.k, w.alg.clone(), w.cp.clone(), s).map_err(|e| err(&e))?;
                for &a in &inputs.window {
                    for &b in &inputs.window {
                        if (gi.r)(a, b) != (rebuilt.r)(a, b) {
                            return Err(Witness::new()
                                .with("k", gi.k)
                                .with("a", alg.basis_label(a))
                                .with("b", alg.basis_label(b)));
                        }
                    }
                }
                d
            }
        };
        for (a, b) in &inputs.pairs {
            let (l, r) = (derived.act(a, b), s.act(a, b));
            if l != r {
                return Err(Witness::new()
                    .with("k", gi.k)
                    .with("a", fmt1(alg, a))
                    .with("b", fmt1(alg, b))
                    .with("derived", fmt1(alg, &l))
                    .with("given", fmt1(alg, &r)));
            }
        }
    }
    Ok(())
}

/// (ι⊗S⁻¹)(E(a⊗S(b))) = (1⊗b)F3(a⊗1).
pub fn f3_outer(w: &Wmha, s: &Op1, si: &Op1, a: &Vec1, b: &Vec1) -> Vec2 {
    map_leg2(&w.e.left(&a.tensor(&apply1(s, b))), 1, |q| si(q))
}

/// (S⁻¹⊗ι)((S(a)⊗b)E) = (1⊗b)F4(a⊗1).
pub fn f4_outer(w: &Wmha, s: &Op1, si: &Op1, a: &Vec1, b: &Vec1) -> Vec2 {
    map_leg2(&w.e.right(&apply1(s, a).tensor(b)), 0, |p| si(p))
}

fn pairs_outcome(
    alg: &dyn Algebra,
    inputs: &TestInputs,
    lhs: impl Fn(&Vec1, &Vec1) -> Vec2,
    rhs: impl Fn(&Vec1, &Vec1) -> Vec2,
) -> Outcome {
    for (a, b) in &inputs.pairs {
        let (l, r) = (lhs(a, b), rhs(a, b));
        if l != r {
            return Err(Witness::new()
                .with("a", fmt1(alg, a))
                .with("b", fmt1(alg, b))
                .with("lhs", fmt2(alg, &l))
                .with("rhs", fmt2(alg, &r)));
        }
    }
    Ok(())
}

pub const REGULAR_IDS: [&str; 19] = [
    "regular.anti-algebra",
    "regular.anti-coalgebra",
    "regular.e-symmetry",
    "regular.f2-symmetry",
    "regular.f1-from-e",
    "regular.f2-from-e",
    "regular.f3-from-e",
    "regular.f4-from-e",
    "regular.f3-identity",
    "regular.f4-identity",
    "regular.r3-range",
    "regular.r3-kernel",
    "regular.r4-range",
    "regular.r4-kernel",
    "regular.counit-opposite-slices",
    "antipode.inverse-identity-a",
    "antipode.inverse-identity-s",
    "antipode.s2-conjugate",
    "antipode.s3-inverse",
];

/// Bijectivity of S and every consequence of regularity. Returns S and S⁻¹
/// when they exist.
pub fn check_regular(w: &Wmha, inputs: &TestInputs, fin: Option<&Finite>, report: &mut Report) -> Option<(Op1, Op1)> {
    let alg = w.algebra();
    let cp = w.cp.as_ref();
    let bij = match (cp.is_regular(), w.antipode(), w.antipode_inverse()) {
        (true, Some(s), Some(si)) => {
            let (s, si) = (s.clone(), si.clone());
            let round = inputs.singles.iter().find(|a| apply1(&si, &apply1(&s, a)) != **a || apply1(&s, &apply1(&si, a)) != **a);
            match round {
                Some(a) => {
                    report.fail("regular.bijective", Witness::new().with("a", fmt1(alg, a)).with("reason", "S⁻¹S ≠ ι"));
                    None
                }
                None => {
                    report.pass("regular.bijective");
                    Some((s, si))
                }
            }
        }
        (regular, s, si) => {
            report.fail(
                "regular.bijective",
                Witness::new()
                    .with("coproduct regular", regular)
                    .with("S maps A to A", s.is_some())
                    .with("S invertible", si.is_some()),
            );
            None
        }
    };
    let Some((s, si)) = bij else {
        for id in REGULAR_IDS.iter().chain(["antipode.s4-inverse", "antipode.star-s3", "antipode.star-s4"].iter()) {
            report.skip(id, "S is not a bijection of A");
        }
        for k in [3, 4] {
            for part in ["trt", "rtr", "projections", "module"] {
                report.skip(&format!("inverse.r{k}.{part}"), "S is not a bijection of A");
            }
        }
        return None;
    };
    let sv = |a: &Vec1| apply1(&s, a);
    let ss2 = |x: &Vec2| map_both2(x, |p| s(p), |q| s(q));
    report.record("regular.anti-algebra", check_anti_algebra(alg, &s, inputs));
    report.record("regular.anti-coalgebra", check_anti_coalgebra(alg, cp, &s, &si, inputs));
    report.record(
        "regular.e-symmetry",
        pairs_outcome(alg, inputs, |a, b| ss2(&w.e.right(&a.tensor(b))), |a, b| w.e.left(&sv(b).tensor(&sv(a))).flip()),
    );
    report.record(
        "regular.f2-symmetry",
        pairs_outcome(alg, inputs, |a, b| ss2(&w.f2(a, b)).flip(), |a, b| w.f1(&sv(b), &sv(a))),
    );
    report.record(
        "regular.f1-from-e",
        pairs_outcome(alg, inputs, |a, b| w.f1(a, &sv(b)), |a, b| map_leg2(&w.e.right(&a.tensor(b)), 1, |q| s(q))),
    );
    report.record(
        "regular.f2-from-e",
        pairs_outcome(alg, inputs, |a, b| w.f2(&sv(a), b), |a, b| map_leg2(&w.e.left(&a.tensor(b)), 0, |p| s(p))),
    );
    match (fin, &w.e.element) {
        (Some(f), Some(e)) => {
            let u = &f.unit;
            let f3 = map_leg2(e, 1, |q| si(q));
            let f4 = map_leg2(e, 0, |p| si(p));
            for (kind, fe, from_e, ident) in [
                (KernelKind::F3, &f3, "regular.f3-from-e", "regular.f3-identity"),
                (KernelKind::F4, &f4, "regular.f4-from-e", "regular.f4-identity"),
            ] {
                report.record(
                    from_e,
                    match solve_f(alg, e, kind, f.cap) {
                        Ok(solved) if &solved == fe => Ok(()),
                        Ok(solved) => Err(Witness::new().with("solved", fmt2(alg, &solved)).with("formula", fmt2(alg, fe))),
                        Err(e) => Err(err(&e)),
                    },
                );
                let (l, r) = (kernel_lhs(alg, u, e, kind, fe), kernel_rhs(alg, u, e, kind));
                report.record(
                    ident,
                    if l == r { Ok(()) } else { Err(Witness::new().with("lhs", fmt3(alg, &l)).with("rhs", fmt3(alg, &r))) },
                );
            }
        }
        _ => {
            for id in ["regular.f3-from-e", "regular.f4-from-e", "regular.f3-identity", "regular.f4-identity"] {
                report.skip(id, "needs a finite unital algebra");
            }
        }
    }

    let s3 = AntipodeMap::from_endo(w.alg.clone(), Side::Right, si.clone(), Some(s.clone()));
    let s4 = AntipodeMap::from_endo(w.alg.clone(), Side::Left, si.clone(), Some(s.clone()));
    let r3 = build_r_from_antipode(3, w.alg.clone(), w.cp.clone(), &s3);
    let r4 = build_r_from_antipode(4, w.alg.clone(), w.cp.clone(), &s4);
    match (r3, r4) {
        (Ok(g3), Ok(g4)) => {
            report.extend(check_geninv_conditions(&g3, alg, cp, inputs));
            report.extend(check_geninv_conditions(&g4, alg, cp, inputs));
            report.record(
                "regular.r3-range",
                pairs_outcome(alg, inputs, |a, b| t3(cp, &g3.apply(&a.tensor(b))), |a, b| w.e.right(&a.tensor(b))),
            );
            report.record(
                "regular.r4-range",
                pairs_outcome(alg, inputs, |a, b| t4(cp, &g4.apply(&a.tensor(b))), |a, b| w.e.left(&a.tensor(b))),
            );
            report.record(
                "regular.r3-kernel",
                pairs_outcome(alg, inputs, |a, b| g3.apply(&t3(cp, &a.tensor(b))), |a, b| f3_outer(w, &s, &si, a, b)),
            );
            report.record(
                "regular.r4-kernel",
                pairs_outcome(alg, inputs, |a, b| g4.apply(&t4(cp, &a.tensor(b))), |a, b| f4_outer(w, &s, &si, a, b)),
            );
            let d3 = antipode_from_r(&g3, &w.eps);
            let d4 = antipode_from_r(&g4, &w.eps);
            report.extend(check_relations(alg, [&w.s1, &w.s2, &d3, &d4], inputs));
        }
        (r3, r4) => {
            let e = r3.err().or(r4.err()).expect("one failed");
            for id in ["regular.r3-range", "regular.r4-range", "regular.r3-kernel", "regular.r4-kernel"] {
                report.fail(id, err(&e));
            }
            for id in ["antipode.s2-conjugate", "antipode.s3-inverse", "antipode.s4-inverse", "antipode.star-s3", "antipode.star-s4"] {
                report.skip(id, "R3 or R4 could not be built");
            }
        }
    }
    report.extend(check_antipode_identities(alg, cp, &w.s1, inputs, IdentitySide::Inverse));
    report.record(
        "regular.counit-opposite-slices",
        inputs.pairs.iter().try_for_each(|(a, b)| {
            let ba = mul(alg, b, a);
            let l = crate::algebra::contract_leg2(&t3(cp, &a.tensor(b)), 0, |i| (w.eps)(i));
            let r = crate::algebra::contract_leg2(&t4(cp, &a.tensor(b)), 1, |i| (w.eps)(i));
            if l == ba && r == ba {
                Ok(())
            } else {
                Err(Witness::new().with("a", fmt1(alg, a)).with("b", fmt1(alg, b)))
            }
        }),
    );
    Some((s, si))
}

/// The involutive structure: ε(a*) = conj ε(a), Δ a *-homomorphism, E* = E,
/// S(S(a)*)* = a, F1* = F3 and F2* = F4.
pub fn check_star(w: &Wmha, inputs: &TestInputs, bij: Option<&(Op1, Op1)>, report: &mut Report) {
    let alg = w.algebra();
    let cp = w.cp.as_ref();
    let ids = ["counit.star", "coproduct.star", "idempotent.star", "star.s-involutive", "star.f1-f3", "star.f2-f4"];
    if !alg.has_star() {
        for id in ids.iter().chain(&["star.t3-t4-conjugate"]) {
            report.skip(id, "no involution");
        }
        return;
    }
    let st = |a: &Vec1| star(alg, a).expect("star");
    let st2 = |x: &Vec2| star2(alg, x).expect("star");
    report.record(
        ids[0],
        inputs.singles.iter().try_for_each(|a| {
            let (l, r) = (w.eps(&st(a)), w.eps(a).conj());
            if l == r {
                Ok(())
            } else {
                Err(Witness::new().with("a", fmt1(alg, a)).with("ε(a*)", l).with("conj ε(a)", r))
            }
        }),
    );
    report.record(ids[1], crate::coproduct::check_star_coproduct(alg, cp, inputs));
    let xs = input_pairs(inputs);
    report.record(ids[2], compare2(alg, &xs, |x| st2(&w.e.left(x)), |x| w.e.right(&st2(x))));
    if cp.is_regular() {
        report.record(
            "star.t3-t4-conjugate",
            compare2(alg, &xs, |x| t3(cp, &st2(x)), |x| st2(&t1(cp, x)))
                .and_then(|_| compare2(alg, &xs, |x| t4(cp, &st2(x)), |x| st2(&t2(cp, x)))),
        );
    } else {
        report.skip("star.t3-t4-conjugate", "coproduct is not regular");
    }
    match bij {
        Some((s, si)) => {
            report.record(ids[3], check_star_involutive(alg, s, inputs));
            report.record(ids[4], pairs_outcome(alg, inputs, |a, b| st2(&w.f1(a, b)), |a, b| f3_outer(w, s, si, &st(a), &st(b))));
            report.record(ids[5], pairs_outcome(alg, inputs, |a, b| st2(&w.f2(a, b)), |a, b| f4_outer(w, s, si, &st(a), &st(b))));
        }
        None => {
            for id in &ids[3..] {
                report.skip(id, "S is not a bijection of A");
            }
        }
    }
}

pub const EXTENSION_IDS: [&str; 5] = [
    "extension.delta-unit",
    "extension.coproduct-of-e",
    "extension.coassociative",
    "extension.order",
    "extension.well-defined",
];

fn same_actions<K: Ord + Clone + Send + Sync + 'static>(
    m: &Multiplier<K>,
    n: &Multiplier<K>,
    window: &[K],
    show: impl Fn(&crate::finvec::FinVec<K>) -> String,
) -> Outcome {
    for x in window {
        let v = crate::finvec::FinVec::basis(x.clone());
        for (side, l, r) in [("left", m.apply_left(&v), n.apply_left(&v)), ("right", m.apply_right(&v), n.apply_right(&v))] {
            if l != r {
                return Err(Witness::new().with("side", side).with("x", show(&v)).with("lhs", show(&l)).with("rhs", show(&r)));
            }
        }
    }
    Ok(())
}

/// The extensions of Δ, Δ⊗ι and ι⊗Δ to multipliers: Δ₁(1) = E, the
/// coproduct of E, extended coassociativity on sampled multipliers, the
/// order relations below E⊗1 and 1⊗E, and independence of the factorization.
pub fn check_extensions(w: &Wmha, fin: Option<&Finite>, samples: usize, seed: u64, report: &mut Report) {
    let Some(f) = fin else {
        for id in EXTENSION_IDS {
            report.skip(id, "needs a finite unital algebra");
        }
        return;
    };
    if let Err(e) = extension_checks(w, f, samples, seed, report) {
        for id in EXTENSION_IDS {
            if report.get(id).is_none() {
                report.fail(id, err(&e));
            }
        }
    }
}

fn extension_checks(w: &Wmha, f: &Finite, samples: usize, seed: u64, report: &mut Report) -> crate::Result<()> {
    let alg = w.algebra();
    let pairs: Vec<(Idx, Idx)> = basis_pairs(&f.basis);
    let triples = f.triples();
    let e = e_multiplier(&w.e);
    let e1 = e_leg_multiplier(&w.e, 0);
    let e2 = e_leg_multiplier(&w.e, 1);
    let show2 = |v: &Vec2| fmt2(alg, v);
    let show3 = |v: &Vec3| fmt3(alg, v);

    let ext = Extension::new(delta_hom(w.alg.clone(), w.cp.clone()), &e, &f.basis, &pairs, false)?;
    let one: Multiplier<Idx> = Multiplier::identity();
    report.record("extension.delta-unit", same_actions(&ext.extend(&one), &e, &pairs, show2));

    let ext_rev = Extension::new(delta_hom(w.alg.clone(), w.cp.clone()), &e, &f.basis, &pairs, true)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ms: Vec<Multiplier<Idx>> = (0..samples)
        .map(|_| element_multiplier(w.alg.clone(), random_element(&mut rng, &f.basis)))
        .collect();
    report.record(
        "extension.well-defined",
        std::iter::once(&one)
            .chain(ms.iter().take(3))
            .try_for_each(|m| same_actions(&ext.extend(m), &ext_rev.extend(m), &pairs, show2)),
    );

    let di = Extension::new(delta_id_hom(w.alg.clone(), w.cp.clone()), &e1, &pairs, &triples, false)?;
    let id = Extension::new(id_delta_hom(w.alg.clone(), w.cp.clone()), &e2, &pairs, &triples, false)?;
    let de = di.extend(&e);
    let ed = id.extend(&e);
    let prod = e1.compose(&e2);
    report.record(
        "extension.coproduct-of-e",
        same_actions(&de, &prod, &triples, show3).and_then(|_| same_actions(&ed, &prod, &triples, show3)),
    );
    report.record(
        "extension.coassociative",
        ms.iter().try_for_each(|m| {
            let d = ext.extend(m);
            same_actions(&di.extend(&d), &id.extend(&d), &triples, show3)
        }),
    );
    report.record(
        "extension.order",
        same_actions(&de.compose(&e1), &de, &triples, show3)
            .and_then(|_| same_actions(&e1.compose(&de), &de, &triples, show3))
            .and_then(|_| same_actions(&ed.compose(&e2), &ed, &triples, show3))
            .and_then(|_| same_actions(&e2.compose(&ed), &ed, &triples, show3)),
    );
    Ok(())
}

/// Whether E acts as the identity, i.e. E = 1⊗1.
pub fn e_is_trivial(w: &Wmha, inputs: &TestInputs, fin: Option<&Finite>) -> bool {
    match (fin, &w.e.element) {
        (Some(f), Some(e)) => *e == f.unit.tensor(&f.unit),
        _ => input_pairs(inputs).iter().all(|x| w.e.left(x) == *x && w.e.right(x) == *x),
    }
}

