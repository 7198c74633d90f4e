//! Conditions on generalized inverses and identities of the antipodes.

use std::sync::Arc;

use super::{delta_element, need_endo, split_left, target_apply, GeneralizedInverse};
use crate::algebra::{fmt1, fmt2, lmul_leg2, map_legs3, mul, multiply_legs, rmul_leg2, star, AlgRef, Algebra};
use crate::coproduct::{canonical_map, check_full, counit_laws, t1, t2, t4, CopRef, Coproduct};
use crate::error::{Error, Result};
use crate::finvec::{tensor3, Idx, Vec1, Vec2, Vec3};
use crate::linalg::Echelon;
use crate::linop::LinOp;
use crate::algebra::Multiplier;
use crate::report::{Report, Verdict, Witness};
use crate::sample::TestInputs;
use crate::structure::{apply1, AntipodeMap, Op1, Wmha};

type Outcome = std::result::Result<(), Witness>;

fn w2(alg: &dyn Algebra, a: &Vec1, b: &Vec1) -> Witness {
    Witness::new().with("a", fmt1(alg, a)).with("b", fmt1(alg, b))
}

fn w3(alg: &dyn Algebra, a: &Vec1, b: &Vec1, c: &Vec1) -> Witness {
    w2(alg, a, b).with("c", fmt1(alg, c))
}

/// Definition of a generalized inverse (TRT = T, RTR = R), the projection
/// ranks, and the commutation rules with multiplication and with Δ.
pub fn check_geninv_conditions(gi: &GeneralizedInverse, alg: &dyn Algebra, cp: &dyn Coproduct, inputs: &TestInputs) -> Report {
    let k = gi.k;
    let id = |s: &str| format!("inverse.r{k}.{s}");
    let mut report = Report::new(format!("R{k}[{}]", alg.name()));
    if matches!(k, 3 | 4) && !cp.is_regular() {
        for s in ["trt", "rtr", "projections", "module"] {
            report.skip(&id(s), "coproduct is not regular");
        }
        return report.conclude();
    }
    let t = |x: &Vec2| canonical_map(k, cp, x).expect("regularity checked");
    let pairs: Vec<Vec2> = inputs.pairs.iter().map(|(a, b)| a.tensor(b)).collect();
    let wx = |x: &Vec2| Witness::new().with("x", fmt2(alg, x));

    report.record(
        &id("trt"),
        pairs.iter().try_for_each(|x| {
            let tx = t(x);
            if t(&gi.apply(&tx)) == tx {
                Ok(())
            } else {
                Err(wx(x).with("T(x)", fmt2(alg, &tx)))
            }
        }),
    );
    report.record(
        &id("rtr"),
        pairs.iter().try_for_each(|x| {
            let rx = gi.apply(x);
            if gi.apply(&t(&rx)) == rx {
                Ok(())
            } else {
                Err(wx(x).with("R(x)", fmt2(alg, &rx)))
            }
        }),
    );
    report.record(&id("projections"), projections(gi, alg, cp, inputs, &pairs));
    report.record(
        &id("module"),
        inputs.triples.iter().try_for_each(|(a, b, c)| {
            let (lhs, rhs) = match k {
                1 => (gi.apply(&a.tensor(&mul(alg, b, c))), rmul_leg2(alg, 1, &gi.apply(&a.tensor(b)), c)),
                2 => (gi.apply(&mul(alg, c, a).tensor(b)), lmul_leg2(alg, 0, c, &gi.apply(&a.tensor(b)))),
                3 => (gi.apply(&a.tensor(&mul(alg, c, b))), lmul_leg2(alg, 1, c, &gi.apply(&a.tensor(b)))),
                _ => (gi.apply(&mul(alg, a, c).tensor(b)), rmul_leg2(alg, 0, &gi.apply(&a.tensor(b)), c)),
            };
            if lhs == rhs {
                Ok(())
            } else {
                Err(w3(alg, a, b, c))
            }
        }),
    );
    if matches!(k, 1 | 2) {
        let r = |p: Idx, q: Idx| (gi.r)(p, q);
        report.record(
            &id("coproduct"),
            inputs.triples.iter().try_for_each(|(a, b, c)| {
                let x = tensor3(a, b, c);
                let (lhs, rhs) = if k == 1 {
                    (
                        map_legs3(&map_legs3(&x, 1, r), 0, |p, q| cp.t2(p, q)),
                        map_legs3(&map_legs3(&x, 0, |p, q| cp.t2(p, q)), 1, r),
                    )
                } else {
                    (
                        map_legs3(&map_legs3(&x, 0, r), 1, |p, q| cp.t1(p, q)),
                        map_legs3(&map_legs3(&x, 1, |p, q| cp.t1(p, q)), 0, r),
                    )
                };
                if lhs == rhs {
                    Ok(())
                } else {
                    Err(w3(alg, a, b, c))
                }
            }),
        );
    }
    report.conclude()
}

fn projections(gi: &GeneralizedInverse, alg: &dyn Algebra, cp: &dyn Coproduct, inputs: &TestInputs, pairs: &[Vec2]) -> Outcome {
    for x in pairs {
        let p = gi.p(cp, x).expect("regularity checked");
        let q = gi.q(cp, x).expect("regularity checked");
        if gi.p(cp, &p).expect("regular") != p {
            return Err(Witness::new().with("projection", "P").with("x", fmt2(alg, x)));
        }
        if gi.q(cp, &q).expect("regular") != q {
            return Err(Witness::new().with("projection", "Q").with("x", fmt2(alg, x)));
        }
    }
    if inputs.exhaustive {
        // Ran(Q) ⊕ Ker(T) = A⊗A ⇔ rank Q = rank T, given TRT = T.
        let (mut rq, mut rt) = (Echelon::new(), Echelon::new());
        for x in pairs {
            rq.insert(gi.q(cp, x).expect("regular"));
            rt.insert(canonical_map(gi.k, cp, x).expect("regular"));
        }
        if rq.rank() != rt.rank() {
            return Err(Witness::new().with("rank Q", rq.rank()).with("rank T", rt.rank()));
        }
    }
    Ok(())
}

/// Δ⁽²⁾(a) = (Δ⊗ι)Δ(a) for unital algebras.
fn delta2(alg: &dyn Algebra, cp: &dyn Coproduct, a: &Vec1) -> Option<Vec3> {
    let d = delta_element(alg, cp, a)?;
    let mut out = Vec3::zero();
    for ((p, q), c) in d.iter() {
        let dp = delta_element(alg, cp, &Vec1::basis(*p))?;
        for ((x, y), e) in dp.iter() {
            out.add_term((*x, *y, *q), c * e);
        }
    }
    Some(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdentitySide {
    /// Σ a(1)S(a(2))a(3) = a and Σ S(a(1))a(2)S(a(3)) = S(a).
    Direct,
    /// The same with reversed legs and S⁻¹.
    Inverse,
}

/// The two antipode identities, multiplied by b on the right. `s` is S1.
pub fn check_antipode_identities(
    alg: &dyn Algebra,
    cp: &dyn Coproduct,
    s: &AntipodeMap,
    inputs: &TestInputs,
    side: IdentitySide,
) -> Report {
    let mut report = Report::new(format!("antipode[{}]", alg.name()));
    let (ida, ids) = match side {
        IdentitySide::Direct => ("antipode.identity-a", "antipode.identity-s"),
        IdentitySide::Inverse => ("antipode.inverse-identity-a", "antipode.inverse-identity-s"),
    };
    let unital = alg.unit().is_some();
    match side {
        IdentitySide::Direct if unital => {
            let mut first: Outcome = Ok(());
            let mut second: Outcome = Ok(());
            for (a, b) in &inputs.pairs {
                let d3 = delta2(alg, cp, a).expect("unital");
                let (mut l1, mut l2) = (Vec1::zero(), Vec1::zero());
                for ((x, y, z), c) in d3.iter() {
                    let (x, y, z) = (Vec1::basis(*x), Vec1::basis(*y), Vec1::basis(*z));
                    l1.add_scaled(&mul(alg, &x, &s.act(&y, &mul(alg, &z, b))), c);
                    l2.add_scaled(&s.act(&x, &mul(alg, &y, &s.act(&z, b))), c);
                }
                if first.is_ok() && l1 != mul(alg, a, b) {
                    first = Err(w2(alg, a, b).with("got", fmt1(alg, &l1)));
                }
                if second.is_ok() && l2 != s.act(a, b) {
                    second = Err(w2(alg, a, b).with("got", fmt1(alg, &l2)));
                }
            }
            report.record(ida, first);
            report.record(ids, second);
        }
        IdentitySide::Direct if s.is_bijective() && cp.is_regular() => {
            report.record(
                ida,
                inputs.pairs.iter().try_for_each(|(a, b)| {
                    let mut got = Vec1::zero();
                    for ((p, q), c) in t1(cp, &a.tensor(b)).iter() {
                        let e = target_apply(alg, cp, s, &Vec1::basis(*p), &Vec1::basis(*q)).expect("covered");
                        got.add_scaled(&e, c);
                    }
                    if got == mul(alg, a, b) {
                        Ok(())
                    } else {
                        Err(w2(alg, a, b).with("got", fmt1(alg, &got)))
                    }
                }),
            );
            let (sm, si) = need_endo(s, 1).expect("bijective");
            report.record(
                ids,
                inputs.triples.iter().try_for_each(|(a, b, c)| {
                    // Σ cS(a(1)) ⊗ a(2) = (S⊗ι)T4(S⁻¹c⊗a)
                    let x = split_left(&t4(cp, &apply1(&si, c).tensor(a)), |p| sm(p));
                    let mut got = Vec1::zero();
                    for ((p, q), k) in x.iter() {
                        let e = target_apply(alg, cp, s, &Vec1::basis(*q), b).expect("covered");
                        got.add_scaled(&mul(alg, &Vec1::basis(*p), &e), k);
                    }
                    if got == mul(alg, c, &s.act(a, b)) {
                        Ok(())
                    } else {
                        Err(w3(alg, a, b, c).with("got", fmt1(alg, &got)))
                    }
                }),
            );
        }
        IdentitySide::Inverse if unital && s.inverse.is_some() => {
            let si = s.inverse.clone().expect("checked");
            let mut first: Outcome = Ok(());
            let mut second: Outcome = Ok(());
            for (a, b) in &inputs.pairs {
                let d3 = delta2(alg, cp, a).expect("unital");
                let (mut l1, mut l2) = (Vec1::zero(), Vec1::zero());
                for ((x, y, z), c) in d3.iter() {
                    let t = mul(alg, &mul(alg, &Vec1::basis(*z), &si(*y)), &Vec1::basis(*x));
                    l1.add_scaled(&mul(alg, &t, b), c);
                    let u = mul(alg, &mul(alg, &si(*z), &Vec1::basis(*y)), &si(*x));
                    l2.add_scaled(&mul(alg, &u, b), c);
                }
                if first.is_ok() && l1 != mul(alg, a, b) {
                    first = Err(w2(alg, a, b).with("got", fmt1(alg, &l1)));
                }
                if second.is_ok() && l2 != mul(alg, &apply1(&si, a), b) {
                    second = Err(w2(alg, a, b).with("got", fmt1(alg, &l2)));
                }
            }
            report.record(ida, first);
            report.record(ids, second);
        }
        _ => {
            report.skip(ida, "needs a unit, or a bijective antipode on a regular coproduct");
            report.skip(ids, "needs a unit, or a bijective antipode on a regular coproduct");
        }
    }
    report.conclude()
}

/// c(S1(a)b) = (cS2(a))b.
pub fn check_s1_equals_s2(alg: &dyn Algebra, s1: &AntipodeMap, s2: &AntipodeMap, inputs: &TestInputs) -> Outcome {
    for (a, b, c) in &inputs.triples {
        let lhs = mul(alg, c, &s1.act(a, b));
        let rhs = mul(alg, &s2.act(a, c), b);
        if lhs != rhs {
            return Err(w3(alg, a, b, c).with("c(S1(a)b)", fmt1(alg, &lhs)).with("(cS2(a))b", fmt1(alg, &rhs)));
        }
    }
    Ok(())
}

/// Σ a(1)S1(a(2)) = Σ a(1)S2(a(2)) and Σ S1(a(1))a(2) = Σ S2(a(1))a(2),
/// each sandwiched between c and b.
pub fn check_bridge(alg: &dyn Algebra, cp: &dyn Coproduct, s1: &AntipodeMap, s2: &AntipodeMap, inputs: &TestInputs) -> Outcome {
    for (a, b, c) in &inputs.triples {
        let (mut l, mut r) = (Vec1::zero(), Vec1::zero());
        for ((p, q), k) in t2(cp, &c.tensor(a)).iter() {
            let (p, q) = (Vec1::basis(*p), Vec1::basis(*q));
            l.add_scaled(&mul(alg, &p, &s1.act(&q, b)), k);
            r.add_scaled(&mul(alg, &s2.act(&q, &p), b), k);
        }
        if l != r {
            return Err(w3(alg, a, b, c).with("identity", "a(1)S(a(2))"));
        }
        let (mut l, mut r) = (Vec1::zero(), Vec1::zero());
        for ((p, q), k) in t1(cp, &a.tensor(b)).iter() {
            let (p, q) = (Vec1::basis(*p), Vec1::basis(*q));
            l.add_scaled(&mul(alg, c, &s1.act(&p, &q)), k);
            r.add_scaled(&mul(alg, &s2.act(&p, c), &q), k);
        }
        if l != r {
            return Err(w3(alg, a, b, c).with("identity", "S(a(1))a(2)"));
        }
    }
    Ok(())
}

/// Relations between S1..S4: the star relations when A has an involution,
/// and S2 = S⁻¹S1S, S3 = S4 = S⁻¹ when S1 is a bijection of A.
pub fn check_relations(
    alg: &dyn Algebra,
    s: [&AntipodeMap; 4],
    inputs: &TestInputs,
) -> Report {
    let [s1, s2, s3, s4] = s;
    let mut report = Report::new(format!("relations[{}]", alg.name()));
    if alg.has_star() {
        let st = |x: &Vec1| star(alg, x).expect("star");
        report.record(
            "antipode.star-s3",
            inputs.pairs.iter().try_for_each(|(a, b)| {
                if s3.act(a, b) == st(&s1.act(&st(a), &st(b))) {
                    Ok(())
                } else {
                    Err(w2(alg, a, b))
                }
            }),
        );
        report.record(
            "antipode.star-s4",
            inputs.pairs.iter().try_for_each(|(a, b)| {
                if s4.act(a, b) == st(&s2.act(&st(a), &st(b))) {
                    Ok(())
                } else {
                    Err(w2(alg, a, b))
                }
            }),
        );
    } else {
        report.skip("antipode.star-s3", "no involution");
        report.skip("antipode.star-s4", "no involution");
    }
    match (&s1.endo, &s1.inverse) {
        (Some(sm), Some(si)) => {
            let (sm, si) = (sm.clone(), si.clone());
            let conj = |a: &Vec1| apply1(&si, &apply1(&sm, &apply1(&sm, a)));
            report.record(
                "antipode.s2-conjugate",
                inputs.pairs.iter().try_for_each(|(a, b)| {
                    if s2.act(a, b) == mul(alg, b, &conj(a)) {
                        Ok(())
                    } else {
                        Err(w2(alg, a, b))
                    }
                }),
            );
            report.record(
                "antipode.s3-inverse",
                inputs.pairs.iter().try_for_each(|(a, b)| {
                    if s3.act(a, b) == mul(alg, b, &apply1(&si, a)) {
                        Ok(())
                    } else {
                        Err(w2(alg, a, b))
                    }
                }),
            );
            report.record(
                "antipode.s4-inverse",
                inputs.pairs.iter().try_for_each(|(a, b)| {
                    if s4.act(a, b) == mul(alg, &apply1(&si, a), b) {
                        Ok(())
                    } else {
                        Err(w2(alg, a, b))
                    }
                }),
            );
        }
        _ => {
            for id in ["antipode.s2-conjugate", "antipode.s3-inverse", "antipode.s4-inverse"] {
                report.skip(id, "S1 is not a bijection of A");
            }
        }
    }
    report.conclude()
}

/// S(ab) = S(b)S(a).
pub fn check_anti_algebra(alg: &dyn Algebra, s: &Op1, inputs: &TestInputs) -> Outcome {
    for (a, b) in &inputs.pairs {
        let lhs = apply1(s, &mul(alg, a, b));
        let rhs = mul(alg, &apply1(s, b), &apply1(s, a));
        if lhs != rhs {
            return Err(w2(alg, a, b).with("S(ab)", fmt1(alg, &lhs)).with("S(b)S(a)", fmt1(alg, &rhs)));
        }
    }
    Ok(())
}

/// Δ(S(a)) = σ(S⊗S)Δ(a) through slices:
/// Δ(S(a))(1⊗b) = σ(S⊗S)((S⁻¹(b)⊗1)Δ(a)).
pub fn check_anti_coalgebra(alg: &dyn Algebra, cp: &dyn Coproduct, s: &Op1, si: &Op1, inputs: &TestInputs) -> Outcome {
    for (a, b) in &inputs.pairs {
        let lhs = t1(cp, &apply1(s, a).tensor(b));
        let x = t2(cp, &apply1(si, b).tensor(a));
        let rhs = x.apply(|&(p, q)| s(p).tensor(&s(q))).flip();
        if lhs != rhs {
            return Err(w2(alg, a, b).with("lhs", fmt2(alg, &lhs)).with("rhs", fmt2(alg, &rhs)));
        }
    }
    Ok(())
}

/// S(S(a)*)* = a.
pub fn check_star_involutive(alg: &dyn Algebra, s: &Op1, inputs: &TestInputs) -> Outcome {
    for a in &inputs.singles {
        let sa = apply1(s, a);
        let got = star(alg, &apply1(s, &star(alg, &sa).expect("star"))).expect("star");
        if &got != a {
            return Err(Witness::new().with("a", fmt1(alg, a)).with("got", fmt1(alg, &got)));
        }
    }
    Ok(())
}

/// The conditions of a unifying multiplier Hopf algebra: regular full
/// coproduct with counit, a bijective anti-(co)algebra antipode, the two
/// antipode identities, and S(S(a)*)* = a when there is an involution.
pub fn unifying_check(w: &Wmha, inputs: &TestInputs) -> Report {
    let alg = w.algebra();
    let cp = w.cp.as_ref();
    let mut report = Report::new(format!("unifying[{}]", w.name));
    let bij = match (w.antipode(), w.antipode_inverse()) {
        (Some(s), Some(si)) => Some((s.clone(), si.clone())),
        _ => None,
    };
    report.record(
        "unifying.regular",
        if cp.is_regular() && bij.is_some() {
            Ok(())
        } else {
            Err(Witness::new().with("regular", cp.is_regular()).with("bijective", bij.is_some()))
        },
    );
    report.record("unifying.full", check_full(alg, cp, &inputs.window));
    report.record("unifying.counit", counit_laws(alg, cp, &|i| (w.eps)(i), inputs));
    match &bij {
        Some((s, si)) => {
            report.record("unifying.anti-algebra", check_anti_algebra(alg, s, inputs));
            report.record("unifying.anti-coalgebra", check_anti_coalgebra(alg, cp, s, si, inputs));
        }
        None => {
            report.skip("unifying.anti-algebra", "S is not a bijection of A");
            report.skip("unifying.anti-coalgebra", "S is not a bijection of A");
        }
    }
    let ids = check_antipode_identities(alg, cp, &w.s1, inputs, IdentitySide::Direct);
    let ok = ids.all_passed();
    report.record(
        "unifying.identities",
        if ok {
            Ok(())
        } else {
            let f = ids.failures().next().map(|c| c.id.clone()).unwrap_or_default();
            Err(Witness::new().with("failed", f))
        },
    );
    match (&bij, alg.has_star()) {
        (Some((s, _)), true) => {
            report.record("unifying.star", check_star_involutive(alg, s, inputs));
        }
        _ => report.skip("unifying.star", "no involution or no bijective antipode"),
    }
    let mut report = report.conclude();
    report.verdict = if report.all_passed() { Verdict::Pass } else { Verdict::Fail };
    report
}

/// ε_s(a) = Σ S(a(1))a(2) and ε_t(a) = Σ a(1)S(a(2)) as multipliers of A.
pub fn source_target(alg: AlgRef, cp: CopRef, s: &AntipodeMap, a: Vec1) -> Result<(Multiplier<Idx>, Multiplier<Idx>)> {
    let unit = alg.unit();
    let covered = s.is_bijective() && cp.is_regular();
    if unit.is_none() && !covered {
        return Err(Error::CoveringFailure("source and target maps need a unit or a bijective antipode".into()));
    }
    let s = Arc::new(s.clone());
    let es_left = {
        let (cp, s, a) = (cp.clone(), s.clone(), a.clone());
        LinOp::new(move |&b: &Idx| {
            let mut out = Vec1::zero();
            for ((p, q), c) in t1(cp.as_ref(), &a.tensor(&Vec1::basis(b))).iter() {
                out.add_scaled(&s.act(&Vec1::basis(*p), &Vec1::basis(*q)), c);
            }
            out
        })
    };
    let es_right = {
        let (alg, cp, s, a, unit) = (alg.clone(), cp.clone(), s.clone(), a.clone(), unit.clone());
        LinOp::new(move |&c: &Idx| {
            let c = Vec1::basis(c);
            match &unit {
                Some(_) => {
                    let d = delta_element(alg.as_ref(), cp.as_ref(), &a).expect("unital");
                    let mut out = Vec1::zero();
                    for ((p, q), k) in d.iter() {
                        out.add_scaled(&mul(alg.as_ref(), &c, &s.act(&Vec1::basis(*p), &Vec1::basis(*q))), k);
                    }
                    out
                }
                None => {
                    let (sm, si) = need_endo(&s, 1).expect("bijective");
                    let x = split_left(&t4(cp.as_ref(), &apply1(&si, &c).tensor(&a)), |p| sm(p));
                    multiply_legs(alg.as_ref(), &x)
                }
            }
        })
    };
    let et_left = {
        let (alg, cp, s, a) = (alg.clone(), cp.clone(), s.clone(), a.clone());
        LinOp::new(move |&b: &Idx| target_apply(alg.as_ref(), cp.as_ref(), &s, &a, &Vec1::basis(b)).expect("covered"))
    };
    let et_right = {
        let (alg, cp, s, a, unit) = (alg.clone(), cp.clone(), s.clone(), a.clone(), unit.clone());
        LinOp::new(move |&c: &Idx| {
            let mut out = Vec1::zero();
            for ((p, q), k) in t2(cp.as_ref(), &Vec1::basis(c).tensor(&a)).iter() {
                let sq = match (&s.endo, &unit) {
                    (Some(sm), _) => sm(*q),
                    (None, Some(u)) => s.act(&Vec1::basis(*q), u),
                    _ => unreachable!("covering checked"),
                };
                out.add_scaled(&mul(alg.as_ref(), &Vec1::basis(*p), &sq), k);
            }
            out
        })
    };
    Ok((Multiplier::two_sided(es_left, es_right), Multiplier::two_sided(et_left, et_right)))
}
