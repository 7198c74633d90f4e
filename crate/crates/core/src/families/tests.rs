use super::*;
use crate::algebra::mul;
use crate::coproduct::{t1, t2};
use crate::groupoid::PairGroupoid;

fn pair(n: usize) -> GroupoidRef {
    Arc::new(PairGroupoid::on(n))
}

fn one(n: usize) -> Vec1 {
    Vec1::from_terms((0..n).map(|p| (p, Scalar::one())))
}

/// Δ(δ_a) as a function on G×G, summed over every composable pair.
fn kg_delta(g: &dyn Groupoid, a: Idx) -> Vec2 {
    let n = g.size().unwrap();
    let mut out = Vec2::zero();
    for p in 0..n {
        for q in 0..n {
            if g.compose(p, q) == Some(a) {
                out.add_term((p, q), Scalar::one());
            }
        }
    }
    out
}

fn mul2(alg: &dyn Algebra, x: &Vec2, y: &Vec2) -> Vec2 {
    crate::algebra::mul2(alg, x, y)
}

#[test]
fn kg_canonical_maps_match_pointwise_products() {
    for n in [2, 3] {
        let g = pair(n);
        let w = build_kg(g.clone()).unwrap().wmha;
        let size = n * n;
        for a in 0..size {
            for b in 0..size {
                let x = Vec2::basis((a, b));
                let lhs = mul2(w.algebra(), &kg_delta(g.as_ref(), a), &one(size).tensor(&Vec1::basis(b)));
                assert_eq!(t1(w.cp.as_ref(), &x), lhs);
                let rhs = mul2(w.algebra(), &Vec1::basis(a).tensor(&one(size)), &kg_delta(g.as_ref(), b));
                assert_eq!(t2(w.cp.as_ref(), &x), rhs);
            }
        }
    }
}

#[test]
fn idempotent_elements_are_the_coproduct_of_one() {
    for build in [build_kg, build_cg] {
        let w = build(pair(3)).unwrap().wmha;
        let u = w.alg.unit().unwrap();
        let e = w.e.element.clone().unwrap();
        assert_eq!(t1(w.cp.as_ref(), &u.tensor(&u)), e);
        for a in 0..9 {
            for b in 0..9 {
                let x = Vec2::basis((a, b));
                assert_eq!(w.e.left(&x), mul2(w.algebra(), &e, &x));
                assert_eq!(w.e.right(&x), mul2(w.algebra(), &x, &e));
            }
        }
    }
}

#[test]
fn closed_form_r_are_generalized_inverses() {
    for build in [build_kg, build_cg] {
        let w = build(pair(3)).unwrap().wmha;
        let cp = w.cp.as_ref();
        for a in 0..9 {
            for b in 0..9 {
                let x = Vec2::basis((a, b));
                assert_eq!(t1(cp, &w.r1(&t1(cp, &x))), t1(cp, &x));
                assert_eq!(w.r1(&t1(cp, &w.r1(&x))), w.r1(&x));
                assert_eq!(t2(cp, &w.r2(&t2(cp, &x))), t2(cp, &x));
                assert_eq!(w.r2(&t2(cp, &w.r2(&x))), w.r2(&x));
            }
        }
    }
}

#[test]
fn cg_unit_counts_objects() {
    let w = build_cg(pair(3)).unwrap().wmha;
    assert_eq!(w.alg.unit().unwrap().len(), 3);
    for p in 0..9 {
        assert_eq!(mul(w.algebra(), &w.alg.unit().unwrap(), &Vec1::basis(p)), Vec1::basis(p));
    }
}

#[test]
fn lazy_groupoid_has_no_unit() {
    let g: GroupoidRef = Arc::new(PairGroupoid::naturals());
    let w = build_kg(g.clone()).unwrap().wmha;
    assert!(w.alg.unit().is_none());
    assert!(w.e.element.is_none());
    assert!(build_cg(g).unwrap().wmha.alg.unit().is_none());
}

#[test]
fn pairing_requires_the_same_groupoid() {
    let kg = build_kg(pair(2)).unwrap();
    let cg = build_cg(pair(2)).unwrap();
    let pr = canonical_pairing(&kg, &cg).unwrap();
    assert_eq!(pr.basis(1, 1), Scalar::one());
    assert_eq!(pr.basis(1, 2), Scalar::zero());
    let other = build_cg(pair(3)).unwrap();
    assert!(matches!(canonical_pairing(&kg, &other), Err(Error::GroupoidMismatch)));
    assert!(canonical_pairing(&cg, &kg).is_err());
}
