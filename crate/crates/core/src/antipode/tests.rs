use super::*;
use crate::families::{build_cg, build_kg, GroupoidRef};
use crate::groupoid::PairGroupoid;
use crate::sample::TestInputs;

fn pair(n: usize) -> GroupoidRef {
    Arc::new(PairGroupoid::on(n))
}

fn naturals() -> GroupoidRef {
    Arc::new(PairGroupoid::naturals())
}

#[test]
fn r_from_closed_form_antipode_matches_closed_form_r() {
    for build in [build_kg, build_cg] {
        for g in [pair(2), pair(3), naturals()] {
            let w = build(g.clone()).unwrap().wmha;
            let r1 = build_r_from_antipode(1, w.alg.clone(), w.cp.clone(), &w.s1).unwrap();
            let r2 = build_r_from_antipode(2, w.alg.clone(), w.cp.clone(), &w.s2).unwrap();
            let win = g.window(3);
            for &a in &win {
                for &b in &win {
                    assert_eq!((r1.r)(a, b), (w.r1)(a, b), "{} R1 at ({a},{b})", w.name);
                    assert_eq!((r2.r)(a, b), (w.r2)(a, b), "{} R2 at ({a},{b})", w.name);
                }
            }
        }
    }
}

#[test]
fn derived_antipode_is_inversion() {
    for build in [build_kg, build_cg] {
        let w = build(pair(3)).unwrap().wmha;
        let basis: Vec<Idx> = (0..9).collect();
        for k in [1u8, 2] {
            let r = if k == 1 { w.r1.clone() } else { w.r2.clone() };
            let gi = GeneralizedInverse::new(k, r);
            let s = derive_antipode(&gi, w.alg.clone(), w.cp.clone(), &w.eps, &basis).unwrap();
            let pg = PairGroupoid::on(3);
            for p in 0..9 {
                assert_eq!(s.apply(&Vec1::basis(p)).unwrap(), Vec1::basis(crate::groupoid::Groupoid::inverse(&pg, p)));
            }
            assert!(s.is_bijective());
        }
    }
}

#[test]
fn side_mismatch_is_rejected() {
    let w = build_kg(pair(2)).unwrap().wmha;
    assert!(build_r_from_antipode(1, w.alg.clone(), w.cp.clone(), &w.s2).is_err());
    assert!(build_r_from_antipode(5, w.alg.clone(), w.cp.clone(), &w.s1).is_err());
}

#[test]
fn antipode_identities_hold_for_groupoid_structures() {
    for build in [build_kg, build_cg] {
        for g in [pair(3), naturals()] {
            let w = build(g.clone()).unwrap().wmha;
            let inputs = TestInputs::exhaustive(&g.window(3));
            let rep = check_antipode_identities(w.algebra(), w.cp.as_ref(), &w.s1, &inputs, IdentitySide::Direct);
            assert!(rep.all_passed(), "{}", rep.to_text());
            let rep = check_geninv_conditions(&GeneralizedInverse::new(1, w.r1.clone()), w.algebra(), w.cp.as_ref(), &inputs);
            assert!(rep.all_passed(), "{}", rep.to_text());
        }
    }
}

#[test]
fn wrong_antipode_breaks_reconstruction() {
    let w = build_kg(pair(2)).unwrap().wmha;
    let id: Op1 = Arc::new(Vec1::basis);
    let s = AntipodeMap::from_endo(w.alg.clone(), Side::Left, id.clone(), Some(id));
    let inputs = TestInputs::exhaustive(&(0..4).collect::<Vec<_>>());
    let rep = check_antipode_identities(w.algebra(), w.cp.as_ref(), &s, &inputs, IdentitySide::Direct);
    assert!(!rep.all_passed());
}

#[test]
fn target_map_on_units() {
    let w = build_cg(pair(2)).unwrap().wmha;
    // ε_t(λ_p) = λ_{t(p)} in ℂG.
    let pg = PairGroupoid::on(2);
    for p in 0..4 {
        let t = crate::groupoid::Groupoid::target(&pg, p);
        let u = w.alg.unit().unwrap();
        assert_eq!(target_apply(w.algebra(), w.cp.as_ref(), &w.s1, &Vec1::basis(p), &u).unwrap(), Vec1::basis(t));
    }
}
