use super::*;
use crate::families::{build_cg, build_kg, GroupoidRef};
use crate::groupoid::{build_groupoid, GroupoidSpec};
use crate::Idx;
use crate::groupoid::PairGroupoid;
use crate::report::Status;

fn pair(n: usize) -> GroupoidRef {
    Arc::new(PairGroupoid::on(n))
}

fn z3() -> GroupoidRef {
    let spec = GroupoidSpec::from_json(
        r#"{"kind":"group","elements":["0","1","2"],"unit":"0",
            "table":{"0,0":"0","0,1":"1","0,2":"2","1,0":"1","1,1":"2","1,2":"0","2,0":"2","2,1":"0","2,2":"1"}}"#,
    )
    .unwrap();
    build_groupoid(&spec).unwrap()
}

fn quick() -> VerifyOptions {
    VerifyOptions { extension_samples: 3, ..VerifyOptions::default() }
}

fn failures(r: &Report) -> Vec<String> {
    r.failures().map(|c| format!("{} {:?}", c.id, c.witness)).collect()
}

#[test]
fn solvers_reproduce_closed_forms() {
    for g in [pair(2), z3()] {
        for w in [build_kg(g.clone()).unwrap().wmha, build_cg(g.clone()).unwrap().wmha] {
            let alg = w.algebra();
            let unit = alg.unit().unwrap();
            let e = find_e(alg, w.cp.as_ref(), DEFAULT_MAX_DIM).unwrap();
            assert_eq!(Some(&e), w.e.element.as_ref(), "{}", w.name);
            let f1 = solve_f(alg, &e, KernelKind::F1, DEFAULT_MAX_DIM).unwrap();
            assert_eq!(f1, crate::structure::bilinear2(&w.f1, &unit, &unit), "{}", w.name);
            let f2 = solve_f(alg, &e, KernelKind::F2, DEFAULT_MAX_DIM).unwrap();
            assert_eq!(f2, crate::structure::bilinear2(&w.f2, &unit, &unit), "{}", w.name);
        }
    }
}

#[test]
fn pair_groupoid_ranks() {
    for n in [1usize, 2, 3] {
        let w = build_kg(pair(n)).unwrap().wmha;
        let b: Vec<Idx> = (0..n * n).collect();
        assert_eq!(range_echelon(w.cp.as_ref(), 1, &b).unwrap().rank(), n.pow(3));
        assert_eq!(kernel_basis(w.cp.as_ref(), 1, &b).unwrap().len(), n.pow(4) - n.pow(3));
    }
}

#[test]
fn dimension_cap_is_enforced() {
    let w = build_kg(pair(3)).unwrap().wmha;
    let err = find_e(w.algebra(), w.cp.as_ref(), 100).unwrap_err();
    assert_eq!(err, crate::Error::DimensionCap { dim: 729, cap: 100 });
}

#[test]
fn verdicts_for_groupoid_families() {
    for (g, kg, cg) in [
        (pair(1), Verdict::Mha, Verdict::Mha),
        (pair(2), Verdict::RegularWmhaStar, Verdict::RegularWmhaStar),
        (z3(), Verdict::Mha, Verdict::Mha),
    ] {
        for (w, want) in [(build_kg(g.clone()).unwrap().wmha, kg), (build_cg(g.clone()).unwrap().wmha, cg)] {
            let r = verify_wmha(&w, &VerifyOptions { oracle: true, ..quick() });
            assert_eq!(r.verdict, want, "{}: {:?}", w.name, failures(&r));
            assert!(r.failures().next().is_none(), "{}: {:?}", w.name, failures(&r));
        }
    }
}

#[test]
fn lazy_pair_groupoid_is_verified_on_windows() {
    let g: GroupoidRef = Arc::new(PairGroupoid::naturals());
    for w in [build_kg(g.clone()).unwrap().wmha, build_cg(g).unwrap().wmha] {
        let r = verify_wmha(&w, &VerifyOptions { trials: 30, ..quick() });
        assert_eq!(r.verdict, Verdict::RegularWmhaStar, "{}: {:?}", w.name, failures(&r));
        assert_eq!(r.status("extension.coassociative"), Some(Status::Skipped));
        assert_eq!(r.status("kernel.t1"), Some(Status::Pass));
    }
}

#[test]
fn classification() {
    assert_eq!(classify("kernel.t1"), CheckClass::Core);
    assert_eq!(classify("regular.op"), CheckClass::Regular);
    assert_eq!(classify("inverse.r3.trt"), CheckClass::Regular);
    assert_eq!(classify("inverse.r1.trt"), CheckClass::Core);
    assert_eq!(classify("coproduct.star"), CheckClass::Star);
    assert_eq!(classify("antipode.star-s3"), CheckClass::Star);
    assert_eq!(classify("oracle.e"), CheckClass::Extra);
}

