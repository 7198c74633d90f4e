//! Structural invariants on random exact elements.

use std::path::PathBuf;
use std::sync::{Arc, OnceLock};

use proptest::prelude::*;

use wmha_core::algebra::{mul, mul2, star, star2, AlgRef, TableAlgebra};
use wmha_core::coproduct::ElementCoproduct;
use wmha_core::families::{build_cg, build_kg, GroupoidRef};
use wmha_core::groupoid::{build_groupoid, GroupoidSpec, PairGroupoid};
use wmha_core::report::Verdict;
use wmha_core::wmha::weak_hopf::{weak_hopf_adapter, TableCoproductInput};
use wmha_core::wmha::{verify_wmha, VerifyOptions};
use wmha_core::{Scalar, Vec1, Vec2};

fn groupoid(name: &str) -> GroupoidRef {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(format!("{name}.json"));
    build_groupoid(&GroupoidSpec::from_json(&std::fs::read_to_string(path).unwrap()).unwrap()).unwrap()
}

/// ℂG for the pair groupoid on three points, as a table with Δ(λ_p) = λ_p⊗λ_p.
fn cg3() -> &'static (AlgRef, Arc<ElementCoproduct>) {
    static CELL: OnceLock<(AlgRef, Arc<ElementCoproduct>)> = OnceLock::new();
    CELL.get_or_init(|| {
        let w = build_cg(groupoid("pair3")).unwrap().wmha;
        let alg: AlgRef = Arc::new(TableAlgebra::tabulate(w.algebra()).unwrap());
        let values = (0..9).map(|p| Vec2::basis((p, p))).collect();
        let cp = Arc::new(ElementCoproduct::new(alg.clone(), values).unwrap());
        (alg, cp)
    })
}

fn element(n: usize) -> impl Strategy<Value = Vec1> {
    proptest::collection::vec((0..n, -2i64..=2, -2i64..=2), 0..6).prop_map(|terms| {
        let mut v = Vec1::zero();
        for (i, re, im) in terms {
            v.add_term(i, Scalar::gaussian(re, im));
        }
        v
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn coproduct_is_multiplicative(a in element(9), b in element(9)) {
        let (alg, cp) = cg3();
        let lhs = cp.value(&mul(alg.as_ref(), &a, &b));
        let rhs = mul2(alg.as_ref(), &cp.value(&a), &cp.value(&b));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn coproduct_preserves_star(a in element(9)) {
        let (alg, cp) = cg3();
        let lhs = cp.value(&star(alg.as_ref(), &a).unwrap());
        let rhs = star2(alg.as_ref(), &cp.value(&a)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn e_absorbs_the_coproduct(a in element(9)) {
        let (alg, cp) = cg3();
        let e = cp.value(&alg.unit().unwrap());
        let d = cp.value(&a);
        prop_assert_eq!(mul2(alg.as_ref(), &e, &d), d.clone());
        prop_assert_eq!(mul2(alg.as_ref(), &d, &e), d);
    }

    /// Any indicator idempotent of K(G)⊗K(G) containing the support of E is
    /// a two-sided unit for E.
    #[test]
    fn e_is_below_every_indicator_superset(extra in proptest::collection::vec((0usize..9, 0usize..9), 0..20)) {
        let w = build_kg(groupoid("pair3")).unwrap().wmha;
        let alg = w.algebra();
        let e = w.e.element.clone().unwrap();
        let mut bigger = e.clone();
        for p in extra {
            if bigger.get(&p).is_zero() {
                bigger.add_term(p, Scalar::one());
            }
        }
        prop_assert_eq!(mul2(alg, &bigger, &bigger), bigger.clone());
        prop_assert_eq!(mul2(alg, &e, &bigger), e.clone());
        prop_assert_eq!(mul2(alg, &bigger, &e), e);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(4))]

    #[test]
    fn lazy_reports_are_deterministic(seed in any::<u64>()) {
        let w = build_cg(Arc::new(PairGroupoid::naturals())).unwrap().wmha;
        let opts = VerifyOptions { window: 3, trials: 10, seed, extension_samples: 0, transforms: false, ..VerifyOptions::default() };
        let a = verify_wmha(&w, &opts);
        prop_assert_eq!(a.to_json(), verify_wmha(&w, &opts).to_json());
        prop_assert_eq!(a.verdict, Verdict::RegularWmhaStar);
    }
}

#[test]
fn finite_verdict_agrees_with_weak_hopf_adapter() {
    let opts = VerifyOptions { extension_samples: 0, transforms: false, ..VerifyOptions::default() };
    for name in ["pair1", "pair2", "z2-swap", "z2-z3-union"] {
        let w = build_cg(groupoid(name)).unwrap().wmha;
        let direct = verify_wmha(&w, &opts).verdict;
        let alg: AlgRef = Arc::new(TableAlgebra::tabulate(w.algebra()).unwrap());
        let n = alg.dim().unwrap();
        let values = (0..n).map(|p| Vec2::basis((p, p))).collect();
        let cp = Arc::new(ElementCoproduct::new(alg.clone(), values).unwrap());
        let input = TableCoproductInput { name: name.into(), alg, cp, counit: None, antipode: None };
        let adapted = weak_hopf_adapter(&input, &opts).verdict;
        let regular = matches!(direct, Verdict::RegularWmha | Verdict::RegularWmhaStar | Verdict::Mha);
        assert_eq!(adapted == Verdict::WeakHopf, regular, "{name}: {direct} vs {adapted}");
    }
}
