//! End-to-end acceptance criteria, each at exact equality. Every test prints
//! one `[PASS]`/`[FAIL]` line; run with `--nocapture` to see them.

use std::path::PathBuf;
use std::sync::{Arc, OnceLock};
use std::time::{Duration, Instant};

use wmha_core::algebra::{AlgRef, TableAlgebra};
use wmha_core::antipode::{derive_antipode, GeneralizedInverse};
use wmha_core::coproduct::{canonical_map, check_pairing, ElementCoproduct, PairingSide};
use wmha_core::families::{build_cg, build_kg, canonical_pairing, GroupoidRef, GroupoidWmha};
use wmha_core::groupoid::{build_groupoid, GroupoidSpec};
use wmha_core::linalg::Echelon;
use wmha_core::mutation::Mutation;
use wmha_core::report::{Report, Status, Verdict};
use wmha_core::sample::Scope;
use wmha_core::structure::bilinear2;
use wmha_core::wmha::weak_hopf::{weak_hopf_adapter, TableCoproductInput};
use wmha_core::wmha::{find_e, kernel_basis, range_echelon, solve_f, verify_wmha, KernelKind, VerifyOptions};
use wmha_core::{Vec1, Vec2};

const CORPUS: [&str; 6] = ["pair1", "pair2", "pair3", "z2-swap", "z3group", "z2-z3-union"];

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(format!("{name}.json"))
}

fn groupoid(name: &str) -> GroupoidRef {
    let text = std::fs::read_to_string(data(name)).unwrap();
    build_groupoid(&GroupoidSpec::from_json(&text).unwrap()).unwrap()
}

fn line(criterion: &str, outcome: Result<String, String>) {
    match &outcome {
        Ok(detail) => println!("[PASS] {criterion}: {detail}"),
        Err(detail) => println!("[FAIL] {criterion}: {detail}"),
    }
    if let Err(detail) = outcome {
        panic!("{criterion}: {detail}");
    }
}

struct Verified {
    family: GroupoidWmha,
    corpus: &'static str,
    report: Report,
}

struct Corpus {
    runs: Vec<Verified>,
    elapsed: Duration,
}

/// Every corpus groupoid with both families, verified once with the oracle.
fn corpus() -> &'static Corpus {
    static CELL: OnceLock<Corpus> = OnceLock::new();
    CELL.get_or_init(|| {
        let start = Instant::now();
        let opts = VerifyOptions { oracle: true, ..VerifyOptions::default() };
        let mut runs = Vec::new();
        for name in CORPUS {
            let g = groupoid(name);
            for family in [build_kg(g.clone()).unwrap(), build_cg(g).unwrap()] {
                let report = verify_wmha(&family.wmha, &opts);
                runs.push(Verified { family, corpus: name, report });
            }
        }
        Corpus { runs, elapsed: start.elapsed() }
    })
}

fn label(v: &Verified) -> String {
    format!("{}:{}", v.corpus, v.family.wmha.name)
}

fn failing(r: &Report, prefixes: &[&str]) -> Vec<String> {
    r.checks
        .iter()
        .filter(|c| c.status == Status::Fail && prefixes.iter().any(|p| c.id.starts_with(p)))
        .map(|c| c.id.clone())
        .collect()
}

fn all_pass(prefixes: &[&str], required: &[&str]) -> Result<String, String> {
    let mut bad = Vec::new();
    let mut evaluated = 0;
    for v in &corpus().runs {
        let f = failing(&v.report, prefixes);
        if !f.is_empty() {
            bad.push(format!("{} {:?}", label(v), f));
        }
        for id in required {
            if v.report.status(id) != Some(Status::Pass) {
                bad.push(format!("{} {id} {:?}", label(v), v.report.status(id)));
            }
        }
        evaluated += v.report.checks.iter().filter(|c| prefixes.iter().any(|p| c.id.starts_with(p))).count();
    }
    if bad.is_empty() {
        Ok(format!("{evaluated} checks over {} structures", corpus().runs.len()))
    } else {
        Err(bad.join("; "))
    }
}

#[test]
fn groupoid_families_pass_the_full_suite() {
    let c = corpus();
    let mut bad = Vec::new();
    for v in &c.runs {
        let one_unit = v.family.groupoid.size().map(|n| (0..n).filter(|&p| v.family.groupoid.is_unit(p)).count()) == Some(1);
        let want = if one_unit { Verdict::Mha } else { Verdict::RegularWmhaStar };
        let fails: Vec<_> = v.report.failures().map(|c| c.id.clone()).collect();
        if v.report.verdict != want || !fails.is_empty() {
            bad.push(format!("{} verdict {} failures {:?}", label(v), v.report.verdict, fails));
        }
        for id in ["coproduct.coassociative", "coproduct.full", "counit.unique", "idempotent.range-t1", "kernel.t1", "kernel.f1-identity", "algebra.star"] {
            if v.report.status(id) != Some(Status::Pass) {
                bad.push(format!("{} {id} not passed", label(v)));
            }
        }
    }
    if c.elapsed > Duration::from_secs(60) {
        bad.push(format!("took {:?}", c.elapsed));
    }
    line(
        "groupoid families",
        if bad.is_empty() { Ok(format!("{} structures in {:.1?}", c.runs.len(), c.elapsed)) } else { Err(bad.join("; ")) },
    );
}

#[test]
fn pair_groupoid_dimension_counts() {
    let mut bad = Vec::new();
    for n in [2usize, 3] {
        let g = groupoid(&format!("pair{n}"));
        for w in [build_kg(g.clone()).unwrap().wmha, build_cg(g).unwrap().wmha] {
            let b: Vec<usize> = (0..w.alg.dim().unwrap()).collect();
            if b.len() != n * n {
                bad.push(format!("{} dim {}", w.name, b.len()));
            }
            for k in [1u8, 2] {
                let rank = range_echelon(w.cp.as_ref(), k, &b).unwrap().rank();
                let ker = kernel_basis(w.cp.as_ref(), k, &b).unwrap().len();
                // Independent count: rank of the image vectors themselves.
                let images: Vec<Vec2> = b
                    .iter()
                    .flat_map(|&x| b.iter().map(move |&y| (x, y)))
                    .map(|p| canonical_map(k, w.cp.as_ref(), &Vec2::basis(p)).unwrap())
                    .collect();
                let oracle = Echelon::from_vectors(&images).rank();
                if rank != n.pow(3) || oracle != rank || ker != n.pow(4) - n.pow(3) {
                    bad.push(format!("{} T{k}: rank {rank} oracle {oracle} kernel {ker}", w.name));
                }
            }
        }
    }
    line("dimension counts", if bad.is_empty() { Ok("n = 2, 3 on both families".into()) } else { Err(bad.join("; ")) });
}

#[test]
fn generic_solver_reproduces_closed_forms() {
    let mut bad = Vec::new();
    for v in &corpus().runs {
        let w = &v.family.wmha;
        let alg = w.algebra();
        let unit = alg.unit().unwrap();
        let cap = usize::MAX;
        let e = find_e(alg, w.cp.as_ref(), cap).unwrap();
        if Some(&e) != w.e.element.as_ref() {
            bad.push(format!("{} E", label(v)));
        }
        for (kind, f) in [(KernelKind::F1, &w.f1), (KernelKind::F2, &w.f2)] {
            if solve_f(alg, &e, kind, cap).unwrap() != bilinear2(f, &unit, &unit) {
                bad.push(format!("{} {}", label(v), kind.label()));
            }
        }
        bad.extend(failing(&v.report, &["oracle."]).into_iter().map(|id| format!("{} {id}", label(v))));
    }
    line("closed form vs generic solver", if bad.is_empty() { Ok("E, F1, F2, R1, R2, S agree".into()) } else { Err(bad.join("; ")) });
}

#[test]
fn antipode_pipeline() {
    let mut bad = Vec::new();
    for v in &corpus().runs {
        let w = &v.family.wmha;
        let b: Vec<usize> = (0..w.alg.dim().unwrap()).collect();
        let s = derive_antipode(&GeneralizedInverse::new(1, w.r1.clone()), w.alg.clone(), w.cp.clone(), &w.eps, &b).unwrap();
        let endo = s.endo.unwrap();
        for &p in &b {
            if endo(p) != Vec1::basis(v.family.groupoid.inverse(p)) {
                bad.push(format!("{} S({p})", label(v)));
            }
        }
    }
    let rest = all_pass(
        &["antipode.", "inverse.", "regular.", "kernel.f"],
        &["antipode.identity-a", "antipode.equivalence", "antipode.bridge", "regular.f3-identity", "regular.f4-identity", "regular.r3-kernel"],
    );
    line(
        "antipode pipeline",
        match (bad.is_empty(), rest) {
            (true, Ok(d)) => Ok(format!("S = inversion; {d}")),
            (_, Err(e)) => Err(format!("{}; {e}", bad.join("; "))),
            (false, _) => Err(bad.join("; ")),
        },
    );
}

#[test]
fn multiplier_extensions() {
    line(
        "extensions to multipliers",
        all_pass(
            &["extension."],
            &["extension.delta-unit", "extension.coproduct-of-e", "extension.coassociative", "extension.order", "extension.well-defined"],
        ),
    );
}

#[test]
fn duality_pairing() {
    let mut bad = Vec::new();
    let mut run = |name: &str, scope: Scope, window: usize| {
        let g = groupoid(name);
        let (kg, cg) = (build_kg(g.clone()).unwrap(), build_cg(g).unwrap());
        let pr = canonical_pairing(&kg, &cg).unwrap();
        let wk = kg.wmha.alg.window(window);
        let wc = cg.wmha.alg.window(window);
        let a = PairingSide { alg: kg.wmha.algebra(), cp: kg.wmha.cp.as_ref(), window: &wk };
        let b = PairingSide { alg: cg.wmha.algebra(), cp: cg.wmha.cp.as_ref(), window: &wc };
        let r = check_pairing(&pr, &a, &b, scope);
        for id in ["pairing.t1-t2", "pairing.t2-t1", "pairing.t3-flip", "pairing.t4-flip", "pairing.nondegenerate"] {
            if r.status(id) != Some(Status::Pass) {
                bad.push(format!("{name} {id}"));
            }
        }
    };
    run("pair2", Scope::Exhaustive, 0);
    run("pair3", Scope::Exhaustive, 0);
    run("natpair", Scope::sampled(5, 100, 0), 5);
    line("duality", if bad.is_empty() { Ok("n = 2, 3 exhaustive; ℕ-pair window 5, 100 samples".into()) } else { Err(bad.join("; ")) });
}

#[test]
fn weak_hopf_round_trip() {
    let mut bad = Vec::new();
    let opts = VerifyOptions { extension_samples: 0, transforms: false, ..VerifyOptions::default() };
    for name in CORPUS {
        let cg = build_cg(groupoid(name)).unwrap().wmha;
        let table = TableAlgebra::tabulate(cg.algebra()).unwrap();
        let n = table.labels.len();
        let alg: AlgRef = Arc::new(table);
        let values = (0..n).map(|p| Vec2::basis((p, p))).collect();
        let cp = Arc::new(ElementCoproduct::new(alg.clone(), values).unwrap());
        let input = TableCoproductInput { name: format!("{name}-unital"), alg, cp, counit: None, antipode: None };
        let r = weak_hopf_adapter(&input, &opts);
        let ok = r.verdict == Verdict::WeakHopf
            && ["weak-hopf.delta-unit", "weak-hopf.multiplicativity-left", "weak-hopf.multiplicativity-right"]
                .iter()
                .all(|id| r.status(id) == Some(Status::Pass));
        if !ok {
            bad.push(format!("{name} verdict {} failures {:?}", r.verdict, r.failures().map(|c| &c.id).collect::<Vec<_>>()));
        }
    }
    line("weak Hopf round trip", if bad.is_empty() { Ok(format!("{} convolution algebras", CORPUS.len())) } else { Err(bad.join("; ")) });
}

#[test]
fn hopf_degeneration() {
    let mut bad = Vec::new();
    for v in corpus().runs.iter().filter(|v| ["pair1", "z3group"].contains(&v.corpus)) {
        let w = &v.family.wmha;
        let unit = w.alg.unit().unwrap();
        let one = unit.tensor(&unit);
        let n = w.alg.dim().unwrap();
        let b: Vec<usize> = (0..n).collect();
        let f1 = bilinear2(&w.f1, &unit, &unit);
        let f2 = bilinear2(&w.f2, &unit, &unit);
        let bijective = [1u8, 2].iter().all(|&k| range_echelon(w.cp.as_ref(), k, &b).unwrap().rank() == n * n);
        if w.e.element.as_ref() != Some(&one) || f1 != one || f2 != one || !bijective || v.report.verdict != Verdict::Mha {
            bad.push(format!("{} verdict {}", label(v), v.report.verdict));
        }
    }
    line("Hopf degeneration", if bad.is_empty() { Ok("E = F1 = F2 = 1⊗1, T1 and T2 bijective, verdict mha".into()) } else { Err(bad.join("; ")) });
}

#[test]
fn mutation_suite() {
    let opts = VerifyOptions { extension_samples: 2, transforms: false, ..VerifyOptions::default() };
    let mut bad = Vec::new();
    for (seed, m) in Mutation::ALL.into_iter().enumerate() {
        let g = groupoid(if m == Mutation::KgSwappedKernelsLarge { "pair3" } else { "pair2" });
        let w = m.apply(g, seed as u64).unwrap();
        let r = verify_wmha(&w, &opts);
        let c = r.get(m.expected_failure());
        let caught = c.is_some_and(|c| c.status == Status::Fail && c.witness.as_ref().is_some_and(|w| !w.is_empty()));
        if !caught {
            bad.push(format!("{} not caught by {}", m.name(), m.expected_failure()));
        }
    }
    line("mutation suite", if bad.is_empty() { Ok(format!("{} corruptions caught", Mutation::ALL.len())) } else { Err(bad.join("; ")) });
}
