//! Verification of a candidate structure against every axiom group, and the
//! verdict drawn from the results.

mod checks;
mod extend;
mod solve;
pub mod weak_hopf;

#[cfg(test)]
mod tests;

pub use checks::{f3_outer, f4_outer, Finite};
pub use extend::{delta_hom, delta_id_hom, e_multiplier, element_multiplier, extend_hom, id_delta_hom, Extension, Hom};
pub use solve::{
    basis_pairs, dense_basis, dense_data, find_e, generic_structure, kernel_basis, kernel_lhs, kernel_rhs,
    max_dim_from_env, r_from_projections, range_echelon, solve_f, DenseData, KernelKind, DEFAULT_MAX_DIM,
};

use std::sync::Arc;

use crate::algebra::{check_algebra, fmt2, OpAlgebra};
use crate::coproduct::{
    check_coassociativity, check_full, check_homomorphism, check_slice_nondegenerate, counit_laws, solve_counit,
    CopCoproduct, CopRef, CounitOutcome, OpCoproduct,
};
use crate::algebra::AlgRef;
use crate::report::{Report, Status, Verdict, Witness};
use crate::sample::TestInputs;
use crate::structure::Wmha;

/// How a verification run samples and which optional groups it runs.
#[derive(Clone, Debug)]
pub struct VerifyOptions {
    /// Window size for infinite algebras.
    pub window: usize,
    /// Sampled tuples per check for infinite algebras.
    pub trials: usize,
    pub seed: u64,
    /// Random multipliers for the extended coassociativity check.
    pub extension_samples: usize,
    /// Cross-check against the structure solved from (A, Δ) alone.
    pub oracle: bool,
    /// Re-verify (A^op, Δ) and (A, Δ^cop).
    pub transforms: bool,
    /// Cap on dim(A)³ for dense solvers.
    pub cap: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            window: 5,
            trials: 100,
            seed: 0,
            extension_samples: 20,
            oracle: false,
            transforms: true,
            cap: max_dim_from_env(),
        }
    }
}

/// Which part of the verdict a check feeds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckClass {
    /// Every WMHA axiom and its direct consequences.
    Core,
    /// Consequences of a bijective antipode and a regular coproduct.
    Regular,
    /// The involutive structure.
    Star,
    /// Cross-checks that never change the verdict.
    Extra,
}

pub fn classify(id: &str) -> CheckClass {
    const EXTRA: [&str; 4] = ["oracle.", "unifying.", "pairing.", "weak-hopf."];
    const REGULAR: [&str; 8] = [
        "regular.",
        "inverse.r3.",
        "inverse.r4.",
        "antipode.inverse-identity",
        "antipode.s2-conjugate",
        "antipode.s3-inverse",
        "antipode.s4-inverse",
        "algebra.op",
    ];
    if EXTRA.iter().any(|p| id.starts_with(p)) {
        CheckClass::Extra
    } else if id.starts_with("star.") || id.ends_with(".star") || id.starts_with("antipode.star-") {
        CheckClass::Star
    } else if REGULAR.iter().any(|p| id.starts_with(p)) {
        CheckClass::Regular
    } else {
        CheckClass::Core
    }
}

fn class_ok(report: &Report, class: CheckClass) -> bool {
    report.checks.iter().filter(|c| classify(&c.id) == class).all(|c| c.status != Status::Fail)
}

/// The verdict from a finished report. `trivial_e` says whether E = 1⊗1.
pub fn verdict(report: &Report, trivial_e: bool, has_star: bool) -> Verdict {
    if !class_ok(report, CheckClass::Core) {
        return Verdict::NotWmha;
    }
    let regular = report.passed("regular.bijective") && class_ok(report, CheckClass::Regular);
    let star = has_star && report.passed("algebra.star") && class_ok(report, CheckClass::Star);
    match (trivial_e, regular, star) {
        (true, _, _) => Verdict::Mha,
        (false, true, true) => Verdict::RegularWmhaStar,
        (false, true, false) => Verdict::RegularWmha,
        (false, false, true) => Verdict::WmhaStar,
        (false, false, false) => Verdict::Wmha,
    }
}

/// Whether any oracle cross-check failed.
pub fn oracle_failed(report: &Report) -> bool {
    report.checks.iter().any(|c| c.id.starts_with("oracle.") && c.status == Status::Fail)
}

/// Test inputs for a structure: every basis tuple when finite, else seeded
/// samples from a window.
pub fn inputs_for(w: &Wmha, opts: &VerifyOptions) -> TestInputs {
    match w.alg.dim() {
        Some(n) => TestInputs::exhaustive(&(0..n).collect::<Vec<_>>()),
        None => TestInputs::sampled(&w.alg.window(opts.window), opts.trials, opts.seed),
    }
}

/// Run every check group on a candidate structure.
pub fn verify_wmha(w: &Wmha, opts: &VerifyOptions) -> Report {
    let alg = w.algebra();
    let cp = w.cp.as_ref();
    let fin = Finite::of(alg, opts.cap);
    let inputs = inputs_for(w, opts);
    let mut report = Report::new(w.name.clone());

    let algebra = check_algebra(alg, &inputs.window);
    report.extend(algebra);
    report.record("coproduct.coassociative", check_coassociativity(alg, cp, &inputs));
    report.record("coproduct.homomorphism", check_homomorphism(alg, cp, &inputs));
    report.record("coproduct.full", check_full(alg, cp, &inputs.window));
    report.record("coproduct.slice-nondegenerate", check_slice_nondegenerate(alg, cp, &inputs.window));

    report.record("counit.laws", counit_laws(alg, cp, &|i| (w.eps)(i), &inputs));
    match &fin {
        Some(_) => report.record(
            "counit.unique",
            match solve_counit(alg, cp) {
                Ok(CounitOutcome::Unique(v)) => match v.iter().enumerate().find(|(i, c)| **c != (w.eps)(*i)) {
                    None => Ok(()),
                    Some((i, c)) => Err(Witness::new()
                        .with("basis", alg.basis_label(i))
                        .with("solved", c)
                        .with("given", (w.eps)(i))),
                },
                Ok(other) => Err(Witness::new().with_debug("solution", other)),
                Err(e) => Err(Witness::new().with("error", e)),
            },
        ),
        None => {
            report.skip("counit.unique", "uniqueness follows from fullness, checked on the window");
            true
        }
    };

    checks::check_e_laws(w, &inputs, fin.as_ref(), &mut report);
    checks::check_ranges(w, &inputs, fin.as_ref(), &mut report);
    checks::check_kernels(w, &inputs, fin.as_ref(), &mut report);
    checks::check_f_identities(w, fin.as_ref(), &mut report);
    checks::check_antipodes(w, &inputs, fin.as_ref(), &mut report);
    let bij = checks::check_regular(w, &inputs, fin.as_ref(), &mut report);
    checks::check_star(w, &inputs, bij.as_ref(), &mut report);
    if opts.extension_samples > 0 {
        checks::check_extensions(w, fin.as_ref(), opts.extension_samples, opts.seed, &mut report);
    } else {
        for id in checks::EXTENSION_IDS {
            report.skip(id, "disabled");
        }
    }
    check_transforms(w, fin.as_ref(), bij.is_some(), opts, &mut report);
    report.extend(crate::antipode::unifying_check(w, &inputs));
    if opts.oracle {
        check_oracle(w, fin.as_ref(), opts, &mut report);
    }

    let trivial = checks::e_is_trivial(w, &inputs, fin.as_ref());
    report.verdict = verdict(&report, trivial, alg.has_star());
    report
}

/// (A^op, Δ) and (A, Δ^cop) are again structures of the same kind, with
/// canonical idempotents E and σE.
fn check_transforms(w: &Wmha, fin: Option<&Finite>, regular: bool, opts: &VerifyOptions, report: &mut Report) {
    let ids = ["regular.op", "regular.cop"];
    let reason = match (opts.transforms, fin, regular) {
        (false, _, _) => Some("disabled"),
        (_, None, _) => Some("needs a finite unital algebra"),
        (_, _, false) => Some("S is not a bijection of A"),
        _ => None,
    };
    if let Some(r) = reason {
        for id in ids {
            report.skip(id, r);
        }
        return;
    }
    let e = w.e.element.clone().expect("finite unital");
    let op: (AlgRef, CopRef) = (Arc::new(OpAlgebra(w.alg.clone())), Arc::new(OpCoproduct(w.cp.clone())));
    let cop: (AlgRef, CopRef) = (w.alg.clone(), Arc::new(CopCoproduct(w.cp.clone())));
    let inner = VerifyOptions { oracle: false, transforms: false, extension_samples: 0, ..opts.clone() };
    for (id, (alg, cp), expected) in [(ids[0], op, e.clone()), (ids[1], cop, e.flip())] {
        let outcome = match generic_structure(alg.clone(), cp, opts.cap) {
            Err(err) => Err(Witness::new().with("error", err)),
            Ok(t) => {
                let sub = verify_wmha(&t, &inner);
                match sub.checks.iter().find(|c| c.status == Status::Fail && classify(&c.id) == CheckClass::Core) {
                    Some(c) => Err(Witness::new().with("failed", &c.id)),
                    None if t.e.element.as_ref() != Some(&expected) => Err(Witness::new()
                        .with("E", fmt2(alg.as_ref(), t.e.element.as_ref().expect("finite")))
                        .with("expected", fmt2(alg.as_ref(), &expected))),
                    None => Ok(()),
                }
            }
        };
        report.record(id, outcome);
    }
}

pub const ORACLE_IDS: [&str; 7] =
    ["oracle.counit", "oracle.e", "oracle.f1", "oracle.f2", "oracle.r1", "oracle.r2", "oracle.antipode"];

/// Compare every map of the structure with the one solved from (A, Δ).
fn check_oracle(w: &Wmha, fin: Option<&Finite>, opts: &VerifyOptions, report: &mut Report) {
    let Some(f) = fin else {
        for id in ORACLE_IDS {
            report.skip(id, "needs a finite unital algebra");
        }
        return;
    };
    let g = match generic_structure(w.alg.clone(), w.cp.clone(), opts.cap) {
        Ok(g) => g,
        Err(e) => {
            for id in ORACLE_IDS {
                report.fail(id, Witness::new().with("error", &e));
            }
            return;
        }
    };
    let alg = w.algebra();
    let pairs = basis_pairs(&f.basis);
    let cmp2 = |a: &crate::structure::Op2, b: &crate::structure::Op2| -> Result<(), Witness> {
        for &(p, q) in &pairs {
            let (l, r) = (a(p, q), b(p, q));
            if l != r {
                return Err(Witness::new()
                    .with("a", alg.basis_label(p))
                    .with("b", alg.basis_label(q))
                    .with("closed form", fmt2(alg, &l))
                    .with("solved", fmt2(alg, &r)));
            }
        }
        Ok(())
    };
    report.record(
        "oracle.counit",
        match f.basis.iter().find(|&&i| (w.eps)(i) != (g.eps)(i)) {
            None => Ok(()),
            Some(&i) => Err(Witness::new().with("basis", alg.basis_label(i))),
        },
    );
    report.record(
        "oracle.e",
        cmp2(&w.e.left, &g.e.left).and_then(|_| cmp2(&w.e.right, &g.e.right)).and_then(|_| {
            if w.e.element == g.e.element {
                Ok(())
            } else {
                Err(Witness::new().with("element", "differs"))
            }
        }),
    );
    report.record("oracle.f1", cmp2(&w.f1, &g.f1));
    report.record("oracle.f2", cmp2(&w.f2, &g.f2));
    report.record("oracle.r1", cmp2(&w.r1, &g.r1));
    report.record("oracle.r2", cmp2(&w.r2, &g.r2));
    let s_outcome = [(&w.s1, &g.s1), (&w.s2, &g.s2)].iter().try_for_each(|(a, b)| {
        for &(p, q) in &pairs {
            if (a.act)(p, q) != (b.act)(p, q) {
                return Err(Witness::new().with("a", alg.basis_label(p)).with("b", alg.basis_label(q)));
            }
        }
        Ok(())
    });
    report.record("oracle.antipode", s_outcome);
}
