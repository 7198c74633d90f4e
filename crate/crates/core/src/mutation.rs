//! Deliberately corrupted groupoid structures, each breaking one axiom the
//! verifier must catch.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{AlgRef, TableAlgebra};
use crate::coproduct::ElementCoproduct;
use crate::error::Result;
use crate::families::{build_cg, build_kg, GroupoidRef};
use crate::finvec::{Idx, Vec1, Vec2};
use crate::groupoid::Groupoid;
use crate::scalar::Scalar;
use crate::structure::{AntipodeMap, Idempotent, Op1, Side, Wmha};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mutation {
    /// Δ(f)(p, q) = f(p∘q) on K(G), with p∘q a seeded arrow when pq is undefined.
    KgComposabilityGuard,
    /// λ_pλ_q = λ_{p∘q} on ℂG, with the same arbitrary extension.
    CgComposabilityGuard,
    /// S = ι on K(G).
    KgWrongAntipode,
    /// S = ι on ℂG.
    CgWrongAntipode,
    /// F1 and F2 exchanged on K(G).
    KgSwappedKernels,
    /// F1 and F2 exchanged on K(G) for a groupoid with more arrows.
    KgSwappedKernelsLarge,
    /// f* = conj(f∘π) on K(G) for a seeded 3-cycle π of arrows.
    KgNonInvolutiveStar,
    /// λ_p* = λ_p on ℂG.
    CgIdentityStar,
    /// E = 1⊗1 on K(G).
    KgTrivialE,
    /// E = 1⊗1 on ℂG.
    CgTrivialE,
}

impl Mutation {
    pub const ALL: [Mutation; 10] = [
        Mutation::KgComposabilityGuard,
        Mutation::CgComposabilityGuard,
        Mutation::KgWrongAntipode,
        Mutation::CgWrongAntipode,
        Mutation::KgSwappedKernels,
        Mutation::KgSwappedKernelsLarge,
        Mutation::KgNonInvolutiveStar,
        Mutation::CgIdentityStar,
        Mutation::KgTrivialE,
        Mutation::CgTrivialE,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Mutation::KgComposabilityGuard => "kg-composability-guard",
            Mutation::CgComposabilityGuard => "cg-composability-guard",
            Mutation::KgWrongAntipode => "kg-wrong-antipode",
            Mutation::CgWrongAntipode => "cg-wrong-antipode",
            Mutation::KgSwappedKernels => "kg-swapped-kernels",
            Mutation::KgSwappedKernelsLarge => "kg-swapped-kernels-large",
            Mutation::KgNonInvolutiveStar => "kg-non-involutive-star",
            Mutation::CgIdentityStar => "cg-identity-star",
            Mutation::KgTrivialE => "kg-trivial-e",
            Mutation::CgTrivialE => "cg-trivial-e",
        }
    }

    /// The check that must fail.
    pub fn expected_failure(self) -> &'static str {
        match self {
            Mutation::KgComposabilityGuard => "coproduct.coassociative",
            Mutation::CgComposabilityGuard => "algebra.associative",
            Mutation::KgWrongAntipode | Mutation::CgWrongAntipode => "antipode.derived",
            Mutation::KgSwappedKernels | Mutation::KgSwappedKernelsLarge => "kernel.t1",
            Mutation::KgNonInvolutiveStar | Mutation::CgIdentityStar => "algebra.star",
            Mutation::KgTrivialE | Mutation::CgTrivialE => "idempotent.range-t1",
        }
    }

    /// Build the corrupted structure on `g` (a finite groupoid with at least
    /// one non-composable pair).
    pub fn apply(self, g: GroupoidRef, seed: u64) -> Result<Wmha> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = g.size().expect("mutations need a finite groupoid");
        let arrows: Vec<Idx> = (0..n).collect();
        let kg = || build_kg(g.clone()).map(|s| s.wmha);
        let cg = || build_cg(g.clone()).map(|s| s.wmha);
        let mut w = match self {
            Mutation::KgComposabilityGuard => {
                let mut w = kg()?;
                let extend = extension(g.as_ref(), &mut rng);
                let mut values = vec![Vec2::zero(); n];
                for p in 0..n {
                    for q in 0..n {
                        values[extend(p, q)].add_term((p, q), Scalar::one());
                    }
                }
                w.cp = Arc::new(ElementCoproduct::new(w.alg.clone(), values)?);
                w
            }
            Mutation::CgComposabilityGuard => {
                let mut w = cg()?;
                let mut t = TableAlgebra::tabulate(w.algebra())?;
                let extend = extension(g.as_ref(), &mut rng);
                for p in 0..n {
                    for q in 0..n {
                        t.mult[p * n + q] = Vec1::basis(extend(p, q));
                    }
                }
                w.alg = Arc::new(t);
                w
            }
            Mutation::KgWrongAntipode => with_identity_antipode(kg()?),
            Mutation::CgWrongAntipode => with_identity_antipode(cg()?),
            Mutation::KgSwappedKernels | Mutation::KgSwappedKernelsLarge => {
                let mut w = kg()?;
                std::mem::swap(&mut w.f1, &mut w.f2);
                w
            }
            Mutation::KgNonInvolutiveStar => {
                let mut w = kg()?;
                let mut t = TableAlgebra::tabulate(w.algebra())?;
                let mut cycle = arrows.clone();
                cycle.shuffle(&mut rng);
                let (a, b, c) = (cycle[0], cycle[1], cycle[2]);
                let mut perm = arrows.clone();
                perm[a] = b;
                perm[b] = c;
                perm[c] = a;
                t.star = Some(perm.iter().map(|&p| Vec1::basis(p)).collect());
                w.alg = Arc::new(t);
                w
            }
            Mutation::CgIdentityStar => {
                let mut w = cg()?;
                let mut t = TableAlgebra::tabulate(w.algebra())?;
                t.star = Some(arrows.iter().map(|&p| Vec1::basis(p)).collect());
                w.alg = Arc::new(t);
                w
            }
            Mutation::KgTrivialE | Mutation::CgTrivialE => {
                let mut w = if self == Mutation::KgTrivialE { kg()? } else { cg()? };
                let unit = w.alg.unit().expect("finite groupoid algebras are unital");
                w.e = Idempotent {
                    left: Arc::new(|p, q| Vec2::basis((p, q))),
                    right: Arc::new(|p, q| Vec2::basis((p, q))),
                    element: Some(unit.tensor(&unit)),
                };
                w
            }
        };
        w.name = format!("{}[{}]", self.name(), w.name);
        Ok(w)
    }
}

/// pq where defined, else a seeded arrow fixed per pair.
fn extension(g: &dyn Groupoid, rng: &mut ChaCha8Rng) -> impl Fn(Idx, Idx) -> Idx {
    let n = g.size().expect("finite");
    let arrows: Vec<Idx> = (0..n).collect();
    let table: Vec<Idx> = (0..n * n)
        .map(|k| g.compose(k / n, k % n).unwrap_or_else(|| *arrows.choose(rng).expect("non-empty")))
        .collect();
    move |p, q| table[p * n + q]
}

fn with_identity_antipode(mut w: Wmha) -> Wmha {
    let id: Op1 = Arc::new(Vec1::basis);
    let alg: AlgRef = w.alg.clone();
    w.s1 = AntipodeMap::from_endo(alg.clone(), Side::Left, id.clone(), Some(id.clone()));
    w.s2 = AntipodeMap::from_endo(alg, Side::Right, id.clone(), Some(id));
    w
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::PairGroupoid;
    use crate::report::Status;
    use crate::wmha::{verify_wmha, VerifyOptions};

    #[test]
    fn every_mutation_is_caught_with_a_witness() {
        for (k, m) in Mutation::ALL.into_iter().enumerate() {
            let n = if m == Mutation::KgSwappedKernelsLarge { 3 } else { 2 };
            let w = m.apply(Arc::new(PairGroupoid::on(n)), k as u64).unwrap();
            let r = verify_wmha(&w, &VerifyOptions { extension_samples: 2, transforms: false, ..Default::default() });
            let c = r.get(m.expected_failure()).unwrap_or_else(|| panic!("{} not run", m.expected_failure()));
            assert_eq!(c.status, Status::Fail, "{}", m.name());
            assert!(c.witness.as_ref().is_some_and(|w| !w.is_empty()), "{}", m.name());
        }
    }

    #[test]
    fn trivial_e_still_absorbs_the_coproduct() {
        let w = Mutation::KgTrivialE.apply(Arc::new(PairGroupoid::on(2)), 0).unwrap();
        let r = verify_wmha(&w, &VerifyOptions { extension_samples: 0, transforms: false, ..Default::default() });
        assert_eq!(r.status("idempotent.absorbs"), Some(Status::Pass));
        assert_eq!(r.status("idempotent.range-t1"), Some(Status::Fail));
    }
}
