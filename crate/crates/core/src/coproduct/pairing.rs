//! Bilinear pairings between two coproduct algebras and their adjointness laws.

use std::fmt;
use std::sync::Arc;

use super::{t1, t2, t3, t4, Coproduct};
use crate::algebra::{fmt2, Algebra};
use crate::finvec::{Idx, Vec1, Vec2};
use crate::linalg::Echelon;
use crate::report::{Report, Witness};
use crate::sample::{Scope, TestInputs};
use crate::scalar::Scalar;

type PairRule = Arc<dyn Fn(Idx, Idx) -> Scalar + Send + Sync>;

/// A bilinear map A × B → ℚ(i) given on basis vectors.
#[derive(Clone)]
pub struct DualPairing {
    rule: PairRule,
}

impl fmt::Debug for DualPairing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("DualPairing")
    }
}

impl DualPairing {
    pub fn new(rule: impl Fn(Idx, Idx) -> Scalar + Send + Sync + 'static) -> Self {
        DualPairing { rule: Arc::new(rule) }
    }

    pub fn basis(&self, a: Idx, b: Idx) -> Scalar {
        (self.rule)(a, b)
    }

    pub fn pair(&self, a: &Vec1, b: &Vec1) -> Scalar {
        let mut out = Scalar::zero();
        for (i, x) in a.iter() {
            for (j, y) in b.iter() {
                let p = (self.rule)(*i, *j);
                if !p.is_zero() {
                    out = out + &(&p * x) * y;
                }
            }
        }
        out
    }

    /// ⟨a⊗a', b⊗b'⟩ = ⟨a,b⟩⟨a',b'⟩.
    pub fn pair2(&self, x: &Vec2, y: &Vec2) -> Scalar {
        let mut out = Scalar::zero();
        for ((a, a2), c) in x.iter() {
            for ((b, b2), d) in y.iter() {
                let p = (self.rule)(*a, *b);
                if p.is_zero() {
                    continue;
                }
                let q = (self.rule)(*a2, *b2);
                if !q.is_zero() {
                    out = out + &(&(&p * &q) * c) * d;
                }
            }
        }
        out
    }
}

/// One side of a pairing: an algebra, its coproduct and the basis window
/// that test elements are drawn from.
pub struct PairingSide<'a> {
    pub alg: &'a dyn Algebra,
    pub cp: &'a dyn Coproduct,
    pub window: &'a [Idx],
}

fn quadruples(a: &PairingSide, b: &PairingSide, scope: Scope) -> Vec<(Vec2, Vec2)> {
    match scope {
        Scope::Exhaustive => {
            let xs = TestInputs::exhaustive(a.window).pairs;
            let ys = TestInputs::exhaustive(b.window).pairs;
            xs.iter()
                .flat_map(|(p, q)| ys.iter().map(move |(r, s)| (p.tensor(q), r.tensor(s))))
                .collect()
        }
        Scope::Sampled { trials, seed, .. } => {
            let xs = TestInputs::sampled(a.window, trials, seed).pairs;
            let ys = TestInputs::sampled(b.window, trials, seed.wrapping_add(1)).pairs;
            xs.iter().zip(&ys).map(|((p, q), (r, s))| (p.tensor(q), r.tensor(s))).collect()
        }
    }
}

/// Adjointness of the canonical maps under the pairing, plus non-degeneracy of
/// the pairing matrix on the two windows.
pub fn check_pairing(pr: &DualPairing, a: &PairingSide, b: &PairingSide, scope: Scope) -> Report {
    let mut report = Report::new(format!("pairing[{}|{}]", a.alg.name(), b.alg.name()));
    let quads = quadruples(a, b, scope);
    let witness = |x: &Vec2, y: &Vec2, l: &Scalar, r: &Scalar| {
        Witness::new().with("x", fmt2(a.alg, x)).with("y", fmt2(b.alg, y)).with("lhs", l).with("rhs", r)
    };
    let law = |lhs: &dyn Fn(&Vec2, &Vec2) -> (Scalar, Scalar)| {
        for (x, y) in &quads {
            let (l, r) = lhs(x, y);
            if l != r {
                return Err(witness(x, y, &l, &r));
            }
        }
        Ok(())
    };
    report.record("pairing.t1-t2", law(&|x, y| (pr.pair2(&t1(a.cp, x), y), pr.pair2(x, &t2(b.cp, y)))));
    report.record("pairing.t2-t1", law(&|x, y| (pr.pair2(&t2(a.cp, x), y), pr.pair2(x, &t1(b.cp, y)))));
    if a.cp.is_regular() && b.cp.is_regular() {
        report.record(
            "pairing.t3-flip",
            law(&|x, y| (pr.pair2(&t3(a.cp, x), y), pr.pair2(&x.flip(), &t3(b.cp, &y.flip())))),
        );
        report.record(
            "pairing.t4-flip",
            law(&|x, y| (pr.pair2(&t4(a.cp, x), y), pr.pair2(&x.flip(), &t4(b.cp, &y.flip())))),
        );
    } else {
        report.skip("pairing.t3-flip", "coproducts are not both regular");
        report.skip("pairing.t4-flip", "coproducts are not both regular");
    }
    report.record("pairing.nondegenerate", nondegenerate(pr, a, b));
    report.conclude()
}

fn nondegenerate(pr: &DualPairing, a: &PairingSide, b: &PairingSide) -> Result<(), Witness> {
    let rows = Echelon::from_vectors(
        &a.window.iter().map(|&i| Vec1::from_terms(b.window.iter().map(|&j| (j, pr.basis(i, j))))).collect::<Vec<_>>(),
    );
    let cols = Echelon::from_vectors(
        &b.window.iter().map(|&j| Vec1::from_terms(a.window.iter().map(|&i| (i, pr.basis(i, j))))).collect::<Vec<_>>(),
    );
    if rows.rank() != a.window.len() {
        return Err(Witness::new().with("side", "left").with("rank", rows.rank()).with("size", a.window.len()));
    }
    if cols.rank() != b.window.len() {
        return Err(Witness::new().with("side", "right").with("rank", cols.rank()).with("size", b.window.len()));
    }
    Ok(())
}

/// The pairing matrix on two windows, row-major.
pub fn pairing_matrix(pr: &DualPairing, left: &[Idx], right: &[Idx]) -> Vec<Vec<Scalar>> {
    left.iter().map(|&i| right.iter().map(|&j| pr.basis(i, j)).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair2_is_a_product() {
        let pr = DualPairing::new(|i, j| if i == j { Scalar::one() } else { Scalar::zero() });
        let x = Vec2::basis((0, 1)).add(&Vec2::term((1, 1), Scalar::from_int(3)));
        let y = Vec2::basis((1, 1));
        assert_eq!(pr.pair2(&x, &y), Scalar::from_int(3));
        assert_eq!(pr.pair(&Vec1::basis(0), &Vec1::basis(1)), Scalar::zero());
    }
}
