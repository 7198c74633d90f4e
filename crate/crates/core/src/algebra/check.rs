use super::{fmt1, mul, star, Algebra};
use crate::finvec::{FinVec, Idx, Vec1};
use crate::linalg::Echelon;
use crate::report::{Report, Witness};

/// Kernel witness of the regular representation `a ↦ (a·b)_b` (or `b·a`)
/// restricted to span(window), tested against every `b` in `tests`.
fn regular_kernel(alg: &dyn Algebra, window: &[Idx], tests: &[Idx], left: bool) -> Option<Vec1> {
    let mut ech = Echelon::with_provenance();
    for (n, &i) in window.iter().enumerate() {
        let mut row: FinVec<(Idx, Idx)> = FinVec::zero();
        for &j in tests {
            let p = if left { alg.mul_basis(i, j) } else { alg.mul_basis(j, i) };
            for (k, c) in p.iter() {
                row.add_term((j, *k), c.clone());
            }
        }
        if let Some(comb) = ech.factor(&row) {
            let mut a = Vec1::basis(i);
            for (m, c) in comb.iter() {
                a.add_term(window[*m], -c);
            }
            return Some(a);
        }
        ech.insert_tracked(row, n);
    }
    None
}

/// Associativity, non-degeneracy, A² = A and the involution laws, exactly,
/// over the window. For infinite algebras the second factor of each product
/// ranges over the local window of the test window.
pub fn check_algebra(alg: &dyn Algebra, window: &[Idx]) -> Report {
    let mut r = Report::new(alg.name());
    let tests = alg.local_window(window);

    let mut assoc = Ok(());
    'outer: for &a in window {
        for &b in window {
            let ab = alg.mul_basis(a, b);
            for &c in window {
                let lhs = mul(alg, &ab, &Vec1::basis(c));
                let rhs = mul(alg, &Vec1::basis(a), &alg.mul_basis(b, c));
                if lhs != rhs {
                    assoc = Err(Witness::new()
                        .with("a", alg.basis_label(a))
                        .with("b", alg.basis_label(b))
                        .with("c", alg.basis_label(c)));
                    break 'outer;
                }
            }
        }
    }
    r.record("algebra.associative", assoc);

    let nd = match (regular_kernel(alg, window, &tests, true), regular_kernel(alg, window, &tests, false)) {
        (Some(a), _) => Err(Witness::new().with("side", "left").with("a", fmt1(alg, &a))),
        (_, Some(a)) => Err(Witness::new().with("side", "right").with("a", fmt1(alg, &a))),
        _ => Ok(()),
    };
    r.record("algebra.nondegenerate", nd);

    // Every window basis vector must be a sum of products.
    let mut products = Echelon::new();
    for &a in &tests {
        for &b in &tests {
            products.insert(alg.mul_basis(a, b));
        }
    }
    let idem = window
        .iter()
        .find(|&&i| !products.contains(&Vec1::basis(i)))
        .map_or(Ok(()), |&i| Err(Witness::new().with("a", alg.basis_label(i))));
    r.record("algebra.idempotent", idem);

    if let Some(u) = alg.unit() {
        let bad = window.iter().find(|&&i| {
            let b = Vec1::basis(i);
            mul(alg, &u, &b) != b || mul(alg, &b, &u) != b
        });
        r.record("algebra.unit", bad.map_or(Ok(()), |&i| Err(Witness::new().with("a", alg.basis_label(i)))));
    }

    if alg.has_star() {
        let mut res = Ok(());
        'star: for &a in window {
            let va = Vec1::basis(a);
            if star(alg, &star(alg, &va).unwrap()).unwrap() != va {
                res = Err(Witness::new().with("law", "involutive").with("a", alg.basis_label(a)));
                break;
            }
            for &b in window {
                let vb = Vec1::basis(b);
                let lhs = star(alg, &alg.mul_basis(a, b)).unwrap();
                let rhs = mul(alg, &star(alg, &vb).unwrap(), &star(alg, &va).unwrap());
                if lhs != rhs {
                    res = Err(Witness::new()
                        .with("law", "(ab)*=b*a*")
                        .with("a", alg.basis_label(a))
                        .with("b", alg.basis_label(b)));
                    break 'star;
                }
            }
        }
        r.record("algebra.star", res);
    }
    r.conclude()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::tests::matrices;
    use crate::algebra::TableAlgebra;
    use crate::report::Status;

    #[test]
    fn matrix_algebra_passes() {
        let m = matrices();
        assert!(check_algebra(&m, &m.window(0)).all_passed());
    }

    #[test]
    fn zero_row_is_degenerate() {
        // Basis {x, y} with x² = x and every product involving y zero.
        let mult = vec![Vec1::basis(0), Vec1::zero(), Vec1::zero(), Vec1::zero()];
        let a = TableAlgebra::new("degenerate", vec!["x".into(), "y".into()], mult).unwrap();
        let r = check_algebra(&a, &[0, 1]);
        let c = r.get("algebra.nondegenerate").unwrap();
        assert_eq!(c.status, Status::Fail);
        assert_eq!(c.witness.as_ref().unwrap()["a"], "y");
        assert_eq!(r.status("algebra.idempotent"), Some(Status::Fail));
    }

    #[test]
    fn nonassociative_table_fails() {
        // x·x = y, everything else zero except y·x = x.
        let mult = vec![Vec1::basis(1), Vec1::zero(), Vec1::basis(0), Vec1::zero()];
        let a = TableAlgebra::new("bad", vec!["x".into(), "y".into()], mult).unwrap();
        assert_eq!(check_algebra(&a, &[0, 1]).status("algebra.associative"), Some(Status::Fail));
    }
}
