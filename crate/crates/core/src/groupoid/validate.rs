//! Exhaustive groupoid axiom checks over a finite window.

use super::{Arrow, Groupoid};
use crate::report::{Report, Witness};

fn first<T>(it: impl IntoIterator<Item = T>, bad: impl Fn(&T) -> Option<Witness>) -> Result<(), Witness> {
    for x in it {
        if let Some(w) = bad(&x) {
            return Err(w);
        }
    }
    Ok(())
}

/// Check every groupoid invariant on the window. Products leaving the window
/// are still evaluated; only the quantified variables range over it.
pub fn validate_groupoid(g: &dyn Groupoid, window: &[Arrow]) -> Report {
    let mut r = Report::new(g.name());
    let l = |p: Arrow| g.label(p);
    let pairs = || window.iter().flat_map(|&p| window.iter().map(move |&q| (p, q)));

    r.record(
        "groupoid.units",
        first(window.iter().copied(), |&p| {
            let (s, t) = (g.source(p), g.target(p));
            let ok = g.is_unit(s)
                && g.target(s) == s
                && g.is_unit(t)
                && g.target(t) == t
                && g.inverse(s) == s
                && g.inverse(t) == t;
            (!ok).then(|| Witness::new().with("p", l(p)))
        }),
    );
    r.record(
        "groupoid.units-image",
        first(window.iter().copied(), |&p| {
            // A unit must be both a source and a target of itself.
            (g.is_unit(p) && g.target(p) != p).then(|| Witness::new().with("u", l(p)))
        }),
    );
    r.record(
        "groupoid.composable-iff",
        first(pairs(), |&(p, q)| {
            let defined = g.compose(p, q).is_some();
            (defined != (g.source(p) == g.target(q)))
                .then(|| Witness::new().with("p", l(p)).with("q", l(q)).with("defined", defined))
        }),
    );
    r.record(
        "groupoid.source-of-product",
        first(pairs(), |&(p, q)| {
            let pq = g.compose(p, q)?;
            (g.source(pq) != g.source(q)).then(|| Witness::new().with("p", l(p)).with("q", l(q)).with("pq", l(pq)))
        }),
    );
    r.record(
        "groupoid.target-of-product",
        first(pairs(), |&(p, q)| {
            let pq = g.compose(p, q)?;
            (g.target(pq) != g.target(p)).then(|| Witness::new().with("p", l(p)).with("q", l(q)).with("pq", l(pq)))
        }),
    );
    r.record(
        "groupoid.associative",
        first(pairs(), |&(p, q)| {
            for &s in window {
                let lhs = g.compose(p, q).and_then(|pq| g.compose(pq, s));
                let rhs = g.compose(q, s).and_then(|qs| g.compose(p, qs));
                if let (Some(a), Some(b)) = (lhs, rhs) {
                    if a != b {
                        return Some(Witness::new().with("p", l(p)).with("q", l(q)).with("r", l(s)));
                    }
                }
            }
            None
        }),
    );
    r.record(
        "groupoid.inverse",
        first(window.iter().copied(), |&p| {
            let i = g.inverse(p);
            let ok = g.inverse(i) == p
                && g.source(p) == g.target(i)
                && g.target(p) == g.source(i)
                && g.compose(p, i) == Some(g.target(p))
                && g.compose(i, p) == Some(g.source(p));
            (!ok).then(|| Witness::new().with("p", l(p)))
        }),
    );
    r.record(
        "groupoid.regular",
        first(window.iter().copied(), |&p| {
            let i = g.inverse(p);
            let ppp = g.compose(p, i).and_then(|x| g.compose(x, p));
            let iii = g.compose(i, p).and_then(|x| g.compose(x, i));
            (ppp != Some(p) || iii != Some(i)).then(|| Witness::new().with("p", l(p)))
        }),
    );
    r.record(
        "groupoid.unit-laws",
        first(window.iter().copied(), |&p| {
            let ok = g.compose(g.target(p), p) == Some(p) && g.compose(p, g.source(p)) == Some(p);
            (!ok).then(|| Witness::new().with("p", l(p)))
        }),
    );
    r.conclude()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::{FiniteGroupoid, PairGroupoid};
    use crate::report::Status;

    #[test]
    fn pair_two_is_valid() {
        let g = PairGroupoid::on(2);
        assert!(validate_groupoid(&g, &g.window(0)).all_passed());
    }

    #[test]
    fn corrupted_product_fails_target_check() {
        let mut t = PairGroupoid::on(2).tabulate().unwrap();
        let a = t.index_of("(2,1)").unwrap();
        let ainv = t.index_of("(1,2)").unwrap();
        let e1 = t.index_of("(1,1)").unwrap();
        t.set_compose(a, ainv, Some(e1));
        let r = validate_groupoid(&t, &t.window(0));
        let c = r.get("groupoid.target-of-product").unwrap();
        assert_eq!(c.status, Status::Fail);
        let w = c.witness.as_ref().unwrap();
        assert_eq!(w["p"], "(2,1)");
        assert_eq!(w["q"], "(1,2)");
    }

    #[test]
    fn naturals_window_passes() {
        let g = PairGroupoid::naturals();
        let w = g.window(5);
        assert_eq!(w.len(), 25);
        assert!(validate_groupoid(&g, &w).all_passed());
    }

    #[test]
    fn missing_product_breaks_composability() {
        let mut t = FiniteGroupoid::tabulate(&PairGroupoid::on(2)).unwrap();
        t.set_compose(0, 0, None);
        assert_eq!(validate_groupoid(&t, &t.window(0)).status("groupoid.composable-iff"), Some(Status::Fail));
    }
}
