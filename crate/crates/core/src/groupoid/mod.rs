//! Groupoids with arrows numbered by `usize`.

mod spec;
mod validate;

use std::collections::BTreeSet;
use std::fmt;

pub use spec::{build_groupoid, GroupSpec, GroupoidSpec, Points};
pub use validate::validate_groupoid;

use crate::error::{Error, Result};

pub type Arrow = usize;

/// A groupoid whose units are arrows fixed by `source`.
///
/// `compose(p, q)` is the product pq and is defined exactly when
/// `source(p) == target(q)`.
pub trait Groupoid: Send + Sync + fmt::Debug {
    fn name(&self) -> String;
    /// Number of arrows, or `None` for a lazily enumerated universe.
    fn size(&self) -> Option<usize>;
    fn source(&self, p: Arrow) -> Arrow;
    fn target(&self, p: Arrow) -> Arrow;
    fn inverse(&self, p: Arrow) -> Arrow;
    fn compose(&self, p: Arrow, q: Arrow) -> Option<Arrow>;
    fn label(&self, p: Arrow) -> String;
    /// All arrows for a finite groupoid; otherwise a finite window whose
    /// meaning depends on the family (for the ℕ-pair groupoid: pairs of
    /// points below `size`).
    fn window(&self, size: usize) -> Vec<Arrow>;

    fn is_unit(&self, p: Arrow) -> bool {
        self.source(p) == p
    }

    fn is_finite(&self) -> bool {
        self.size().is_some()
    }
}

/// Arrows of a finite groupoid in id order.
pub fn elements(g: &dyn Groupoid) -> Option<Vec<Arrow>> {
    g.size().map(|n| (0..n).collect())
}

pub fn units(g: &dyn Groupoid, window: &[Arrow]) -> Vec<Arrow> {
    window.iter().copied().filter(|&p| g.is_unit(p)).collect()
}

/// Closure of `support` under source, target and inverse, followed by one
/// composition step.
pub fn local_window(g: &dyn Groupoid, support: &[Arrow]) -> Vec<Arrow> {
    let mut set: BTreeSet<Arrow> = BTreeSet::new();
    for &p in support {
        set.extend([p, g.source(p), g.target(p), g.inverse(p)]);
    }
    let base: Vec<Arrow> = set.iter().copied().collect();
    for &p in &base {
        for &q in &base {
            if let Some(r) = g.compose(p, q) {
                set.insert(r);
            }
        }
    }
    set.into_iter().collect()
}

/// Point set of a pair groupoid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PointSet {
    Finite(Vec<String>),
    Naturals,
}

/// The pair groupoid X×X with (z,y)(y,x) = (z,x), s(y,x) = x, t(y,x) = y.
///
/// Finite X = {x₀..x_{n−1}}: arrow (y,x) has id y·n + x.
/// X = ℕ: ids follow the Cantor pairing of (y,x).
#[derive(Clone, Debug)]
pub struct PairGroupoid {
    points: PointSet,
}

impl PairGroupoid {
    pub fn finite(points: Vec<String>) -> Self {
        PairGroupoid { points: PointSet::Finite(points) }
    }

    pub fn on(n: usize) -> Self {
        Self::finite((1..=n).map(|i| i.to_string()).collect())
    }

    pub fn naturals() -> Self {
        PairGroupoid { points: PointSet::Naturals }
    }

    pub fn arrow(&self, y: usize, x: usize) -> Arrow {
        match &self.points {
            PointSet::Finite(p) => y * p.len() + x,
            PointSet::Naturals => (y + x) * (y + x + 1) / 2 + x,
        }
    }

    /// (y, x) for an arrow id.
    pub fn ends(&self, p: Arrow) -> (usize, usize) {
        match &self.points {
            PointSet::Finite(pts) => (p / pts.len(), p % pts.len()),
            PointSet::Naturals => {
                let mut w = ((((8 * p + 1) as f64).sqrt() - 1.0) / 2.0).floor() as usize;
                // Correct any floating error in the diagonal index.
                while w * (w + 1) / 2 > p {
                    w -= 1;
                }
                while (w + 1) * (w + 2) / 2 <= p {
                    w += 1;
                }
                let x = p - w * (w + 1) / 2;
                (w - x, x)
            }
        }
    }

    fn point_label(&self, i: usize) -> String {
        match &self.points {
            PointSet::Finite(p) => p[i].clone(),
            PointSet::Naturals => i.to_string(),
        }
    }

    /// Materialize the table of a finite pair groupoid.
    pub fn tabulate(&self) -> Result<FiniteGroupoid> {
        FiniteGroupoid::tabulate(self)
    }
}

impl Groupoid for PairGroupoid {
    fn name(&self) -> String {
        match &self.points {
            PointSet::Finite(p) => format!("pair{}", p.len()),
            PointSet::Naturals => "pairN".to_string(),
        }
    }

    fn size(&self) -> Option<usize> {
        match &self.points {
            PointSet::Finite(p) => Some(p.len() * p.len()),
            PointSet::Naturals => None,
        }
    }

    fn source(&self, p: Arrow) -> Arrow {
        let (_, x) = self.ends(p);
        self.arrow(x, x)
    }

    fn target(&self, p: Arrow) -> Arrow {
        let (y, _) = self.ends(p);
        self.arrow(y, y)
    }

    fn inverse(&self, p: Arrow) -> Arrow {
        let (y, x) = self.ends(p);
        self.arrow(x, y)
    }

    fn compose(&self, p: Arrow, q: Arrow) -> Option<Arrow> {
        let (z, y) = self.ends(p);
        let (y2, x) = self.ends(q);
        (y == y2).then(|| self.arrow(z, x))
    }

    fn label(&self, p: Arrow) -> String {
        let (y, x) = self.ends(p);
        format!("({},{})", self.point_label(y), self.point_label(x))
    }

    fn window(&self, size: usize) -> Vec<Arrow> {
        match &self.points {
            PointSet::Finite(p) => (0..p.len() * p.len()).collect(),
            PointSet::Naturals => {
                let mut w: Vec<Arrow> =
                    (0..size).flat_map(|y| (0..size).map(move |x| (y, x))).map(|(y, x)| self.arrow(y, x)).collect();
                w.sort_unstable();
                w
            }
        }
    }
}

/// A finite groupoid stored as explicit tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupoid {
    name: String,
    labels: Vec<String>,
    source: Vec<Arrow>,
    target: Vec<Arrow>,
    inverse: Vec<Arrow>,
    /// Row-major n×n partial product table.
    compose: Vec<Option<Arrow>>,
}

impl FiniteGroupoid {
    /// Build from raw tables. Only shape is checked here; the algebraic
    /// axioms are the business of [`validate_groupoid`].
    pub fn from_tables(
        name: impl Into<String>,
        labels: Vec<String>,
        source: Vec<Arrow>,
        target: Vec<Arrow>,
        inverse: Vec<Arrow>,
        compose: Vec<Option<Arrow>>,
    ) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::InvalidSpec("groupoid has no elements".into()));
        }
        if source.len() != n || target.len() != n || inverse.len() != n || compose.len() != n * n {
            return Err(Error::InvalidSpec("table sizes do not match the element count".into()));
        }
        let in_range = |v: &Arrow| *v < n;
        if !source.iter().all(in_range)
            || !target.iter().all(in_range)
            || !inverse.iter().all(in_range)
            || !compose.iter().flatten().all(in_range)
        {
            return Err(Error::InvalidSpec("table entry out of range".into()));
        }
        Ok(FiniteGroupoid { name: name.into(), labels, source, target, inverse, compose })
    }

    /// Tabulate any finite groupoid.
    pub fn tabulate(g: &dyn Groupoid) -> Result<Self> {
        let n = g.size().ok_or_else(|| Error::Unsupported("cannot tabulate a lazy groupoid".into()))?;
        let mut compose = Vec::with_capacity(n * n);
        for p in 0..n {
            for q in 0..n {
                compose.push(g.compose(p, q));
            }
        }
        Self::from_tables(
            g.name(),
            (0..n).map(|p| g.label(p)).collect(),
            (0..n).map(|p| g.source(p)).collect(),
            (0..n).map(|p| g.target(p)).collect(),
            (0..n).map(|p| g.inverse(p)).collect(),
            compose,
        )
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<Arrow> {
        self.labels.iter().position(|l| l == label)
    }

    /// Overwrite one product; used to build corrupted fixtures.
    pub fn set_compose(&mut self, p: Arrow, q: Arrow, r: Option<Arrow>) {
        let n = self.len();
        self.compose[p * n + q] = r;
    }

    pub fn rename(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Disjoint union; labels are prefixed with the part number.
    pub fn disjoint_union(name: impl Into<String>, parts: &[FiniteGroupoid]) -> Result<Self> {
        let total: usize = parts.iter().map(|g| g.len()).sum();
        let mut labels = Vec::with_capacity(total);
        let (mut source, mut target, mut inverse) = (Vec::new(), Vec::new(), Vec::new());
        let mut compose = vec![None; total * total];
        let mut offset = 0;
        for (i, g) in parts.iter().enumerate() {
            let n = g.len();
            for p in 0..n {
                labels.push(format!("{i}:{}", g.labels[p]));
                source.push(g.source[p] + offset);
                target.push(g.target[p] + offset);
                inverse.push(g.inverse[p] + offset);
                for q in 0..n {
                    compose[(p + offset) * total + q + offset] = g.compose[p * n + q].map(|r| r + offset);
                }
            }
            offset += n;
        }
        Self::from_tables(name, labels, source, target, inverse, compose)
    }
}

impl Groupoid for FiniteGroupoid {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn size(&self) -> Option<usize> {
        Some(self.labels.len())
    }

    fn source(&self, p: Arrow) -> Arrow {
        self.source[p]
    }

    fn target(&self, p: Arrow) -> Arrow {
        self.target[p]
    }

    fn inverse(&self, p: Arrow) -> Arrow {
        self.inverse[p]
    }

    fn compose(&self, p: Arrow, q: Arrow) -> Option<Arrow> {
        self.compose[p * self.labels.len() + q]
    }

    fn label(&self, p: Arrow) -> String {
        self.labels[p].clone()
    }

    fn window(&self, _size: usize) -> Vec<Arrow> {
        (0..self.labels.len()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_two_product() {
        let g = PairGroupoid::on(2);
        // (2,1)(1,2) = (2,2)
        let a = g.arrow(1, 0);
        let ainv = g.arrow(0, 1);
        assert_eq!(g.compose(a, ainv), Some(g.arrow(1, 1)));
        assert_eq!(g.label(g.compose(a, ainv).unwrap()), "(2,2)");
        assert_eq!(g.compose(a, a), None);
    }

    #[test]
    fn pair_counts_by_enumeration() {
        for n in 1..=4 {
            let g = PairGroupoid::on(n);
            let all = g.window(0);
            assert_eq!(all.len(), n * n);
            assert_eq!(units(&g, &all).len(), n);
            let composable = all.iter().flat_map(|&p| all.iter().map(move |&q| (p, q))).filter(|&(p, q)| g.compose(p, q).is_some()).count();
            assert_eq!(composable, n * n * n);
        }
    }

    #[test]
    fn cantor_pairing_round_trip() {
        let g = PairGroupoid::naturals();
        for y in 0..40 {
            for x in 0..40 {
                assert_eq!(g.ends(g.arrow(y, x)), (y, x));
            }
        }
        for p in 0..2000 {
            let (y, x) = g.ends(p);
            assert_eq!(g.arrow(y, x), p);
        }
    }

    #[test]
    fn naturals_window_has_square_size() {
        assert_eq!(PairGroupoid::naturals().window(5).len(), 25);
    }

    #[test]
    fn rule_and_table_agree() {
        let g = PairGroupoid::on(3);
        let t = g.tabulate().unwrap();
        for p in 0..9 {
            assert_eq!(g.source(p), t.source(p));
            assert_eq!(g.target(p), t.target(p));
            assert_eq!(g.inverse(p), t.inverse(p));
            for q in 0..9 {
                assert_eq!(g.compose(p, q), t.compose(p, q));
            }
        }
    }

    #[test]
    fn local_window_is_closed_enough() {
        let g = PairGroupoid::naturals();
        let p = g.arrow(3, 7);
        let w = local_window(&g, &[p]);
        for q in [p, g.source(p), g.target(p), g.inverse(p), g.arrow(3, 3), g.arrow(7, 7)] {
            assert!(w.contains(&q));
        }
    }
}
