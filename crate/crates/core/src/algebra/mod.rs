//! Based algebras and their tensor powers.

mod check;
mod multiplier;
pub(crate) mod table_json;

use std::fmt;
use std::sync::Arc;

pub use check::check_algebra;
pub use multiplier::{interchange_holds, KernelMultiplier, Multiplier, SandwichSide, TensorMultiplier};
pub use table_json::{TableAlgebraJson, Terms};

use crate::error::{Error, Result};
use crate::finvec::{Idx, Vec1, Vec2, Vec3};
use crate::scalar::Scalar;

/// An algebra with a distinguished basis and computable structure constants.
pub trait Algebra: Send + Sync + fmt::Debug {
    fn name(&self) -> String;
    /// `None` for an infinite-dimensional algebra with lazily enumerated basis.
    fn dim(&self) -> Option<usize>;
    fn basis_label(&self, i: Idx) -> String;
    fn mul_basis(&self, i: Idx, j: Idx) -> Vec1;
    /// Image of a basis vector under the involution, if there is one.
    fn star_basis(&self, _i: Idx) -> Option<Vec1> {
        None
    }
    fn has_star(&self) -> bool {
        false
    }
    fn unit(&self) -> Option<Vec1> {
        None
    }
    /// Basis indices of a test window. Finite algebras return every index.
    fn window(&self, size: usize) -> Vec<Idx>;
    /// Indices needed to evaluate products against the given support.
    /// Finite algebras return every index.
    fn local_window(&self, support: &[Idx]) -> Vec<Idx>;
}

pub type AlgRef = Arc<dyn Algebra>;

pub fn is_finite(alg: &dyn Algebra) -> bool {
    alg.dim().is_some()
}

/// All basis indices of a finite algebra.
pub fn basis(alg: &dyn Algebra) -> Result<Vec<Idx>> {
    alg.dim().map(|n| (0..n).collect()).ok_or_else(|| Error::Unsupported(format!("{} is infinite-dimensional", alg.name())))
}

pub fn mul(alg: &dyn Algebra, x: &Vec1, y: &Vec1) -> Vec1 {
    let mut out = Vec1::zero();
    for (i, a) in x.iter() {
        for (j, b) in y.iter() {
            out.add_scaled(&alg.mul_basis(*i, *j), &(a * b));
        }
    }
    out
}

/// Conjugate-linear extension of the involution.
pub fn star(alg: &dyn Algebra, x: &Vec1) -> Option<Vec1> {
    if !alg.has_star() {
        return None;
    }
    Some(x.apply_conj(|&i| alg.star_basis(i).expect("star present")))
}

pub fn star2(alg: &dyn Algebra, x: &Vec2) -> Option<Vec2> {
    if !alg.has_star() {
        return None;
    }
    let mut out = Vec2::zero();
    for ((a, b), c) in x.iter() {
        let t = alg.star_basis(*a)?.tensor(&alg.star_basis(*b)?);
        out.add_scaled(&t, &c.conj());
    }
    Some(out)
}

/// Product in A⊗A.
pub fn mul2(alg: &dyn Algebra, x: &Vec2, y: &Vec2) -> Vec2 {
    let mut out = Vec2::zero();
    for ((a, b), c) in x.iter() {
        for ((a2, b2), d) in y.iter() {
            let l = alg.mul_basis(*a, *a2);
            if l.is_zero() {
                continue;
            }
            let r = alg.mul_basis(*b, *b2);
            out.add_scaled(&l.tensor(&r), &(c * d));
        }
    }
    out
}

/// Product in A⊗A⊗A.
pub fn mul3(alg: &dyn Algebra, x: &Vec3, y: &Vec3) -> Vec3 {
    let mut out = Vec3::zero();
    for ((a, b, c), s) in x.iter() {
        for ((a2, b2, c2), t) in y.iter() {
            let l = alg.mul_basis(*a, *a2);
            if l.is_zero() {
                continue;
            }
            let m = alg.mul_basis(*b, *b2);
            if m.is_zero() {
                continue;
            }
            let r = alg.mul_basis(*c, *c2);
            let st = s * t;
            for (i, u) in l.iter() {
                for (j, v) in m.iter() {
                    let uv = u * v;
                    for (k, w) in r.iter() {
                        out.add_term((*i, *j, *k), &(&uv * w) * &st);
                    }
                }
            }
        }
    }
    out
}

/// Multiply `a` from the left into one leg of a two-fold tensor.
pub fn lmul_leg2(alg: &dyn Algebra, leg: usize, a: &Vec1, x: &Vec2) -> Vec2 {
    map_leg2(x, leg, |i| mul(alg, a, &Vec1::basis(i)))
}

/// Multiply `b` from the right into one leg of a two-fold tensor.
pub fn rmul_leg2(alg: &dyn Algebra, leg: usize, x: &Vec2, b: &Vec1) -> Vec2 {
    map_leg2(x, leg, |i| mul(alg, &Vec1::basis(i), b))
}

/// Apply a linear map (given on basis vectors) to one leg.
pub fn map_leg2(x: &Vec2, leg: usize, mut f: impl FnMut(Idx) -> Vec1) -> Vec2 {
    let mut out = Vec2::zero();
    for ((a, b), c) in x.iter() {
        let t = if leg == 0 { f(*a).tensor(&Vec1::basis(*b)) } else { Vec1::basis(*a).tensor(&f(*b)) };
        out.add_scaled(&t, c);
    }
    out
}

/// Apply linear maps to both legs.
pub fn map_both2(x: &Vec2, mut f: impl FnMut(Idx) -> Vec1, mut g: impl FnMut(Idx) -> Vec1) -> Vec2 {
    let mut out = Vec2::zero();
    for ((a, b), c) in x.iter() {
        out.add_scaled(&f(*a).tensor(&g(*b)), c);
    }
    out
}

pub fn map_leg3(x: &Vec3, leg: usize, mut f: impl FnMut(Idx) -> Vec1) -> Vec3 {
    let mut out = Vec3::zero();
    for ((a, b, c), s) in x.iter() {
        let image = f([*a, *b, *c][leg]);
        for (i, t) in image.iter() {
            let key = match leg {
                0 => (*i, *b, *c),
                1 => (*a, *i, *c),
                _ => (*a, *b, *i),
            };
            out.add_term(key, s * t);
        }
    }
    out
}

/// Apply a linear map A⊗A → A⊗A to legs (0,1) or (1,2) of a three-fold tensor.
pub fn map_legs3(x: &Vec3, first: usize, mut f: impl FnMut(Idx, Idx) -> Vec2) -> Vec3 {
    let mut out = Vec3::zero();
    for ((a, b, c), s) in x.iter() {
        if first == 0 {
            for ((i, j), t) in f(*a, *b).iter() {
                out.add_term((*i, *j, *c), s * t);
            }
        } else {
            for ((i, j), t) in f(*b, *c).iter() {
                out.add_term((*a, *i, *j), s * t);
            }
        }
    }
    out
}

/// Apply a functional to one leg.
pub fn contract_leg2(x: &Vec2, leg: usize, mut eps: impl FnMut(Idx) -> Scalar) -> Vec1 {
    let mut out = Vec1::zero();
    for ((a, b), c) in x.iter() {
        let (keep, drop) = if leg == 0 { (*b, *a) } else { (*a, *b) };
        let e = eps(drop);
        if !e.is_zero() {
            out.add_term(keep, c * &e);
        }
    }
    out
}

/// Multiplication map m(a⊗b) = ab.
pub fn multiply_legs(alg: &dyn Algebra, x: &Vec2) -> Vec1 {
    let mut out = Vec1::zero();
    for ((a, b), c) in x.iter() {
        out.add_scaled(&alg.mul_basis(*a, *b), c);
    }
    out
}

/// Embed a two-fold tensor in legs (0,2) of a three-fold tensor with `mid` in leg 1.
pub fn leg13(x: &Vec2, mid: &Vec1) -> Vec3 {
    let mut out = Vec3::zero();
    for ((a, c), s) in x.iter() {
        for (b, t) in mid.iter() {
            out.add_term((*a, *b, *c), s * t);
        }
    }
    out
}

pub fn tensor_12(x: &Vec2, c: &Vec1) -> Vec3 {
    let mut out = Vec3::zero();
    for ((a, b), s) in x.iter() {
        for (k, t) in c.iter() {
            out.add_term((*a, *b, *k), s * t);
        }
    }
    out
}

pub fn tensor_23(a: &Vec1, x: &Vec2) -> Vec3 {
    let mut out = Vec3::zero();
    for (i, s) in a.iter() {
        for ((b, c), t) in x.iter() {
            out.add_term((*i, *b, *c), s * t);
        }
    }
    out
}

pub fn fmt1(alg: &dyn Algebra, v: &Vec1) -> String {
    fmt_terms(v.iter().map(|(i, c)| (alg.basis_label(*i), c)))
}

pub fn fmt2(alg: &dyn Algebra, v: &Vec2) -> String {
    fmt_terms(v.iter().map(|((a, b), c)| (format!("{}⊗{}", alg.basis_label(*a), alg.basis_label(*b)), c)))
}

pub fn fmt3(alg: &dyn Algebra, v: &Vec3) -> String {
    fmt_terms(v.iter().map(|((a, b, d), c)| {
        (format!("{}⊗{}⊗{}", alg.basis_label(*a), alg.basis_label(*b), alg.basis_label(*d)), c)
    }))
}

fn fmt_terms<'a>(terms: impl Iterator<Item = (String, &'a Scalar)>) -> String {
    let parts: Vec<String> = terms
        .map(|(l, c)| if c.is_one() { l } else { format!("({c}){l}") })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// Algebra given by explicit structure constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableAlgebra {
    pub name: String,
    pub labels: Vec<String>,
    /// Row-major products of basis vectors.
    pub mult: Vec<Vec1>,
    pub star: Option<Vec<Vec1>>,
    pub unit: Option<Vec1>,
}

impl TableAlgebra {
    pub fn new(name: impl Into<String>, labels: Vec<String>, mult: Vec<Vec1>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::InvalidSpec("algebra has an empty basis".into()));
        }
        if mult.len() != n * n {
            return Err(Error::InvalidSpec("multiplication table has the wrong size".into()));
        }
        if mult.iter().any(|v| v.keys().any(|&k| k >= n)) {
            return Err(Error::InvalidSpec("structure constant refers to an unknown basis index".into()));
        }
        Ok(TableAlgebra { name: name.into(), labels, mult, star: None, unit: None })
    }

    /// Tabulate a finite algebra.
    pub fn tabulate(alg: &dyn Algebra) -> Result<Self> {
        let b = basis(alg)?;
        let n = b.len();
        let mut mult = Vec::with_capacity(n * n);
        for &i in &b {
            for &j in &b {
                mult.push(alg.mul_basis(i, j));
            }
        }
        let mut t = TableAlgebra::new(alg.name(), b.iter().map(|&i| alg.basis_label(i)).collect(), mult)?;
        if alg.has_star() {
            t.star = Some(b.iter().map(|&i| alg.star_basis(i).expect("star present")).collect());
        }
        t.unit = alg.unit();
        Ok(t)
    }

    pub fn with_star(mut self, star: Vec<Vec1>) -> Self {
        self.star = Some(star);
        self
    }

    pub fn with_unit(mut self, unit: Vec1) -> Self {
        self.unit = Some(unit);
        self
    }
}

impl Algebra for TableAlgebra {
    fn name(&self) -> String {
        self.name.clone()
    }
    fn dim(&self) -> Option<usize> {
        Some(self.labels.len())
    }
    fn basis_label(&self, i: Idx) -> String {
        self.labels.get(i).cloned().unwrap_or_else(|| format!("#{i}"))
    }
    fn mul_basis(&self, i: Idx, j: Idx) -> Vec1 {
        self.mult[i * self.labels.len() + j].clone()
    }
    fn star_basis(&self, i: Idx) -> Option<Vec1> {
        self.star.as_ref().map(|s| s[i].clone())
    }
    fn has_star(&self) -> bool {
        self.star.is_some()
    }
    fn unit(&self) -> Option<Vec1> {
        self.unit.clone()
    }
    fn window(&self, _size: usize) -> Vec<Idx> {
        (0..self.labels.len()).collect()
    }
    fn local_window(&self, _support: &[Idx]) -> Vec<Idx> {
        (0..self.labels.len()).collect()
    }
}

/// The opposite algebra: same basis, product a·b := ba.
#[derive(Clone, Debug)]
pub struct OpAlgebra(pub AlgRef);

impl Algebra for OpAlgebra {
    fn name(&self) -> String {
        format!("op({})", self.0.name())
    }
    fn dim(&self) -> Option<usize> {
        self.0.dim()
    }
    fn basis_label(&self, i: Idx) -> String {
        self.0.basis_label(i)
    }
    fn mul_basis(&self, i: Idx, j: Idx) -> Vec1 {
        self.0.mul_basis(j, i)
    }
    fn star_basis(&self, i: Idx) -> Option<Vec1> {
        self.0.star_basis(i)
    }
    fn has_star(&self) -> bool {
        self.0.has_star()
    }
    fn unit(&self) -> Option<Vec1> {
        self.0.unit()
    }
    fn window(&self, size: usize) -> Vec<Idx> {
        self.0.window(size)
    }
    fn local_window(&self, support: &[Idx]) -> Vec<Idx> {
        self.0.local_window(support)
    }
}

/// Structure-constant equality of two finite algebras.
pub fn same_structure(a: &dyn Algebra, b: &dyn Algebra) -> Result<bool> {
    let (ba, bb) = (basis(a)?, basis(b)?);
    if ba.len() != bb.len() {
        return Ok(false);
    }
    Ok(ba.iter().all(|&i| ba.iter().all(|&j| a.mul_basis(i, j) == b.mul_basis(i, j))))
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    /// 2×2 matrices with matrix units e_ij at index 2i + j.
    pub(crate) fn matrices() -> TableAlgebra {
        let mut mult = Vec::new();
        for i in 0..4 {
            for j in 0..4 {
                let (a, b, c, d) = (i / 2, i % 2, j / 2, j % 2);
                mult.push(if b == c { Vec1::basis(2 * a + d) } else { Vec1::zero() });
            }
        }
        TableAlgebra::new("M2", vec!["e11".into(), "e12".into(), "e21".into(), "e22".into()], mult)
            .unwrap()
            .with_unit(Vec1::basis(0).add(&Vec1::basis(3)))
    }

    #[test]
    fn op_of_op_is_identity() {
        let m: AlgRef = Arc::new(matrices());
        let oo = OpAlgebra(Arc::new(OpAlgebra(m.clone())));
        assert!(same_structure(m.as_ref(), &oo).unwrap());
        assert!(!same_structure(m.as_ref(), &OpAlgebra(m.clone())).unwrap());
    }

    #[test]
    fn mul2_is_legwise() {
        let m = matrices();
        let x = Vec2::basis((1, 0));
        let y = Vec2::basis((2, 0));
        // (e12⊗e11)(e21⊗e11) = e11⊗e11
        assert_eq!(mul2(&m, &x, &y), Vec2::basis((0, 0)));
    }

    #[test]
    fn leg_maps() {
        let x = Vec2::basis((1, 2));
        assert_eq!(map_leg2(&x, 1, |i| Vec1::basis(i + 1)), Vec2::basis((1, 3)));
        assert_eq!(contract_leg2(&x, 0, |_| Scalar::from_int(3)), Vec1::term(2, Scalar::from_int(3)));
        let m = matrices();
        assert_eq!(multiply_legs(&m, &x), Vec1::basis(0));
    }
}
