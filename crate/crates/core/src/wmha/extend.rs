//! Extension of a homomorphism γ : A → M(B) to the multiplier algebra M(A),
//! by factoring e·x = Σ γ(a_i)b_i and y·e = Σ c_jγ(d_j) inside B.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{mul, tensor_12, tensor_23, AlgRef, Multiplier};
use crate::coproduct::{delta_left, delta_right, CopRef};
use crate::error::{Error, Result};
use crate::finvec::{FinVec, Idx, Vec1, Vec2, Vec3};
use crate::linalg::Echelon;
use crate::linop::LinOp;
use crate::scalar::Scalar;
use crate::structure::Idempotent;

type LeftRule<J, K> = Arc<dyn Fn(&J, &K) -> FinVec<K> + Send + Sync>;
type RightRule<J, K> = Arc<dyn Fn(&K, &J) -> FinVec<K> + Send + Sync>;

/// A homomorphism γ from an algebra with basis J into M(B), B with basis K,
/// through γ(a)y and yγ(a) on basis vectors.
pub struct Hom<J, K: Ord> {
    pub left: LeftRule<J, K>,
    pub right: RightRule<J, K>,
}

impl<J, K: Ord> Clone for Hom<J, K> {
    fn clone(&self) -> Self {
        Hom { left: self.left.clone(), right: self.right.clone() }
    }
}

pub trait Key: Ord + Clone + Send + Sync + 'static {}
impl<T: Ord + Clone + Send + Sync + 'static> Key for T {}

/// Chosen factorizations of e·x and x·e for every basis x of a window of B.
pub struct Extension<J: Key, K: Key> {
    gamma: Hom<J, K>,
    /// e·x = Σ c γ(a)b.
    left: BTreeMap<K, Vec<(J, K, Scalar)>>,
    /// x·e = Σ c bγ(a).
    right: BTreeMap<K, Vec<(K, J, Scalar)>>,
}

fn gamma_left<J: Key, K: Key>(g: &Hom<J, K>, a: &FinVec<J>, b: &K) -> FinVec<K> {
    a.apply(|j| (g.left)(j, b))
}

fn gamma_right<J: Key, K: Key>(g: &Hom<J, K>, b: &K, a: &FinVec<J>) -> FinVec<K> {
    a.apply(|j| (g.right)(b, j))
}

impl<J: Key, K: Key> Extension<J, K> {
    /// Factor through generators in the given order (reversed when
    /// `reverse`), stopping once they span as much as e·B.
    pub fn new(gamma: Hom<J, K>, e: &Multiplier<K>, a_window: &[J], b_window: &[K], reverse: bool) -> Result<Self> {
        let mut gens_a: Vec<J> = a_window.to_vec();
        let mut gens_b: Vec<K> = b_window.to_vec();
        if reverse {
            gens_a.reverse();
            gens_b.reverse();
        }
        let targets_l: Vec<FinVec<K>> = b_window.iter().map(|x| e.apply_left(&FinVec::basis(x.clone()))).collect();
        let targets_r: Vec<FinVec<K>> = b_window.iter().map(|x| e.apply_right(&FinVec::basis(x.clone()))).collect();

        let factor_all = |targets: &[FinVec<K>], gen: &dyn Fn(&J, &K) -> FinVec<K>, side: &str| -> Result<Vec<Vec<(J, K, Scalar)>>> {
            let want = Echelon::from_vectors(targets).rank();
            let mut ech = Echelon::with_provenance();
            let mut ids: Vec<(J, K)> = Vec::new();
            'outer: for a in &gens_a {
                for b in &gens_b {
                    if ech.rank() >= want {
                        break 'outer;
                    }
                    ech.insert_tracked(gen(a, b), ids.len());
                    ids.push((a.clone(), b.clone()));
                }
            }
            targets
                .iter()
                .map(|t| {
                    let comb = ech.factor(t).ok_or_else(|| {
                        Error::FactorizationFailure(format!("{side} action of the idempotent leaves γ(A)B"))
                    })?;
                    Ok(comb.iter().map(|(n, c)| (ids[*n].0.clone(), ids[*n].1.clone(), c.clone())).collect())
                })
                .collect()
        };
        let g = gamma.clone();
        let lf = factor_all(&targets_l, &|a, b| (g.left)(a, b), "left")?;
        let rf = factor_all(&targets_r, &|a, b| (g.right)(b, a), "right")?;
        Ok(Extension {
            gamma,
            left: b_window.iter().cloned().zip(lf).collect(),
            right: b_window
                .iter()
                .cloned()
                .zip(rf.into_iter().map(|v| v.into_iter().map(|(a, b, c)| (b, a, c)).collect()))
                .collect(),
        })
    }

    /// γ₁(m)x = Σ c γ(ma)b and xγ₁(m) = Σ c bγ(am), tabulated on the window.
    pub fn extend(&self, m: &Multiplier<J>) -> Multiplier<K> {
        let left: BTreeMap<K, FinVec<K>> = self
            .left
            .iter()
            .map(|(x, terms)| {
                let mut out = FinVec::zero();
                for (a, b, c) in terms {
                    out.add_scaled(&gamma_left(&self.gamma, &m.apply_left(&FinVec::basis(a.clone())), b), c);
                }
                (x.clone(), out)
            })
            .collect();
        let right: BTreeMap<K, FinVec<K>> = self
            .right
            .iter()
            .map(|(x, terms)| {
                let mut out = FinVec::zero();
                for (b, a, c) in terms {
                    out.add_scaled(&gamma_right(&self.gamma, b, &m.apply_right(&FinVec::basis(a.clone()))), c);
                }
                (x.clone(), out)
            })
            .collect();
        Multiplier::two_sided(LinOp::from_matrix(left), LinOp::from_matrix(right))
    }
}

/// γ₁(m) for a single multiplier.
pub fn extend_hom<J: Key, K: Key>(
    gamma: Hom<J, K>,
    e: &Multiplier<K>,
    m: &Multiplier<J>,
    a_window: &[J],
    b_window: &[K],
) -> Result<Multiplier<K>> {
    Ok(Extension::new(gamma, e, a_window, b_window, false)?.extend(m))
}

/// Δ : A → M(A⊗A).
pub fn delta_hom(alg: AlgRef, cp: CopRef) -> Hom<Idx, (Idx, Idx)> {
    let (a2, c2) = (alg.clone(), cp.clone());
    Hom {
        left: Arc::new(move |&a, &k| delta_left(alg.as_ref(), cp.as_ref(), a, &Vec2::basis(k))),
        right: Arc::new(move |&k, &a| delta_right(a2.as_ref(), c2.as_ref(), &Vec2::basis(k), a)),
    }
}

/// Δ⊗ι : A⊗A → M(A⊗A⊗A).
pub fn delta_id_hom(alg: AlgRef, cp: CopRef) -> Hom<(Idx, Idx), (Idx, Idx, Idx)> {
    let (a2, c2) = (alg.clone(), cp.clone());
    Hom {
        left: Arc::new(move |&(a, b), &(x, y, z)| {
            let d = delta_left(alg.as_ref(), cp.as_ref(), a, &Vec2::basis((x, y)));
            tensor_12(&d, &alg.mul_basis(b, z))
        }),
        right: Arc::new(move |&(x, y, z), &(a, b)| {
            let d = delta_right(a2.as_ref(), c2.as_ref(), &Vec2::basis((x, y)), a);
            tensor_12(&d, &a2.mul_basis(z, b))
        }),
    }
}

/// ι⊗Δ : A⊗A → M(A⊗A⊗A).
pub fn id_delta_hom(alg: AlgRef, cp: CopRef) -> Hom<(Idx, Idx), (Idx, Idx, Idx)> {
    let (a2, c2) = (alg.clone(), cp.clone());
    Hom {
        left: Arc::new(move |&(a, b), &(x, y, z)| {
            let d = delta_left(alg.as_ref(), cp.as_ref(), b, &Vec2::basis((y, z)));
            tensor_23(&alg.mul_basis(a, x), &d)
        }),
        right: Arc::new(move |&(x, y, z), &(a, b)| {
            let d = delta_right(a2.as_ref(), c2.as_ref(), &Vec2::basis((y, z)), b);
            tensor_23(&a2.mul_basis(x, a), &d)
        }),
    }
}

/// E as a multiplier of A⊗A.
pub fn e_multiplier(e: &Idempotent) -> Multiplier<(Idx, Idx)> {
    let (l, r) = (e.left.clone(), e.right.clone());
    Multiplier::two_sided(LinOp::new(move |&(p, q)| l(p, q)), LinOp::new(move |&(p, q)| r(p, q)))
}

/// E⊗1 (`leg` 0) or 1⊗E (`leg` 1) as a multiplier of A⊗A⊗A.
pub fn e_leg_multiplier(e: &Idempotent, leg: usize) -> Multiplier<(Idx, Idx, Idx)> {
    let (l, r) = (e.left.clone(), e.right.clone());
    let act = move |f: &crate::structure::Op2, (x, y, z): (Idx, Idx, Idx)| -> Vec3 {
        if leg == 0 {
            tensor_12(&f(x, y), &Vec1::basis(z))
        } else {
            tensor_23(&Vec1::basis(x), &f(y, z))
        }
    };
    let act2 = act;
    Multiplier::two_sided(LinOp::new(move |&k| act(&l, k)), LinOp::new(move |&k| act2(&r, k)))
}

/// Multiplier of A given by an element.
pub fn element_multiplier(alg: AlgRef, a: Vec1) -> Multiplier<Idx> {
    let (a2, x2) = (alg.clone(), a.clone());
    Multiplier::two_sided(
        LinOp::new(move |&j| mul(alg.as_ref(), &a, &Vec1::basis(j))),
        LinOp::new(move |&j| mul(a2.as_ref(), &Vec1::basis(j), &x2)),
    )
}
