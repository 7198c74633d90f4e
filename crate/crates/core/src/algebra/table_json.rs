//! Structure-constant JSON for table algebras.
//!
//! Coefficients are triples `["k", "re", "im"]` with rational strings such as
//! `"-3/4"`; the listed basis order fixes the indices.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::TableAlgebra;
use crate::error::{Error, Result};
use crate::finvec::Vec1;
use crate::scalar::Scalar;

pub type Terms = Vec<[String; 3]>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableAlgebraJson {
    pub basis: Vec<String>,
    /// `"i,j" → e_i e_j`; missing pairs multiply to zero.
    pub mult: BTreeMap<String, Terms>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub star: Option<BTreeMap<String, Terms>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<Terms>,
}

pub(crate) fn parse_terms(ix: &HashMap<&str, usize>, terms: &Terms) -> Result<Vec1> {
    let mut v = Vec1::zero();
    for [k, re, im] in terms {
        let i = *ix.get(k.as_str()).ok_or_else(|| Error::InvalidSpec(format!("unknown basis label {k:?}")))?;
        v.add_term(i, Scalar::parse_parts(re, im)?);
    }
    Ok(v)
}

pub(crate) fn render_terms(labels: &[String], v: &Vec1) -> Terms {
    v.iter()
        .map(|(i, c)| {
            let s = |r: &num_rational::BigRational| {
                if r.denom() == &num_bigint::BigInt::from(1) {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            };
            [labels[*i].clone(), s(c.re()), s(c.im())]
        })
        .collect()
}

pub(crate) fn label_index(labels: &[String]) -> Result<HashMap<&str, usize>> {
    let mut ix = HashMap::new();
    for (i, l) in labels.iter().enumerate() {
        if l.contains(',') {
            return Err(Error::InvalidSpec(format!("basis label {l:?} contains a comma")));
        }
        if ix.insert(l.as_str(), i).is_some() {
            return Err(Error::InvalidSpec(format!("duplicate basis label {l:?}")));
        }
    }
    Ok(ix)
}

impl TableAlgebraJson {
    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("tables serialize")
    }

    pub fn build(&self, name: &str) -> Result<TableAlgebra> {
        let ix = label_index(&self.basis)?;
        let n = self.basis.len();
        let mut mult = vec![Vec1::zero(); n * n];
        for (key, terms) in &self.mult {
            let (a, b) = key
                .split_once(',')
                .ok_or_else(|| Error::InvalidSpec(format!("mult key {key:?} is not of the form \"i,j\"")))?;
            let find = |l: &str| ix.get(l).copied().ok_or_else(|| Error::InvalidSpec(format!("unknown basis label {l:?}")));
            mult[find(a)? * n + find(b)?] = parse_terms(&ix, terms)?;
        }
        let mut alg = TableAlgebra::new(name, self.basis.clone(), mult)?;
        if let Some(star) = &self.star {
            let mut s = Vec::with_capacity(n);
            for l in &self.basis {
                let t = star.get(l).ok_or_else(|| Error::InvalidSpec(format!("star of {l:?} missing")))?;
                s.push(parse_terms(&ix, t)?);
            }
            alg = alg.with_star(s);
        }
        if let Some(u) = &self.unit {
            alg = alg.with_unit(parse_terms(&ix, u)?);
        }
        Ok(alg)
    }

    pub fn from_algebra(alg: &TableAlgebra) -> Self {
        let n = alg.labels.len();
        let mut mult = BTreeMap::new();
        for i in 0..n {
            for j in 0..n {
                let v = &alg.mult[i * n + j];
                if !v.is_zero() {
                    mult.insert(format!("{},{}", alg.labels[i], alg.labels[j]), render_terms(&alg.labels, v));
                }
            }
        }
        TableAlgebraJson {
            basis: alg.labels.clone(),
            mult,
            star: alg.star.as_ref().map(|s| {
                alg.labels.iter().zip(s).map(|(l, v)| (l.clone(), render_terms(&alg.labels, v))).collect()
            }),
            unit: alg.unit.as_ref().map(|u| render_terms(&alg.labels, u)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::tests::matrices;

    #[test]
    fn round_trip_through_json() {
        let m = matrices();
        let j = TableAlgebraJson::from_algebra(&m);
        let back = TableAlgebraJson::from_json(&j.to_json()).unwrap().build("M2").unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn rejects_unknown_labels_and_keys() {
        let bad = r#"{"basis":["x"],"mult":{"x,y":[["x","1","0"]]}}"#;
        assert!(TableAlgebraJson::from_json(bad).unwrap().build("t").is_err());
        let extra = r#"{"basis":["x"],"mult":{},"colour":1}"#;
        assert!(TableAlgebraJson::from_json(extra).is_err());
        let frac = r#"{"basis":["x"],"mult":{"x,x":[["x","1/0","0"]]}}"#;
        assert!(TableAlgebraJson::from_json(frac).unwrap().build("t").is_err());
    }
}
