//! JSON groupoid specifications.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{Arrow, FiniteGroupoid, Groupoid, PairGroupoid};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Points {
    Finite(Vec<String>),
    /// The literal string `"naturals"`.
    Lazy(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub elements: Vec<String>,
    /// `"g,h" → gh`.
    pub table: BTreeMap<String, String>,
    pub unit: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupoidSpec {
    Table {
        elements: Vec<String>,
        source: BTreeMap<String, String>,
        target: BTreeMap<String, String>,
        inverse: BTreeMap<String, String>,
        /// `"p,q" → pq`, listed exactly for composable pairs.
        compose: BTreeMap<String, String>,
    },
    Pair {
        points: Points,
    },
    Equivalence {
        points: Vec<String>,
        classes: Vec<Vec<String>>,
    },
    Action {
        group: GroupSpec,
        points: Vec<String>,
        /// `"h,x" → hx`.
        action: BTreeMap<String, String>,
    },
    Group {
        elements: Vec<String>,
        table: BTreeMap<String, String>,
        unit: String,
    },
    DisjointUnion {
        parts: Vec<GroupoidSpec>,
    },
}

impl GroupoidSpec {
    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("specs serialize")
    }
}

fn index(labels: &[String], what: &str) -> Result<HashMap<String, usize>> {
    let mut m = HashMap::new();
    for (i, l) in labels.iter().enumerate() {
        if l.contains(',') {
            return Err(Error::InvalidSpec(format!("{what} label {l:?} contains a comma")));
        }
        if m.insert(l.clone(), i).is_some() {
            return Err(Error::InvalidSpec(format!("duplicate {what} {l:?}")));
        }
    }
    if m.is_empty() {
        return Err(Error::InvalidSpec(format!("no {what}s given")));
    }
    Ok(m)
}

fn lookup(ix: &HashMap<String, usize>, key: &str, what: &str) -> Result<usize> {
    ix.get(key).copied().ok_or_else(|| Error::InvalidSpec(format!("unknown {what} {key:?}")))
}

fn split_pair(key: &str) -> Result<(&str, &str)> {
    key.split_once(',').ok_or_else(|| Error::InvalidSpec(format!("table key {key:?} is not of the form \"p,q\"")))
}

/// A group given by its multiplication table, checked for the group axioms.
struct Group {
    labels: Vec<String>,
    mul: Vec<usize>,
    unit: usize,
    inv: Vec<usize>,
}

impl Group {
    fn from_spec(elements: &[String], table: &BTreeMap<String, String>, unit: &str) -> Result<Group> {
        let ix = index(elements, "group element")?;
        let n = elements.len();
        let mut mul = vec![usize::MAX; n * n];
        for (k, v) in table {
            let (a, b) = split_pair(k)?;
            let (a, b) = (lookup(&ix, a, "group element")?, lookup(&ix, b, "group element")?);
            mul[a * n + b] = lookup(&ix, v, "group element")?;
        }
        if let Some(pos) = mul.iter().position(|&m| m == usize::MAX) {
            return Err(Error::InvalidSpec(format!(
                "group table is missing the product {},{}",
                elements[pos / n],
                elements[pos % n]
            )));
        }
        let unit = lookup(&ix, unit, "group element")?;
        for g in 0..n {
            if mul[unit * n + g] != g || mul[g * n + unit] != g {
                return Err(Error::InvalidSpec(format!("{unit:?} is not a unit for {}", elements[g])));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul[mul[a * n + b] * n + c] != mul[a * n + mul[b * n + c]] {
                        return Err(Error::InvalidSpec(format!(
                            "group product not associative at ({},{},{})",
                            elements[a], elements[b], elements[c]
                        )));
                    }
                }
            }
        }
        let mut inv = vec![0; n];
        for (g, slot) in inv.iter_mut().enumerate() {
            *slot = (0..n)
                .find(|&h| mul[g * n + h] == unit && mul[h * n + g] == unit)
                .ok_or_else(|| Error::InvalidSpec(format!("{} has no inverse", elements[g])))?;
        }
        Ok(Group { labels: elements.to_vec(), mul, unit, inv })
    }

    fn len(&self) -> usize {
        self.labels.len()
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.len() + b]
    }
}

fn build_action(
    group: &Group,
    points: &[String],
    action: &BTreeMap<String, String>,
    name: &str,
) -> Result<FiniteGroupoid> {
    let pix = index(points, "point")?;
    let gix: HashMap<String, usize> = group.labels.iter().cloned().enumerate().map(|(i, l)| (l, i)).collect();
    let (nh, nx) = (group.len(), points.len());
    let mut act = vec![usize::MAX; nh * nx];
    for (k, v) in action {
        let (h, x) = split_pair(k)?;
        let h = lookup(&gix, h, "group element")?;
        let x = lookup(&pix, x, "point")?;
        act[h * nx + x] = lookup(&pix, v, "point")?;
    }
    if act.contains(&usize::MAX) {
        return Err(Error::InvalidSpec("action table is incomplete".into()));
    }
    let hx = |h: usize, x: usize| act[h * nx + x];
    for x in 0..nx {
        if hx(group.unit, x) != x {
            return Err(Error::InvalidSpec(format!("unit does not fix point {}", points[x])));
        }
        for k in 0..nh {
            for h in 0..nh {
                if hx(group.mul(k, h), x) != hx(k, hx(h, x)) {
                    return Err(Error::InvalidSpec(format!(
                        "action not associative at ({},{},{})",
                        group.labels[k], group.labels[h], points[x]
                    )));
                }
            }
        }
    }
    // Arrow (hx, h, x) has id h·|X| + x.
    let id = |h: usize, x: usize| h * nx + x;
    let n = nh * nx;
    let mut labels = Vec::with_capacity(n);
    let (mut source, mut target, mut inverse) = (Vec::new(), Vec::new(), Vec::new());
    for h in 0..nh {
        for x in 0..nx {
            let y = hx(h, x);
            labels.push(format!("({},{},{})", points[y], group.labels[h], points[x]));
            source.push(id(group.unit, x));
            target.push(id(group.unit, y));
            inverse.push(id(group.inv[h], y));
        }
    }
    let mut compose = vec![None; n * n];
    for k in 0..nh {
        for y in 0..nx {
            for h in 0..nh {
                for x in 0..nx {
                    if hx(h, x) == y {
                        compose[id(k, y) * n + id(h, x)] = Some(id(group.mul(k, h), x));
                    }
                }
            }
        }
    }
    FiniteGroupoid::from_tables(name, labels, source, target, inverse, compose)
}

fn build_finite(spec: &GroupoidSpec, name: &str) -> Result<FiniteGroupoid> {
    match spec {
        GroupoidSpec::Table { elements, source, target, inverse, compose } => {
            let ix = index(elements, "element")?;
            let map = |m: &BTreeMap<String, String>, what: &str| -> Result<Vec<Arrow>> {
                elements
                    .iter()
                    .map(|e| {
                        let v = m.get(e).ok_or_else(|| Error::InvalidSpec(format!("{what} of {e:?} missing")))?;
                        lookup(&ix, v, "element")
                    })
                    .collect()
            };
            let (s, t, i) = (map(source, "source")?, map(target, "target")?, map(inverse, "inverse")?);
            let n = elements.len();
            let mut table = vec![None; n * n];
            for (k, v) in compose {
                let (p, q) = split_pair(k)?;
                let (p, q) = (lookup(&ix, p, "element")?, lookup(&ix, q, "element")?);
                table[p * n + q] = Some(lookup(&ix, v, "element")?);
            }
            FiniteGroupoid::from_tables(name, elements.clone(), s, t, i, table)
        }
        GroupoidSpec::Pair { points: Points::Finite(p) } => {
            index(p, "point")?;
            PairGroupoid::finite(p.clone()).tabulate().map(|g| g.rename(name))
        }
        GroupoidSpec::Pair { points: Points::Lazy(_) } => {
            Err(Error::InvalidSpec("a lazy groupoid cannot be part of a disjoint union".into()))
        }
        GroupoidSpec::Equivalence { points, classes } => {
            let pix = index(points, "point")?;
            let mut class_of = vec![usize::MAX; points.len()];
            for (c, members) in classes.iter().enumerate() {
                for m in members {
                    let x = lookup(&pix, m, "point")?;
                    if class_of[x] != usize::MAX {
                        return Err(Error::InvalidSpec(format!("point {m:?} lies in two classes")));
                    }
                    class_of[x] = c;
                }
            }
            if let Some(x) = class_of.iter().position(|&c| c == usize::MAX) {
                return Err(Error::InvalidSpec(format!("point {:?} lies in no class", points[x])));
            }
            let nx = points.len();
            let pairs: Vec<(usize, usize)> = (0..nx)
                .flat_map(|y| (0..nx).map(move |x| (y, x)))
                .filter(|&(y, x)| class_of[y] == class_of[x])
                .collect();
            let id: HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
            let n = pairs.len();
            let mut compose = vec![None; n * n];
            for (i, &(z, y)) in pairs.iter().enumerate() {
                for (j, &(y2, x)) in pairs.iter().enumerate() {
                    if y == y2 {
                        compose[i * n + j] = Some(id[&(z, x)]);
                    }
                }
            }
            FiniteGroupoid::from_tables(
                name,
                pairs.iter().map(|&(y, x)| format!("({},{})", points[y], points[x])).collect(),
                pairs.iter().map(|&(_, x)| id[&(x, x)]).collect(),
                pairs.iter().map(|&(y, _)| id[&(y, y)]).collect(),
                pairs.iter().map(|&(y, x)| id[&(x, y)]).collect(),
                compose,
            )
        }
        GroupoidSpec::Action { group, points, action } => {
            let g = Group::from_spec(&group.elements, &group.table, &group.unit)?;
            build_action(&g, points, action, name)
        }
        GroupoidSpec::Group { elements, table, unit } => {
            let g = Group::from_spec(elements, table, unit)?;
            let n = g.len();
            let mut compose = Vec::with_capacity(n * n);
            for a in 0..n {
                for b in 0..n {
                    compose.push(Some(g.mul(a, b)));
                }
            }
            FiniteGroupoid::from_tables(name, g.labels.clone(), vec![g.unit; n], vec![g.unit; n], g.inv.clone(), compose)
        }
        GroupoidSpec::DisjointUnion { parts } => {
            if parts.is_empty() {
                return Err(Error::InvalidSpec("disjoint union has no parts".into()));
            }
            let built: Vec<FiniteGroupoid> =
                parts.iter().enumerate().map(|(i, p)| build_finite(p, &format!("{name}.{i}"))).collect::<Result<_>>()?;
            FiniteGroupoid::disjoint_union(name, &built)
        }
    }
}

/// Default structure name for a spec.
pub fn spec_name(spec: &GroupoidSpec) -> String {
    match spec {
        GroupoidSpec::Table { elements, .. } => format!("table{}", elements.len()),
        GroupoidSpec::Pair { points: Points::Finite(p) } => format!("pair{}", p.len()),
        GroupoidSpec::Pair { points: Points::Lazy(_) } => "pairN".into(),
        GroupoidSpec::Equivalence { points, classes } => format!("equiv{}/{}", points.len(), classes.len()),
        GroupoidSpec::Action { group, points, .. } => format!("action{}x{}", group.elements.len(), points.len()),
        GroupoidSpec::Group { elements, .. } => format!("group{}", elements.len()),
        GroupoidSpec::DisjointUnion { parts } => {
            parts.iter().map(spec_name).collect::<Vec<_>>().join("+")
        }
    }
}

/// Construct a groupoid. Finite pair groupoids stay rule-based; every other
/// finite kind is materialized as tables.
pub fn build_groupoid(spec: &GroupoidSpec) -> Result<Arc<dyn Groupoid>> {
    let name = spec_name(spec);
    match spec {
        GroupoidSpec::Pair { points: Points::Lazy(s) } => {
            if s == "naturals" {
                Ok(Arc::new(PairGroupoid::naturals()))
            } else {
                Err(Error::InvalidSpec(format!("points must be a list or \"naturals\", got {s:?}")))
            }
        }
        GroupoidSpec::Pair { points: Points::Finite(p) } => {
            index(p, "point")?;
            Ok(Arc::new(PairGroupoid::finite(p.clone())))
        }
        _ => Ok(Arc::new(build_finite(spec, &name)?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::validate_groupoid;

    pub(crate) fn z2_swap() -> GroupoidSpec {
        GroupoidSpec::from_json(
            r#"{"kind":"action",
                "group":{"elements":["e","g"],"table":{"e,e":"e","e,g":"g","g,e":"g","g,g":"e"},"unit":"e"},
                "points":["1","2"],
                "action":{"e,1":"1","e,2":"2","g,1":"2","g,2":"1"}}"#,
        )
        .unwrap()
    }

    #[test]
    fn action_groupoid_product() {
        let g = build_groupoid(&z2_swap()).unwrap();
        let f = FiniteGroupoid::tabulate(g.as_ref()).unwrap();
        let p = f.index_of("(1,g,2)").unwrap();
        let q = f.index_of("(2,g,1)").unwrap();
        assert_eq!(g.label(g.compose(p, q).unwrap()), "(1,e,1)");
        assert!(validate_groupoid(g.as_ref(), &g.window(0)).all_passed());
    }

    #[test]
    fn group_has_single_unit() {
        let spec = GroupoidSpec::from_json(
            r#"{"kind":"group","elements":["0","1","2"],
                "table":{"0,0":"0","0,1":"1","0,2":"2","1,0":"1","1,1":"2","1,2":"0","2,0":"2","2,1":"0","2,2":"1"},
                "unit":"0"}"#,
        )
        .unwrap();
        let g = build_groupoid(&spec).unwrap();
        let w = g.window(0);
        assert_eq!(crate::groupoid::units(g.as_ref(), &w), vec![0]);
        assert!(w.iter().all(|&p| w.iter().all(|&q| g.compose(p, q).is_some())));
    }

    #[test]
    fn unknown_keys_rejected() {
        assert!(GroupoidSpec::from_json(r#"{"kind":"pair","points":["1"],"colour":"red"}"#).is_err());
        assert!(GroupoidSpec::from_json(r#"{"kind":"moebius"}"#).is_err());
    }

    #[test]
    fn naturals_spelling() {
        let g = build_groupoid(&GroupoidSpec::from_json(r#"{"kind":"pair","points":"naturals"}"#).unwrap()).unwrap();
        assert!(!g.is_finite());
        assert!(build_groupoid(&GroupoidSpec::from_json(r#"{"kind":"pair","points":"reals"}"#).unwrap()).is_err());
    }

    #[test]
    fn non_associative_action_rejected() {
        let mut spec = z2_swap();
        if let GroupoidSpec::Action { action, .. } = &mut spec {
            action.insert("g,1".into(), "1".into());
        }
        assert!(matches!(build_groupoid(&spec), Err(Error::InvalidSpec(_))));
    }

    #[test]
    fn equivalence_and_union() {
        let spec = GroupoidSpec::from_json(
            r#"{"kind":"disjoint_union","parts":[
                {"kind":"equivalence","points":["a","b","c"],"classes":[["a","b"],["c"]]},
                {"kind":"pair","points":["x"]}]}"#,
        )
        .unwrap();
        let g = build_groupoid(&spec).unwrap();
        assert_eq!(g.size(), Some(6));
        assert!(validate_groupoid(g.as_ref(), &g.window(0)).all_passed());
    }

    #[test]
    fn spec_json_round_trip() {
        let s = z2_swap();
        assert_eq!(GroupoidSpec::from_json(&s.to_json()).unwrap(), s);
    }
}
