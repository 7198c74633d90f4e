//! Structured verification reports.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Check {
    pub id: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<BTreeMap<String, String>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    NotWmha,
    Wmha,
    RegularWmha,
    WmhaStar,
    RegularWmhaStar,
    Mha,
    WeakHopf,
    /// Used by reports that only validate (groupoids, algebras, pairings).
    Pass,
    Fail,
}

impl Verdict {
    pub fn is_positive(self) -> bool {
        !matches!(self, Verdict::NotWmha | Verdict::Fail)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::NotWmha => "not-wmha",
            Verdict::Wmha => "wmha",
            Verdict::RegularWmha => "regular-wmha",
            Verdict::WmhaStar => "wmha-star",
            Verdict::RegularWmhaStar => "regular-wmha-star",
            Verdict::Mha => "mha",
            Verdict::WeakHopf => "weak-hopf",
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub structure: String,
    pub checks: Vec<Check>,
    pub verdict: Verdict,
}

/// Witness builder: ordered string fields.
#[derive(Clone, Debug, Default)]
pub struct Witness(BTreeMap<String, String>);

impl Witness {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, key: &str, value: impl fmt::Display) -> Self {
        self.0.insert(key.to_string(), value.to_string());
        self
    }

    pub fn with_debug(mut self, key: &str, value: impl fmt::Debug) -> Self {
        self.0.insert(key.to_string(), format!("{value:?}"));
        self
    }
}

impl Report {
    pub fn new(structure: impl Into<String>) -> Self {
        Report { structure: structure.into(), checks: Vec::new(), verdict: Verdict::Pass }
    }

    pub fn pass(&mut self, id: &str) {
        self.checks.push(Check { id: id.to_string(), status: Status::Pass, witness: None });
    }

    pub fn fail(&mut self, id: &str, witness: Witness) {
        self.checks.push(Check { id: id.to_string(), status: Status::Fail, witness: Some(witness.0) });
    }

    pub fn skip(&mut self, id: &str, reason: &str) {
        let w = Witness::new().with("reason", reason);
        self.checks.push(Check { id: id.to_string(), status: Status::Skipped, witness: Some(w.0) });
    }

    /// Record `Ok(())` as pass and `Err(w)` as fail.
    pub fn record(&mut self, id: &str, outcome: std::result::Result<(), Witness>) -> bool {
        match outcome {
            Ok(()) => {
                self.pass(id);
                true
            }
            Err(w) => {
                self.fail(id, w);
                false
            }
        }
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn get(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn status(&self, id: &str) -> Option<Status> {
        self.get(id).map(|c| c.status)
    }

    pub fn passed(&self, id: &str) -> bool {
        self.status(id) == Some(Status::Pass)
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    /// Set the verdict of a plain validation report.
    pub fn conclude(mut self) -> Self {
        self.verdict = if self.all_passed() { Verdict::Pass } else { Verdict::Fail };
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(s: &str) -> crate::error::Result<Report> {
        serde_json::from_str(s).map_err(|e| crate::error::Error::Parse(e.to_string()))
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("structure: {}\n", self.structure);
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Skipped => "skip",
            };
            out.push_str(&format!("  [{tag}] {}", c.id));
            if let Some(w) = &c.witness {
                let parts: Vec<String> = w.iter().map(|(k, v)| format!("{k}={v}")).collect();
                out.push_str(&format!("  ({})", parts.join(", ")));
            }
            out.push('\n');
        }
        out.push_str(&format!("verdict: {}\n", self.verdict));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let mut r = Report::new("K(G2)");
        r.pass("coproduct.coassociative");
        r.fail("kernel.t1", Witness::new().with("a", "δ(1,2)"));
        r.skip("extension.delta-unit", "lazy algebra");
        r.verdict = Verdict::RegularWmhaStar;
        let back = Report::from_json(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert!(r.to_json().contains("\"regular-wmha-star\""));
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let s = r#"{"structure":"x","checks":[],"verdict":"wmha","extra":1}"#;
        assert!(Report::from_json(s).is_err());
    }

    #[test]
    fn skipped_checks_do_not_fail() {
        let mut r = Report::new("x");
        r.skip("a", "n/a");
        assert!(r.conclude().verdict.is_positive());
    }
}
