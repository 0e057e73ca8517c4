//! Structured verification reports: named checks with computed and expected
//! values, an aggregate status, and deterministic JSON output.
//!
//! Reports are the exchange format between the verification routines and the
//! command-line front end. JSON serialization goes through a sorted-key
//! value tree so that identical reports are byte-identical, which makes
//! golden-file comparisons meaningful.

use std::collections::BTreeMap;

use serde::Serialize;

/// Outcome of a check or a whole report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Inconclusive,
    Fail,
}

/// Where an expected value comes from: stated by the reference material,
/// derived independently by this artifact, or a definitional identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Stated,
    Derived,
    Definition,
}

/// A single verified claim: computed versus expected, exact comparison.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub id: String,
    pub claim: String,
    pub computed: String,
    pub expected: String,
    pub provenance: Provenance,
    pub status: Status,
}

impl Check {
    /// A check that passes iff `computed == expected` exactly.
    pub fn exact(
        id: &str,
        claim: &str,
        computed: impl Into<String>,
        expected: impl Into<String>,
        provenance: Provenance,
    ) -> Check {
        let computed = computed.into();
        let expected = expected.into();
        let status = if computed == expected { Status::Pass } else { Status::Fail };
        Check { id: id.to_string(), claim: claim.to_string(), computed, expected, provenance, status }
    }

    /// A boolean check: expected is "true".
    pub fn holds(id: &str, claim: &str, ok: bool, provenance: Provenance) -> Check {
        Check::exact(id, claim, if ok { "true" } else { "false" }, "true", provenance)
    }

    /// A check that could not be decided either way.
    pub fn inconclusive(id: &str, claim: &str, note: &str) -> Check {
        Check {
            id: id.to_string(),
            claim: claim.to_string(),
            computed: note.to_string(),
            expected: String::new(),
            provenance: Provenance::Derived,
            status: Status::Inconclusive,
        }
    }
}

/// A named bundle of checks with inputs, computed artifacts, and the
/// assumptions the verification relies on.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub id: String,
    pub inputs: BTreeMap<String, String>,
    pub values: BTreeMap<String, serde_json::Value>,
    pub checks: Vec<Check>,
    pub assumptions: Vec<String>,
    pub status: Status,
    pub runtime_ms: u64,
}

impl VerificationReport {
    pub fn new(id: &str) -> VerificationReport {
        VerificationReport {
            id: id.to_string(),
            inputs: BTreeMap::new(),
            values: BTreeMap::new(),
            checks: Vec::new(),
            assumptions: Vec::new(),
            status: Status::Pass,
            runtime_ms: 0,
        }
    }

    pub fn set_input(&mut self, key: &str, value: impl Into<String>) {
        self.inputs.insert(key.to_string(), value.into());
    }

    /// Record a computed artifact (a matrix, a basis, a count) for display.
    pub fn set_value(&mut self, key: &str, value: serde_json::Value) {
        self.values.insert(key.to_string(), value);
    }

    pub fn assume(&mut self, assumption: &str) {
        let s = assumption.to_string();
        if !self.assumptions.contains(&s) {
            self.assumptions.push(s);
        }
    }

    /// Append a check and fold its status into the aggregate.
    pub fn push(&mut self, check: Check) {
        self.status = self.status.max(check.status);
        self.checks.push(check);
    }

    /// Merge another report's checks and assumptions under a prefix.
    pub fn absorb(&mut self, prefix: &str, other: &VerificationReport) {
        for c in &other.checks {
            let mut c = c.clone();
            c.id = format!("{prefix}.{}", c.id);
            self.push(c);
        }
        for a in &other.assumptions {
            self.assume(a);
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Deterministic JSON: sorted keys, trailing newline.
    pub fn to_json_string(&self) -> String {
        let value = serde_json::to_value(self).expect("report serialization cannot fail");
        let mut s = serde_json::to_string_pretty(&value).expect("valid JSON value");
        s.push('\n');
        s
    }

    /// Plain-text rendering, one line per check.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("report {}\n", self.id));
        for (k, v) in &self.inputs {
            out.push_str(&format!("  input {k} = {v}\n"));
        }
        for (k, v) in &self.values {
            out.push_str(&format!("  value {k} = {v}\n"));
        }
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Inconclusive => "????",
            };
            if c.status == Status::Inconclusive {
                out.push_str(&format!("  [{tag}] {}: {} ({})\n", c.id, c.claim, c.computed));
            } else {
                out.push_str(&format!(
                    "  [{tag}] {}: {} (computed {}, expected {})\n",
                    c.id, c.claim, c.computed, c.expected
                ));
            }
        }
        for a in &self.assumptions {
            out.push_str(&format!("  assuming {a}\n"));
        }
        let status = match self.status {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inconclusive => "inconclusive",
        };
        out.push_str(&format!("status {status}\n"));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_aggregation_is_worst_case() {
        let mut r = VerificationReport::new("demo");
        assert_eq!(r.status, Status::Pass);
        r.push(Check::holds("a", "first", true, Provenance::Derived));
        assert_eq!(r.status, Status::Pass);
        r.push(Check::inconclusive("b", "second", "undecided"));
        assert_eq!(r.status, Status::Inconclusive);
        r.push(Check::holds("c", "third", false, Provenance::Stated));
        assert_eq!(r.status, Status::Fail);
        assert!(!r.passed());
    }

    #[test]
    fn json_keys_are_sorted_and_stable() {
        let mut r = VerificationReport::new("demo");
        r.set_input("p", "3");
        r.set_input("delta", "p,1");
        r.push(Check::exact("eq", "two equals two", "2", "2", Provenance::Definition));
        r.assume("example assumption");
        let s1 = r.to_json_string();
        let s2 = r.to_json_string();
        assert_eq!(s1, s2);
        assert!(s1.ends_with('\n'));
        // Key ordering: probe a report without nested objects so each key
        // appears exactly once.
        let empty = VerificationReport::new("demo").to_json_string();
        let pos = |k: &str| empty.find(&format!("\"{k}\"")).unwrap();
        assert!(pos("assumptions") < pos("checks"));
        assert!(pos("checks") < pos("id"));
        assert!(pos("id") < pos("inputs"));
        assert!(pos("inputs") < pos("runtime_ms"));
        assert!(pos("runtime_ms") < pos("status"));
        assert!(pos("status") < pos("values"));
    }

    #[test]
    fn text_rendering_mentions_every_check() {
        let mut r = VerificationReport::new("demo");
        r.push(Check::exact("eq", "values agree", "4", "4", Provenance::Stated));
        r.push(Check::holds("no", "falsehood", false, Provenance::Derived));
        let t = r.to_text();
        assert!(t.contains("[PASS] eq"));
        assert!(t.contains("[FAIL] no"));
        assert!(t.contains("status fail"));
    }
}
