use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;
use tk_core::Tournament;

/// At most this many violations are stored in a report; the total is kept
/// in the summary.
pub const MAX_VIOLATIONS: usize = 100;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    /// `.tk` line of the offending tournament.
    pub instance: String,
    pub expected: String,
    pub observed: String,
}

impl Violation {
    pub fn new(t: &Tournament, expected: impl Into<String>, observed: impl Into<String>) -> Self {
        Violation {
            instance: t.to_tk(),
            expected: expected.into(),
            observed: observed.into(),
        }
    }

    /// For instances that are not tournaments.
    pub fn raw(instance: impl Into<String>, expected: impl Into<String>, observed: impl Into<String>) -> Self {
        Violation {
            instance: instance.into(),
            expected: expected.into(),
            observed: observed.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub suite: String,
    pub params: BTreeMap<String, Value>,
    pub instances_checked: u64,
    pub violations: Vec<Violation>,
    pub runtime_ms: u64,
    /// Every instance is fixed by the parameters and seed.
    pub deterministic: bool,
    pub summary: BTreeMap<String, Value>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn without_timing(mut self) -> Self {
        self.runtime_ms = 0;
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let status = if self.passed() { "PASS" } else { "FAIL" };
        let _ = writeln!(s, "{status} {}", self.suite);
        for (k, v) in &self.params {
            let _ = writeln!(s, "  param {k} = {v}");
        }
        let _ = writeln!(s, "  instances checked: {}", self.instances_checked);
        for (k, v) in &self.summary {
            let _ = writeln!(s, "  {k}: {v}");
        }
        let _ = writeln!(s, "  runtime: {} ms", self.runtime_ms);
        for v in &self.violations {
            let _ = writeln!(s, "  violation at {}: expected {}, observed {}", v.instance, v.expected, v.observed);
        }
        s
    }
}

/// Collects results in instance order.
#[derive(Debug)]
pub(crate) struct Recorder {
    suite: &'static str,
    start: Instant,
    params: BTreeMap<String, Value>,
    summary: BTreeMap<String, Value>,
    instances: u64,
    violations: Vec<Violation>,
    total_violations: u64,
}

/// Outcome of checking one instance (or one batch of related instances).
#[derive(Debug, Default)]
pub(crate) struct Outcome {
    pub checked: u64,
    pub violations: Vec<Violation>,
}

impl Outcome {
    pub fn one() -> Self {
        Outcome {
            checked: 1,
            violations: Vec::new(),
        }
    }

    pub fn skipped() -> Self {
        Outcome::default()
    }

    pub fn fail(&mut self, v: Violation) {
        self.violations.push(v);
    }

    pub fn check(&mut self, ok: bool, v: impl FnOnce() -> Violation) {
        if !ok {
            self.violations.push(v());
        }
    }

    pub fn absorb(&mut self, other: Outcome) {
        self.checked += other.checked;
        self.violations.extend(other.violations);
    }
}

impl Recorder {
    pub fn new(suite: &'static str) -> Self {
        Recorder {
            suite,
            start: Instant::now(),
            params: BTreeMap::new(),
            summary: BTreeMap::new(),
            instances: 0,
            violations: Vec::new(),
            total_violations: 0,
        }
    }

    pub fn param(&mut self, key: &str, value: impl Serialize) {
        self.params.insert(key.into(), serde_json::to_value(value).expect("serializable"));
    }

    pub fn note(&mut self, key: &str, value: impl Serialize) {
        self.summary.insert(key.into(), serde_json::to_value(value).expect("serializable"));
    }

    pub fn add(&mut self, outcome: Outcome) {
        self.instances += outcome.checked;
        for v in outcome.violations {
            self.total_violations += 1;
            if self.violations.len() < MAX_VIOLATIONS {
                self.violations.push(v);
            }
        }
    }

    pub fn add_all(&mut self, outcomes: impl IntoIterator<Item = Outcome>) {
        for o in outcomes {
            self.add(o);
        }
    }

    pub fn finish(mut self) -> Report {
        self.summary.insert("violations_total".into(), self.total_violations.into());
        Report {
            suite: self.suite.into(),
            params: self.params,
            instances_checked: self.instances,
            violations: self.violations,
            runtime_ms: u64::try_from(self.start.elapsed().as_millis()).unwrap_or(u64::MAX),
            deterministic: true,
            summary: self.summary,
        }
    }
}
