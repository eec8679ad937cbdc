//! Verification reports shared by every suite.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::qscalar::QScalar;

/// Maximum number of failure witnesses stored per report; the tally keeps counting past it.
pub const MAX_WITNESSES: usize = 50;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub identity: String,
    pub params: Value,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub checked: u64,
    pub failed: u64,
}

/// An informational record that never affects the pass/fail status of a suite.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Note {
    pub item: String,
    pub params: Value,
    pub status: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub grid: Value,
    pub checked: u64,
    pub failures: Vec<Failure>,
    pub elapsed_ms: u64,
    #[serde(default)]
    pub failed: u64,
    #[serde(default)]
    pub identities: BTreeMap<String, Tally>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<Note>,
    /// False for report-only suites whose outcome must not affect exit codes.
    #[serde(default = "default_true")]
    pub gating: bool,
}

fn default_true() -> bool {
    true
}

impl Report {
    pub fn passed(&self) -> bool {
        self.failed == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }

    /// One-line human summary.
    pub fn summary_line(&self) -> String {
        let status = if !self.gating {
            "report"
        } else if self.passed() {
            "pass"
        } else {
            "FAIL"
        };
        format!(
            "{:<20} {:>4}  checked={:<8} failed={:<6} {} ms",
            self.suite, status, self.checked, self.failed, self.elapsed_ms
        )
    }

    /// Multi-line human rendering: summary, per-identity tallies, notes and witnesses.
    pub fn render_text(&self) -> String {
        let mut s = self.summary_line();
        s.push('\n');
        for (name, t) in &self.identities {
            s.push_str(&format!("  {:<32} checked={:<8} failed={}\n", name, t.checked, t.failed));
        }
        for n in &self.notes {
            s.push_str(&format!("  note {} {} -> {}", n.item, n.params, n.status));
            if !n.detail.is_empty() {
                s.push_str(&format!(" ({})", n.detail));
            }
            s.push('\n');
        }
        for f in &self.failures {
            s.push_str(&format!("  witness {} {}\n    lhs = {}\n    rhs = {}\n", f.identity, f.params, f.lhs, f.rhs));
        }
        s
    }
}

/// Outcome of a single check, produced by independent case evaluations and merged in order.
#[derive(Clone, Debug)]
pub enum Outcome {
    Check { identity: String, failure: Option<Failure> },
    Note(Note),
}

impl Outcome {
    pub fn pass(identity: &str) -> Outcome {
        Outcome::Check { identity: identity.to_string(), failure: None }
    }

    pub fn fail(identity: &str, params: Value, lhs: String, rhs: String) -> Outcome {
        Outcome::Check {
            identity: identity.to_string(),
            failure: Some(Failure { identity: identity.to_string(), params, lhs, rhs }),
        }
    }

    /// Compares two scalars; `params` is only built on failure.
    pub fn scalars<F: FnOnce() -> Value>(identity: &str, lhs: &QScalar, rhs: &QScalar, params: F) -> Outcome {
        if lhs == rhs {
            Outcome::pass(identity)
        } else {
            Outcome::fail(identity, params(), lhs.render(), rhs.render())
        }
    }

    pub fn boolean<F: FnOnce() -> (Value, String, String)>(identity: &str, ok: bool, detail: F) -> Outcome {
        if ok {
            Outcome::pass(identity)
        } else {
            let (p, l, r) = detail();
            Outcome::fail(identity, p, l, r)
        }
    }
}

/// Accumulates outcomes in deterministic order.
pub struct ReportBuilder {
    report: Report,
    start: Instant,
}

impl ReportBuilder {
    pub fn new(suite: &str, grid: Value) -> Self {
        ReportBuilder {
            report: Report {
                suite: suite.to_string(),
                grid,
                checked: 0,
                failures: Vec::new(),
                elapsed_ms: 0,
                failed: 0,
                identities: BTreeMap::new(),
                notes: Vec::new(),
                gating: true,
            },
            start: Instant::now(),
        }
    }

    pub fn non_gating(mut self) -> Self {
        self.report.gating = false;
        self
    }

    pub fn push(&mut self, o: Outcome) {
        match o {
            Outcome::Check { identity, failure } => {
                self.report.checked += 1;
                let t = self.report.identities.entry(identity).or_default();
                t.checked += 1;
                if let Some(f) = failure {
                    t.failed += 1;
                    self.report.failed += 1;
                    if self.report.failures.len() < MAX_WITNESSES {
                        self.report.failures.push(f);
                    }
                }
            }
            Outcome::Note(n) => self.report.notes.push(n),
        }
    }

    pub fn extend<I: IntoIterator<Item = Outcome>>(&mut self, items: I) {
        for o in items {
            self.push(o);
        }
    }

    pub fn finish(mut self) -> Report {
        self.report.elapsed_ms = self.start.elapsed().as_millis() as u64;
        self.report
    }
}

/// Evaluates independent cases, optionally on a pool of `jobs` threads, keeping input order.
pub fn run_cases<C, F>(cases: Vec<C>, jobs: usize, f: F) -> Vec<Outcome>
where
    C: Send + Sync,
    F: Fn(&C) -> Vec<Outcome> + Send + Sync,
{
    if jobs <= 1 || cases.len() <= 1 {
        return cases.iter().flat_map(&f).collect();
    }
    use rayon::prelude::*;
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build().expect("thread pool");
    let chunks: Vec<Vec<Outcome>> = pool.install(|| cases.par_iter().map(&f).collect());
    chunks.into_iter().flatten().collect()
}
