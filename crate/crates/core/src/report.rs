//! Check reports and their text/CSV serializations.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write;

use crate::error::Result;
use crate::graph::Graph;

pub const DEFAULT_CERT_CAP: usize = 25;

/// Knobs shared by every check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckConfig {
    /// Maximum number of certificates kept per report.
    pub cert_cap: usize,
}

impl Default for CheckConfig {
    fn default() -> Self {
        Self { cert_cap: DEFAULT_CERT_CAP }
    }
}

/// A witness of a violated relation: the vertices involved (external ids) and
/// what went wrong.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Certificate {
    pub kind: String,
    pub vertices: Vec<u64>,
    pub detail: String,
}

impl Certificate {
    pub fn new(kind: &str, g: &Graph, vertices: &[usize], detail: impl Into<String>) -> Self {
        Self { kind: kind.to_string(), vertices: vertices.iter().map(|&v| g.id(v)).collect(), detail: detail.into() }
    }
}

/// Outcome of one verification pass.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub name: String,
    /// Configurations examined.
    pub examined: u64,
    /// Total violations found; `certificates` holds at most `cert_cap` of them.
    pub violations: u64,
    pub certificates: Vec<Certificate>,
    pub stats: BTreeMap<String, String>,
}

impl CheckReport {
    pub fn new(name: &str) -> Self {
        Self { name: name.to_string(), examined: 0, violations: 0, certificates: Vec::new(), stats: BTreeMap::new() }
    }

    pub fn passed(&self) -> bool {
        self.violations == 0
    }

    pub fn truncated(&self) -> bool {
        self.violations > self.certificates.len() as u64
    }

    pub fn record(&mut self, cert: Certificate, cap: usize) {
        self.violations += 1;
        if self.certificates.len() < cap {
            self.certificates.push(cert);
        }
    }

    pub fn stat(&mut self, key: &str, value: impl ToString) {
        self.stats.insert(key.to_string(), value.to_string());
    }

    /// Folds `parts` (in order) into one report named `name`.
    pub fn merge<I: IntoIterator<Item = CheckReport>>(name: &str, parts: I, cap: usize) -> Self {
        let mut out = CheckReport::new(name);
        for part in parts {
            out.absorb(part, cap);
        }
        out
    }

    /// Adds the counts and certificates of `part`, keeping at most `cap`.
    pub fn absorb(&mut self, part: CheckReport, cap: usize) {
        self.examined += part.examined;
        self.violations += part.violations;
        let room = cap.saturating_sub(self.certificates.len());
        self.certificates.extend(part.certificates.into_iter().take(room));
    }

    pub fn first_certificate(&self) -> Option<&Certificate> {
        self.certificates.first()
    }

    /// Line-based text form.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "check {}", self.name);
        let _ = writeln!(s, "passed {}", self.passed());
        let _ = writeln!(s, "examined {}", self.examined);
        let _ = writeln!(s, "violations {}", self.violations);
        for (k, v) in &self.stats {
            let _ = writeln!(s, "stat {k} {v}");
        }
        for c in &self.certificates {
            let _ = writeln!(s, "cert {} {} {}", c.kind, join_ids(&c.vertices), c.detail);
        }
        if self.truncated() {
            let _ = writeln!(s, "truncated {}", self.violations - self.certificates.len() as u64);
        }
        s
    }
}

fn join_ids(ids: &[u64]) -> String {
    ids.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

/// Concatenated text form of several reports, blank-line separated.
pub fn reports_to_text(reports: &[CheckReport]) -> String {
    reports.iter().map(CheckReport::to_text).collect::<Vec<_>>().join("\n")
}

/// One CSV row per certificate: `check,kind,vertices,detail`.
pub fn write_certificates_csv<W: Write>(reports: &[CheckReport], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["check", "kind", "vertices", "detail"])?;
    for r in reports {
        for c in &r.certificates {
            w.write_record([r.name.as_str(), &c.kind, &join_ids(&c.vertices), &c.detail])?;
        }
    }
    w.flush()?;
    Ok(())
}

/// Per-work-item accumulator used by the parallel scans.
#[derive(Debug)]
pub(crate) struct Tally {
    cap: usize,
    pub(crate) examined: u64,
    violations: u64,
    certificates: Vec<Certificate>,
}

impl Tally {
    pub(crate) fn new(cap: usize) -> Self {
        Self { cap, examined: 0, violations: 0, certificates: Vec::new() }
    }

    pub(crate) fn examine(&mut self) {
        self.examined += 1;
    }

    pub(crate) fn record(&mut self, cert: Certificate) {
        self.violations += 1;
        if self.certificates.len() < self.cap {
            self.certificates.push(cert);
        }
    }

    pub(crate) fn into_report(self, name: &str) -> CheckReport {
        CheckReport {
            name: name.to_string(),
            examined: self.examined,
            violations: self.violations,
            certificates: self.certificates,
            stats: BTreeMap::new(),
        }
    }
}

/// Runs `work` on every item of `0..n` in parallel and merges the tallies in
/// item order, so the report does not depend on scheduling.
pub(crate) fn scan<F>(name: &str, n: usize, cap: usize, work: F) -> CheckReport
where
    F: Fn(usize, &mut Tally) + Sync,
{
    use rayon::prelude::*;
    let tallies: Vec<Tally> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut t = Tally::new(cap);
            work(i, &mut t);
            t
        })
        .collect();
    let mut out = CheckReport::new(name);
    for t in tallies {
        out.absorb(t.into_report(name), cap);
    }
    out
}
