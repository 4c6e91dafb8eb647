//! Structured pass/fail results shared by every check.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};

/// How a verdict was reached.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Exact computation over the symbolic field.
    Exact,
    /// Evaluation at random admissible points: a probabilistic certificate.
    Randomized,
}

/// Size of the linear system behind a membership verdict.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemStats {
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check: String,
    pub mode: Mode,
    pub pass: bool,
    pub degree: usize,
    pub system: Option<SystemStats>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Evaluation points used in randomized mode, as `name → value` maps.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<BTreeMap<String, String>>>,
    pub elapsed_ms: u64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub diagnostics: Vec<String>,
    /// Optional computed object (an operator or matrix in JSON form).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub result: Option<serde_json::Value>,
    /// Sub-checks that make up this verdict.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub parts: Vec<VerificationReport>,
}

impl VerificationReport {
    /// An exact, non-linear-algebra verdict.
    pub fn exact(check: impl Into<String>, pass: bool) -> Self {
        Self {
            check: check.into(),
            mode: Mode::Exact,
            pass,
            degree: 0,
            system: None,
            seed: None,
            points: None,
            elapsed_ms: 0,
            diagnostics: Vec::new(),
            result: None,
            parts: Vec::new(),
        }
    }

    /// Combines sub-reports: passes iff all parts pass; randomized if any
    /// part is.
    pub fn all(check: impl Into<String>, parts: Vec<VerificationReport>) -> Self {
        let mut r = Self::exact(check, parts.iter().all(|p| p.pass));
        if parts.iter().any(|p| p.mode == Mode::Randomized) {
            r.mode = Mode::Randomized;
            r.seed = parts.iter().find_map(|p| p.seed);
        }
        r.degree = parts.iter().map(|p| p.degree).max().unwrap_or(0);
        r.parts = parts;
        r
    }

    pub fn with_diagnostic(mut self, msg: impl Into<String>) -> Self {
        self.diagnostics.push(msg.into());
        self
    }

    pub fn with_result(mut self, value: serde_json::Value) -> Self {
        self.result = Some(value);
        self
    }

    pub fn timed(mut self, start: Instant) -> Self {
        self.elapsed_ms = start.elapsed().as_millis() as u64;
        self
    }

    /// Copy with every `elapsed_ms` zeroed, for reproducibility comparisons.
    pub fn without_timing(&self) -> Self {
        let mut r = self.clone();
        r.elapsed_ms = 0;
        r.parts = r.parts.iter().map(Self::without_timing).collect();
        r
    }

    /// Short human-readable summary, one line per (sub)check.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        self.write_summary(0, &mut out);
        out
    }

    fn write_summary(&self, depth: usize, out: &mut String) {
        use std::fmt::Write;
        let pad = "  ".repeat(depth);
        let verdict = if self.pass { "PASS" } else { "FAIL" };
        let mode = match self.mode {
            Mode::Exact => "exact",
            Mode::Randomized => "randomized",
        };
        let _ = write!(out, "{pad}{verdict} {} [{mode}", self.check);
        if self.degree > 0 {
            let _ = write!(out, ", degree {}", self.degree);
        }
        if let Some(s) = self.system {
            let _ = write!(out, ", system {}x{} rank {}", s.rows, s.cols, s.rank);
        }
        let _ = writeln!(out, ", {} ms]", self.elapsed_ms);
        for d in &self.diagnostics {
            let _ = writeln!(out, "{pad}  - {d}");
        }
        for p in &self.parts {
            p.write_summary(depth + 1, out);
        }
    }
}
