//! Check records and the report written by the CLI.

use std::fmt::Write as _;

use serde::Serialize;

use crate::tolerance::ToleranceContext;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    AtMost,
    #[serde(rename = ">=")]
    AtLeast,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    /// The statement being checked, e.g. "Weyl relations W(v)W(w) = W(v+w) phase".
    pub anchor: String,
    pub measured: f64,
    pub relation: Relation,
    pub tolerance: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

impl Check {
    /// Passes when `measured <= tolerance` (NaN fails).
    pub fn at_most(name: impl Into<String>, anchor: impl Into<String>, measured: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            anchor: anchor.into(),
            measured,
            relation: Relation::AtMost,
            tolerance,
            pass: measured <= tolerance,
            elapsed_ms: None,
        }
    }

    /// Passes when `measured >= bound` (NaN fails).
    pub fn at_least(name: impl Into<String>, anchor: impl Into<String>, measured: f64, bound: f64) -> Self {
        Self {
            name: name.into(),
            anchor: anchor.into(),
            measured,
            relation: Relation::AtLeast,
            tolerance: bound,
            pass: measured >= bound,
            elapsed_ms: None,
        }
    }

    /// `|measured - expected| <= tolerance`, recorded as the deviation.
    pub fn near(
        name: impl Into<String>,
        anchor: impl Into<String>,
        measured: f64,
        expected: f64,
        tolerance: f64,
    ) -> Self {
        Self::at_most(name, anchor, (measured - expected).abs(), tolerance)
    }

    /// Exact integer equality, recorded as `|measured - expected|` against zero.
    pub fn exact(name: impl Into<String>, anchor: impl Into<String>, measured: usize, expected: usize) -> Self {
        Self::at_most(name, anchor, measured.abs_diff(expected) as f64, 0.0)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ConfigEcho {
    pub command: String,
    pub seed: u64,
    pub tolerances: ToleranceContext,
    pub options: serde_json::Map<String, serde_json::Value>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub config: ConfigEcho,
    pub passed: bool,
    pub checks: Vec<Check>,
    /// Suite-specific summaries and convergence tables.
    pub details: serde_json::Map<String, serde_json::Value>,
}

impl Report {
    pub fn new(
        config: ConfigEcho,
        mut checks: Vec<Check>,
        details: serde_json::Map<String, serde_json::Value>,
    ) -> Self {
        checks.sort_by(|a, b| a.name.cmp(&b.name));
        Self {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            config,
            passed: checks.iter().all(|c| c.pass),
            checks,
            details,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{} {}  {}  seed {}",
            self.tool, self.version, self.config.command, self.config.seed
        );
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        for c in &self.checks {
            let rel = match c.relation {
                Relation::AtMost => "<=",
                Relation::AtLeast => ">=",
            };
            let _ = write!(
                out,
                "{}  {:<width$}  {:>11.3e} {} {:<9.1e}  {}",
                if c.pass { "PASS" } else { "FAIL" },
                c.name,
                c.measured,
                rel,
                c.tolerance,
                c.anchor,
            );
            if let Some(ms) = c.elapsed_ms {
                let _ = write!(out, "  ({ms:.1} ms)");
            }
            out.push('\n');
        }
        for (suite, value) in &self.details {
            if let Some(table) = value.get("refinement") {
                let _ = writeln!(out, "\n{suite} refinement: depth -> increment");
                let depths = table["depths"].as_array().cloned().unwrap_or_default();
                let incs = table["increments"].as_array().cloned().unwrap_or_default();
                for (d, i) in depths.iter().zip(incs) {
                    let _ = writeln!(out, "  {d:>3}  {:.3e}", i.as_f64().unwrap_or(f64::NAN));
                }
            }
        }
        let failed = self.failures().count();
        let _ = writeln!(
            out,
            "{} checks, {} failed: {}",
            self.checks.len(),
            failed,
            if self.passed { "PASS" } else { "FAIL" }
        );
        out
    }
}
