//! Check results and their text, JSON and CSV renderings.

use std::io::Write;

use anyhow::Result;
use serde::Serialize;

use crate::config::SuiteConfig;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub suite: String,
    /// `None` when the check could not be evaluated; see `error`.
    pub residual: Option<f64>,
    pub tolerance: f64,
    pub passed: bool,
    pub wall_time_ms: f64,
    /// Topic of the construction the check exercises.
    pub anchor: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl CheckResult {
    pub fn new(name: &str, suite: &str, anchor: &str, tolerance: f64, outcome: Result<f64>, wall_time_ms: f64) -> Self {
        let (residual, error) = match outcome {
            Ok(r) => (Some(r), None),
            Err(e) => (None, Some(format!("{e:#}"))),
        };
        // NaN residuals fail the comparison and therefore the check.
        let passed = residual.is_some_and(|r| r <= tolerance);
        Self {
            name: name.to_string(),
            suite: suite.to_string(),
            residual,
            tolerance,
            passed,
            wall_time_ms,
            anchor: anchor.to_string(),
            error,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    pub total: usize,
    pub total_ms: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub version: String,
    pub seed: u64,
    pub config: SuiteConfig,
    pub checks: Vec<CheckResult>,
    pub summary: Summary,
}

impl Report {
    pub fn new(config: &SuiteConfig, checks: Vec<CheckResult>) -> Self {
        let passed = checks.iter().filter(|c| c.passed).count();
        let summary = Summary {
            passed,
            failed: checks.len() - passed,
            total: checks.len(),
            total_ms: checks.iter().map(|c| c.wall_time_ms).sum(),
        };
        Self {
            version: env!("CARGO_PKG_VERSION").to_string(),
            seed: config.seed,
            config: config.clone(),
            checks,
            summary,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

pub fn write_report<W: Write>(report: &Report, format: Format, out: W) -> Result<()> {
    match format {
        Format::Text => write_text(report, out),
        Format::Json => write_json(report, out),
        Format::Csv => write_csv(report, out),
    }
}

fn write_json<W: Write>(report: &Report, mut out: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, report)?;
    writeln!(out)?;
    Ok(())
}

#[derive(Serialize)]
struct CsvRow<'a> {
    name: &'a str,
    suite: &'a str,
    residual: Option<f64>,
    tolerance: f64,
    passed: bool,
    wall_time_ms: f64,
    anchor: &'a str,
    error: &'a str,
}

fn write_csv<W: Write>(report: &Report, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    if report.checks.is_empty() {
        w.write_record(["name", "suite", "residual", "tolerance", "passed", "wall_time_ms", "anchor", "error"])?;
    }
    for c in &report.checks {
        w.serialize(CsvRow {
            name: &c.name,
            suite: &c.suite,
            residual: c.residual,
            tolerance: c.tolerance,
            passed: c.passed,
            wall_time_ms: c.wall_time_ms,
            anchor: &c.anchor,
            error: c.error.as_deref().unwrap_or(""),
        })?;
    }
    w.flush()?;
    Ok(())
}

fn write_text<W: Write>(report: &Report, mut out: W) -> Result<()> {
    let width = report.checks.iter().map(|c| c.name.len()).max().unwrap_or(4).max(5);
    writeln!(out, "{:<6} {:<width$} {:>12} {:>10} {:>10}", "", "check", "residual", "tol", "ms")?;
    for c in &report.checks {
        let mark = if c.passed { "[pass]" } else { "[FAIL]" };
        let residual = c.residual.map_or("error".to_string(), |r| format!("{r:.3e}"));
        writeln!(out, "{mark} {:<width$} {residual:>12} {:>10.1e} {:>10.1}", c.name, c.tolerance, c.wall_time_ms)?;
        if let Some(e) = &c.error {
            writeln!(out, "       {e}")?;
        }
    }
    let s = &report.summary;
    writeln!(out, "{} passed, {} failed, {} total (seed {})", s.passed, s.failed, s.total, report.seed)?;
    Ok(())
}
