//! Verification report (JSON) and CSV table emission.

use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hardy::HardyReport;

pub use crate::spectral::Complex64Pair as ComplexValue;

pub const SCHEMA_VERSION: &str = "1";

/// Where a target value comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TargetSource {
    /// An exact identity (value known in closed form, often 0 or 1).
    Exact,
    /// A closed-form expression evaluated independently of the computed path.
    ClosedForm,
    /// An independent numerical route (quadrature, contour, second formula).
    IndependentRoute,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparison {
    Absolute,
    Relative,
}

/// One check before it is scored.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub id: String,
    pub anchor: String,
    pub target: Complex64,
    pub source: TargetSource,
    pub computed: Complex64,
    pub tolerance: f64,
    pub comparison: Comparison,
    /// Lower bound on the denominator of the relative error.
    pub scale_floor: f64,
}

impl Check {
    pub fn new(
        id: impl Into<String>,
        anchor: impl Into<String>,
        target: Complex64,
        source: TargetSource,
        computed: Complex64,
        tolerance: f64,
        comparison: Comparison,
    ) -> Self {
        Check {
            id: id.into(),
            anchor: anchor.into(),
            target,
            source,
            computed,
            tolerance,
            comparison,
            scale_floor: 0.0,
        }
    }

    pub fn real(
        id: impl Into<String>,
        anchor: impl Into<String>,
        target: f64,
        source: TargetSource,
        computed: f64,
        tolerance: f64,
        comparison: Comparison,
    ) -> Self {
        Check::new(
            id,
            anchor,
            Complex64::new(target, 0.0),
            source,
            Complex64::new(computed, 0.0),
            tolerance,
            comparison,
        )
    }

    pub fn with_floor(mut self, floor: f64) -> Self {
        self.scale_floor = floor;
        self
    }

    pub fn score(&self, tolerance_scale: f64) -> CheckEntry {
        let abs_err = (self.computed - self.target).norm();
        let denom = self.target.norm().max(self.scale_floor);
        let rel_err = if denom > 0.0 {
            Some(abs_err / denom)
        } else if abs_err == 0.0 {
            Some(0.0)
        } else {
            None
        };
        let tolerance = self.tolerance * tolerance_scale;
        let measured = match self.comparison {
            Comparison::Absolute => abs_err,
            Comparison::Relative => rel_err.unwrap_or(f64::INFINITY),
        };
        CheckEntry {
            check_id: self.id.clone(),
            anchor: self.anchor.clone(),
            target: self.target.into(),
            target_source: self.source,
            computed: self.computed.into(),
            abs_err,
            rel_err,
            comparison: self.comparison,
            tolerance,
            pass: measured <= tolerance && measured.is_finite(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckEntry {
    pub check_id: String,
    /// The identity or property the check instantiates, in words.
    pub anchor: String,
    pub target: ComplexValue,
    pub target_source: TargetSource,
    pub computed: ComplexValue,
    pub abs_err: f64,
    /// Absent when the target and the floor are both zero and the error is not.
    pub rel_err: Option<f64>,
    pub comparison: Comparison,
    pub tolerance: f64,
    pub pass: bool,
}

/// A measured observation that is reported but does not gate the run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Finding {
    pub id: String,
    pub description: String,
    pub measured: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HardyEntry {
    pub function: String,
    pub family: crate::hardy::PairingFamily,
    pub branch: crate::dist::Side,
    #[serde(flatten)]
    pub report: HardyReport,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Environment {
    pub version: String,
    pub seed: u64,
    pub jobs: usize,
    pub tolerance_scale: f64,
    /// Seconds since the Unix epoch; the only run-dependent field.
    pub timestamp: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema_version: String,
    pub experiment: String,
    pub entries: Vec<CheckEntry>,
    pub findings: Vec<Finding>,
    pub hardy: Vec<HardyEntry>,
    pub summary: Summary,
    pub environment: Environment,
}

impl VerificationReport {
    /// Scores the checks and sorts entries by `check_id`.
    pub fn assemble(
        experiment: &str,
        checks: &[Check],
        findings: Vec<Finding>,
        hardy: Vec<HardyEntry>,
        environment: Environment,
    ) -> Self {
        let mut entries: Vec<CheckEntry> = checks
            .iter()
            .map(|c| c.score(environment.tolerance_scale))
            .collect();
        entries.sort_by(|a, b| a.check_id.cmp(&b.check_id));
        let mut findings = findings;
        findings.sort_by(|a, b| a.id.cmp(&b.id));
        let passed = entries.iter().filter(|e| e.pass).count();
        VerificationReport {
            schema_version: SCHEMA_VERSION.into(),
            experiment: experiment.into(),
            summary: Summary {
                total: entries.len(),
                passed,
                failed: entries.len() - passed,
            },
            entries,
            findings,
            hardy,
            environment,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Domain(format!("report serialization: {e}")))
    }

    pub fn checks_csv(&self) -> String {
        let mut t = CsvTable::new(&[
            "check_id",
            "pass",
            "abs_err",
            "rel_err",
            "comparison",
            "tolerance",
        ]);
        for e in &self.entries {
            let cmp = match e.comparison {
                Comparison::Absolute => "absolute",
                Comparison::Relative => "relative",
            };
            t.row(&[
                e.check_id.clone(),
                e.pass.to_string(),
                fmt_f(e.abs_err),
                e.rel_err.map(fmt_f).unwrap_or_default(),
                cmp.into(),
                fmt_f(e.tolerance),
            ]);
        }
        t.finish()
    }
}

/// Shortest round-trip representation of a float.
pub fn fmt_f(x: f64) -> String {
    format!("{x:?}")
}

/// CSV table with fixed headers, quoted where a cell needs it.
pub struct CsvTable {
    columns: usize,
    writer: csv::Writer<Vec<u8>>,
}

impl CsvTable {
    pub fn new(headers: &[&str]) -> Self {
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer.write_record(headers).expect("in-memory write");
        CsvTable {
            columns: headers.len(),
            writer,
        }
    }

    pub fn row(&mut self, cells: &[String]) {
        debug_assert_eq!(cells.len(), self.columns);
        self.writer.write_record(cells).expect("in-memory write");
    }

    pub fn row_f(&mut self, cells: &[f64]) {
        let cells: Vec<String> = cells.iter().map(|x| fmt_f(*x)).collect();
        self.row(&cells);
    }

    pub fn finish(self) -> String {
        let bytes = self.writer.into_inner().expect("in-memory flush");
        String::from_utf8(bytes).expect("cells are UTF-8")
    }
}

pub fn write_file(dir: &Path, name: &str, contents: &str) -> Result<()> {
    std::fs::create_dir_all(dir)
        .and_then(|_| std::fs::write(dir.join(name), contents))
        .map_err(|e| Error::Domain(format!("writing {}: {e}", dir.join(name).display())))
}
