//! Experiment reports: one CSV of rows plus one JSON summary per run.
//!
//! CSV numbers use the shortest representation that round-trips to the same
//! `f64`, so identical runs give byte-identical files. Absent values are
//! empty fields.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use semiclassical::classical::DecayFit;
use semiclassical::Complex64;
use serde::Serialize;

use crate::error::{LabError, Result};

/// CSV header, a stable interface.
pub const CSV_COLUMNS: [&str; 12] = [
    "hbar",
    "n",
    "t",
    "ev_quantum",
    "ev_quantum_im",
    "ev_classical",
    "ev_classical_im",
    "predicted",
    "residual",
    "nodes",
    "dt",
    "warning",
];

/// One `(ħ or N, t)` sample. Every row carries the numeric parameters that
/// produced it.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Row {
    pub hbar: Option<f64>,
    pub n: Option<usize>,
    pub t: f64,
    pub ev_quantum: Option<Complex64>,
    pub ev_classical: Option<Complex64>,
    pub predicted: Option<f64>,
    pub residual: Option<f64>,
    pub nodes: Option<usize>,
    pub dt: Option<f64>,
    pub warning: String,
}

fn num(v: Option<f64>) -> String {
    v.map(|x| ryu::Buffer::new().format(x).to_string()).unwrap_or_default()
}

impl Row {
    fn fields(&self) -> [String; 12] {
        [
            num(self.hbar),
            self.n.map(|n| n.to_string()).unwrap_or_default(),
            num(Some(self.t)),
            num(self.ev_quantum.map(|z| z.re)),
            num(self.ev_quantum.map(|z| z.im)),
            num(self.ev_classical.map(|z| z.re)),
            num(self.ev_classical.map(|z| z.im)),
            num(self.predicted),
            num(self.residual),
            self.nodes.map(|n| n.to_string()).unwrap_or_default(),
            num(self.dt),
            self.warning.clone(),
        ]
    }
}

/// A pass/fail gate with its measured value and threshold.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub threshold: String,
    pub passed: bool,
}

/// A fitted rate with its log-space quality.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitRecord {
    pub label: String,
    pub model: String,
    pub rate: f64,
    pub rate_stderr: f64,
    pub amplitude: f64,
    pub rms: f64,
    pub max_residual: f64,
    pub points: usize,
}

impl FitRecord {
    pub fn new(label: impl Into<String>, model: &str, fit: &DecayFit) -> Self {
        Self {
            label: label.into(),
            model: model.to_string(),
            rate: fit.rate,
            rate_stderr: fit.rate_stderr,
            amplitude: fit.amplitude,
            rms: fit.rms,
            max_residual: fit.residual,
            points: fit.points,
        }
    }
}

/// A value recomputed along an independent slow path.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrossCheck {
    pub description: String,
    pub fast: f64,
    pub slow: f64,
    pub difference: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl CrossCheck {
    pub fn new(description: impl Into<String>, fast: Complex64, slow: Complex64, tolerance: f64) -> Self {
        let difference = (fast - slow).norm();
        Self {
            description: description.into(),
            fast: fast.re,
            slow: slow.re,
            difference,
            tolerance,
            passed: difference <= tolerance,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub kind: String,
    pub name: String,
    pub passed: bool,
    pub checks: Vec<Check>,
    pub fits: Vec<FitRecord>,
    pub cross_checks: Vec<CrossCheck>,
    pub metrics: BTreeMap<String, f64>,
    pub notes: Vec<String>,
    pub warnings: Vec<String>,
    pub config: BTreeMap<String, String>,
    pub seed: u64,
    pub version: String,
    pub timestamp: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub rows: Vec<Row>,
    pub summary: Summary,
}

impl Report {
    pub fn new(kind: &str, name: &str, config: BTreeMap<String, String>, seed: u64) -> Self {
        let timestamp = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        Self {
            rows: Vec::new(),
            summary: Summary {
                kind: kind.to_string(),
                name: name.to_string(),
                passed: false,
                checks: Vec::new(),
                fits: Vec::new(),
                cross_checks: Vec::new(),
                metrics: BTreeMap::new(),
                notes: Vec::new(),
                warnings: Vec::new(),
                config,
                seed,
                version: env!("CARGO_PKG_VERSION").to_string(),
                timestamp,
            },
        }
    }

    pub fn check(&mut self, name: impl Into<String>, value: f64, threshold: impl Into<String>, passed: bool) {
        self.summary.checks.push(Check {
            name: name.into(),
            value,
            threshold: threshold.into(),
            passed,
        });
    }

    pub fn metric(&mut self, key: impl Into<String>, value: f64) {
        self.summary.metrics.insert(key.into(), value);
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.summary.notes.push(note.into());
    }

    pub fn warn(&mut self, warning: impl Into<String>) {
        let w = warning.into();
        if !self.summary.warnings.contains(&w) {
            self.summary.warnings.push(w);
        }
    }

    /// Passing means every check and every cross-check passed.
    pub fn finalize(mut self) -> Self {
        self.summary.passed = !self.summary.checks.is_empty()
            && self.summary.checks.iter().all(|c| c.passed)
            && self.summary.cross_checks.iter().all(|c| c.passed);
        self
    }

    pub fn check_passed(&self, name: &str) -> Option<bool> {
        self.summary.checks.iter().find(|c| c.name == name).map(|c| c.passed)
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(CSV_COLUMNS)?;
        for r in &self.rows {
            w.write_record(r.fields())?;
        }
        w.flush().map_err(csv::Error::from)?;
        Ok(())
    }

    pub fn csv_string(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        Ok(String::from_utf8(buf).expect("csv output is utf-8"))
    }

    pub fn summary_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.summary)?)
    }

    /// Writes `<dir>/<name>.csv` and `<dir>/<name>.json`.
    pub fn write_files(&self, dir: &Path) -> Result<(PathBuf, PathBuf)> {
        fs::create_dir_all(dir).map_err(|source| LabError::Write {
            path: dir.to_path_buf(),
            source,
        })?;
        let csv_path = dir.join(format!("{}.csv", self.summary.name));
        let json_path = dir.join(format!("{}.json", self.summary.name));
        let write = |path: &Path, body: String| {
            fs::write(path, body).map_err(|source| LabError::Write {
                path: path.to_path_buf(),
                source,
            })
        };
        write(&csv_path, self.csv_string()?)?;
        write(&json_path, self.summary_json()? + "\n")?;
        Ok((csv_path, json_path))
    }
}
