//! CSV tables, run manifests and atomic file output.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::config::Resolved;
use crate::error::CliError;

#[derive(Clone, Debug, PartialEq)]
pub enum Column {
    Float(Vec<f64>),
    Int(Vec<i64>),
}

impl Column {
    pub fn len(&self) -> usize {
        match self {
            Column::Float(v) => v.len(),
            Column::Int(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn as_f64(&self) -> Vec<f64> {
        match self {
            Column::Float(v) => v.clone(),
            Column::Int(v) => v.iter().map(|&x| x as f64).collect(),
        }
    }

    fn cell(&self, row: usize) -> String {
        match self {
            Column::Float(v) => format_float(v[row]),
            Column::Int(v) => v[row].to_string(),
        }
    }
}

/// Twelve significant digits in scientific notation; `-0` prints as `0`.
pub fn format_float(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.11e}")
}

/// A column-oriented table written as one CSV file.
#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    /// Appended to the experiment name, e.g. `crossings` gives `<name>.crossings.csv`.
    pub suffix: Option<String>,
    pub columns: Vec<(String, Column)>,
}

impl Table {
    pub fn new(suffix: Option<&str>) -> Self {
        Self {
            suffix: suffix.map(str::to_string),
            columns: Vec::new(),
        }
    }

    pub fn float(mut self, name: impl Into<String>, v: Vec<f64>) -> Self {
        self.columns.push((name.into(), Column::Float(v)));
        self
    }

    pub fn int(mut self, name: impl Into<String>, v: Vec<i64>) -> Self {
        self.columns.push((name.into(), Column::Int(v)));
        self
    }

    pub fn rows(&self) -> usize {
        self.columns.first().map_or(0, |(_, c)| c.len())
    }

    pub fn column(&self, name: &str) -> Option<&Column> {
        self.columns.iter().find(|(n, _)| n == name).map(|(_, c)| c)
    }

    pub fn file_name(&self, experiment: &str) -> String {
        match &self.suffix {
            Some(s) => format!("{experiment}.{s}.csv"),
            None => format!("{experiment}.csv"),
        }
    }

    pub fn to_csv(&self) -> Result<Vec<u8>, CliError> {
        let n = self.rows();
        if let Some((name, _)) = self.columns.iter().find(|(_, c)| c.len() != n) {
            return Err(CliError::Config(format!("internal: column `{name}` has the wrong length")));
        }
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        let csv_err = |e: csv::Error| CliError::Config(format!("csv: {e}"));
        w.write_record(self.columns.iter().map(|(n, _)| n.as_str())).map_err(csv_err)?;
        for r in 0..n {
            w.write_record(self.columns.iter().map(|(_, c)| c.cell(r))).map_err(csv_err)?;
        }
        w.into_inner().map_err(|e| CliError::Config(format!("csv: {e}")))
    }
}

/// Everything a run produces before anything touches the file system.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct RunOutput {
    pub tables: Vec<Table>,
    /// Scalar results recorded in the manifest, keyed by name.
    pub derived: BTreeMap<String, f64>,
    pub warnings: Vec<String>,
}

impl RunOutput {
    pub fn warn(&mut self, w: impl Into<String>) {
        let w = w.into();
        if !self.warnings.contains(&w) {
            self.warnings.push(w);
        }
    }
}

#[derive(Serialize)]
struct Tolerances {
    validity_ratio: f64,
    steady_residual: f64,
    steady_zero: f64,
    trace_drift: f64,
}

#[derive(Serialize)]
struct Manifest<'a> {
    paritybus_version: &'static str,
    source: &'a str,
    outputs: Vec<String>,
    warnings: &'a [String],
    tolerances: Tolerances,
    derived: &'a BTreeMap<String, f64>,
    resolved: &'a Resolved,
}

pub fn manifest_toml(resolved: &Resolved, source: &str, out: &RunOutput) -> Result<String, CliError> {
    use paritybus::lindblad::{RESIDUAL_TOL, TRACE_TOL, ZERO_TOL};
    let m = Manifest {
        paritybus_version: env!("CARGO_PKG_VERSION"),
        source,
        outputs: out.tables.iter().map(|t| t.file_name(&resolved.name)).collect(),
        warnings: &out.warnings,
        tolerances: Tolerances {
            validity_ratio: resolved.validity_ratio,
            steady_residual: RESIDUAL_TOL,
            steady_zero: ZERO_TOL,
            trace_drift: TRACE_TOL,
        },
        derived: &out.derived,
        resolved,
    };
    toml::to_string(&m).map_err(|e| CliError::Config(format!("manifest: {e}")))
}

/// Writes every file to a temporary name first, then renames them into place.
pub fn write_atomic(dir: &Path, files: &[(String, Vec<u8>)]) -> Result<Vec<PathBuf>, CliError> {
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let mut staged = Vec::with_capacity(files.len());
    for (name, bytes) in files {
        let tmp = dir.join(format!(".{name}.tmp"));
        let res = fs::File::create(&tmp).and_then(|mut f| {
            f.write_all(bytes)?;
            f.sync_all()
        });
        if let Err(e) = res {
            staged.iter().for_each(|(t, _): &(PathBuf, PathBuf)| {
                let _ = fs::remove_file(t);
            });
            let _ = fs::remove_file(&tmp);
            return Err(CliError::io(tmp, e));
        }
        staged.push((tmp, dir.join(name)));
    }
    let mut done = Vec::with_capacity(staged.len());
    for (tmp, dst) in staged {
        fs::rename(&tmp, &dst).map_err(|e| CliError::io(&dst, e))?;
        done.push(dst);
    }
    Ok(done)
}
