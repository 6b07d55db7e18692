//! Batch driver for the verification suites of `confcalc-core`.

pub mod config;
pub mod report;
pub mod suites;

use std::path::{Path, PathBuf};

use thiserror::Error;

pub use config::ExperimentConfig;
pub use report::{Check, GridRow, Report, CSV_HEADER};
pub use suites::{list_suites, Suite};

/// Anything that stops a run before checks are evaluated. Maps to exit code 2.
#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config: {0}")]
    Io(String),
    #[error("malformed config: {0}")]
    Parse(String),
    #[error("invalid config: {0}")]
    Invalid(String),
    #[error("unknown suite {0:?} (see --list)")]
    UnknownSuite(String),
    #[error("cannot write output: {0}")]
    Output(String),
}

impl ConfigError {
    pub fn invalid(msg: impl Into<String>) -> Self {
        ConfigError::Invalid(msg.into())
    }
}

/// Files written by [`run`].
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub report: Report,
    pub report_path: PathBuf,
    pub csv_paths: Vec<PathBuf>,
}

/// Runs a suite and writes `report.json` plus one `<suite>.csv` per grid suite into `out`.
pub fn run(suite: Suite, cfg: &ExperimentConfig, out: &Path) -> Result<RunOutput, ConfigError> {
    let results = suites::execute(suite, cfg)?;
    std::fs::create_dir_all(out).map_err(|e| ConfigError::Output(format!("{}: {e}", out.display())))?;
    let mut csv_paths = Vec::new();
    for (name, rows) in &results.grids {
        let path = out.join(format!("{name}.csv"));
        report::write_csv(&path, rows).map_err(|e| ConfigError::Output(format!("{}: {e}", path.display())))?;
        csv_paths.push(path);
    }
    let report = Report::new(suite.name(), results.checks);
    let report_path = out.join("report.json");
    std::fs::write(&report_path, report.to_json()).map_err(|e| ConfigError::Output(format!("{}: {e}", report_path.display())))?;
    Ok(RunOutput { report, report_path, csv_paths })
}
