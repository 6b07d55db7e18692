use std::io::Write;
use std::path::Path;

use confcalc_core::Complex64;
use serde::Serialize;

/// One verified quantity.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct Check {
    pub name: String,
    /// `[re, im]`; `null` entries when the computation failed.
    pub value: [f64; 2],
    pub oracle: [f64; 2],
    pub residual: f64,
    pub tol: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl Check {
    pub fn new(name: impl Into<String>, value: Complex64, oracle: Complex64, residual: f64, tol: f64) -> Self {
        Check {
            name: name.into(),
            value: [value.re, value.im],
            oracle: [oracle.re, oracle.im],
            residual,
            tol,
            pass: residual.is_finite() && residual <= tol,
            error: None,
        }
    }

    /// A real quantity that should be at most `tol`.
    pub fn bound(name: impl Into<String>, residual: f64, tol: f64) -> Self {
        Check::new(name, Complex64::new(residual, 0.0), Complex64::new(0.0, 0.0), residual, tol)
    }

    pub fn failed(name: impl Into<String>, tol: f64, error: impl ToString) -> Self {
        Check {
            name: name.into(),
            value: [f64::NAN; 2],
            oracle: [f64::NAN; 2],
            residual: f64::INFINITY,
            tol,
            pass: false,
            error: Some(error.to_string()),
        }
    }
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct Report {
    pub suite: String,
    pub checks: Vec<Check>,
    pub pass: bool,
}

impl Report {
    pub fn new(suite: &str, checks: Vec<Check>) -> Self {
        let pass = checks.iter().all(|c| c.pass);
        Report { suite: suite.into(), checks, pass }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// One row of a grid CSV.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridRow {
    pub w: Complex64,
    pub value: Complex64,
    pub residual: f64,
}

pub const CSV_HEADER: &str = "re_w,im_w,re_value,im_value,residual";

pub fn write_csv(path: &Path, rows: &[GridRow]) -> std::io::Result<()> {
    let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
    writeln!(out, "{CSV_HEADER}")?;
    for r in rows {
        writeln!(out, "{},{},{},{},{:e}", r.w.re, r.w.im, r.value.re, r.value.im, r.residual)?;
    }
    out.flush()
}
