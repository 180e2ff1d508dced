use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::spectra::SpectrumGrid;

use super::{OutputFormat, RunManifest, ScenarioError};

const SIGNIFICANT: usize = 12;

/// `%.12g`: 12 significant digits, trailing zeros dropped, exponent form
/// outside `1e-4 <= |x| < 1e12`.
pub fn format_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.*e}", SIGNIFICANT - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= SIGNIFICANT as i32 {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mantissa), exp.abs())
    } else {
        let decimals = (SIGNIFICANT as i32 - 1 - exp) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// `nu,t,S` rows, `nu` outer and `t` inner.
pub fn csv_string(grid: &SpectrumGrid) -> String {
    let mut out = String::from("nu,t,S\n");
    for (nu, row) in grid.nus.iter().zip(&grid.values) {
        for (t, s) in grid.times.iter().zip(row) {
            writeln!(out, "{},{},{}", format_sig(*nu), format_sig(*t), format_sig(*s)).unwrap();
        }
    }
    out
}

#[derive(Serialize)]
struct JsonGrid<'a> {
    meta: &'a crate::spectra::GridMeta,
    nus: &'a [f64],
    times: &'a [f64],
    values: &'a [Vec<f64>],
}

pub fn json_string(grid: &SpectrumGrid) -> String {
    let doc = JsonGrid {
        meta: &grid.meta,
        nus: &grid.nus,
        times: &grid.times,
        values: &grid.values,
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("finite grid serializes");
    s.push('\n');
    s
}

/// SHA-256 over the little-endian bits of the axes and the values.
pub fn grid_checksum(grid: &SpectrumGrid) -> String {
    let mut h = Sha256::new();
    for (n, xs) in [(grid.nus.len(), &grid.nus), (grid.times.len(), &grid.times)] {
        h.update((n as u64).to_le_bytes());
        for x in xs {
            h.update(x.to_le_bytes());
        }
    }
    for x in grid.values.iter().flatten() {
        h.update(x.to_le_bytes());
    }
    hex::encode(h.finalize())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Written {
    pub data: PathBuf,
    pub manifest: PathBuf,
}

fn write(path: &Path, contents: &str) -> Result<(), ScenarioError> {
    let io = |source| ScenarioError::Io { path: path.to_path_buf(), source };
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(io)?;
    }
    fs::write(path, contents).map_err(io)
}

/// Writes `<stem>.csv` or `<stem>.json` and `<stem>.manifest.json`.
pub fn emit(grid: &SpectrumGrid, manifest: &RunManifest, format: OutputFormat, stem: &Path) -> Result<Written, ScenarioError> {
    let with_ext = |ext: &str| {
        let mut name = stem.file_name().unwrap_or_default().to_os_string();
        name.push(ext);
        stem.with_file_name(name)
    };
    let data = with_ext(&format!(".{}", format.extension()));
    let manifest_path = with_ext(".manifest.json");
    let body = match format {
        OutputFormat::Csv => csv_string(grid),
        OutputFormat::Json => json_string(grid),
    };
    write(&data, &body)?;
    let mut m = serde_json::to_string_pretty(manifest).expect("manifest serializes");
    m.push('\n');
    write(&manifest_path, &m)?;
    Ok(Written { data, manifest: manifest_path })
}
