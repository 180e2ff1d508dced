use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::bloch::build_generator;
use crate::spectra::{se_spectrum_grid, spectrum_grid, Method, SpectrumGrid};
use crate::tolerances::Tolerances;
use crate::VERSION;

use super::output::grid_checksum;
use super::{ConfigDocument, ScenarioConfig, ScenarioError, ScenarioKind};

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct RunOptions {
    /// Use quadrature even where a closed form exists.
    pub numeric: bool,
    pub tolerances: Tolerances,
}

/// Everything needed to reproduce a grid, written next to it as JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub version: String,
    pub config: ConfigDocument,
    pub config_toml: String,
    pub tolerances: Tolerances,
    pub method: Method,
    pub grid_shape: [usize; 2],
    pub grid_sha256: String,
    pub wall_clock_seconds: f64,
}

pub fn run_scenario(cfg: &ScenarioConfig, opts: &RunOptions) -> Result<(SpectrumGrid, RunManifest), ScenarioError> {
    let start = Instant::now();
    let numeric_err = |source| ScenarioError::Numeric { kind: cfg.kind, source };
    let nus = cfg.nus();
    let tol = &opts.tolerances;

    let grid = if cfg.kind == ScenarioKind::SpontaneousEmission && !opts.numeric {
        se_spectrum_grid(&cfg.params, &nus, &cfg.times, cfg.bandwidth, tol)
    } else {
        build_generator(cfg.params)
            .and_then(|g| spectrum_grid(&g, &cfg.initial, &nus, &cfg.times, cfg.bandwidth, tol))
    }
    .map_err(numeric_err)?;

    let manifest = RunManifest {
        version: VERSION.to_string(),
        config: cfg.to_document(),
        config_toml: cfg.to_toml(),
        tolerances: *tol,
        method: grid.meta.method,
        grid_shape: [grid.nus.len(), grid.times.len()],
        grid_sha256: grid_checksum(&grid),
        wall_clock_seconds: start.elapsed().as_secs_f64(),
    };
    Ok((grid, manifest))
}
