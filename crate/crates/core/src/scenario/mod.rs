//! Scenario front end: TOML configuration, presets, running a grid
//! and writing it out with a manifest.

mod beats;
mod config;
mod output;
mod presets;
mod run;

use std::path::PathBuf;

use thiserror::Error;

pub use beats::{report_beats, BeatReport};
pub use config::{
    from_document, parse_config, ConfigDocument, InitialSpec, NuRange, OutputFormat, OutputSpec,
    ScenarioConfig, ScenarioKind,
};
pub use output::{csv_string, emit, format_sig, grid_checksum, json_string, Written};
pub use presets::{preset, Preset};
pub use run::{run_scenario, RunManifest, RunOptions};

/// A configuration problem, located by its key path.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("config error at `{path}`: {reason}")]
pub struct ConfigError {
    pub path: String,
    pub reason: String,
}

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error(transparent)]
    Config(#[from] ConfigError),

    #[error("{kind:?} scenario failed: {source}")]
    Numeric {
        kind: ScenarioKind,
        #[source]
        source: crate::Error,
    },

    #[error("cannot write {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl ScenarioError {
    /// Process exit code: 2 for configuration errors, 3 for convergence
    /// failures, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            ScenarioError::Config(_) => 2,
            ScenarioError::Numeric { source, .. } if source.is_convergence_failure() => 3,
            _ => 1,
        }
    }
}
