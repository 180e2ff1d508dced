use std::path::PathBuf;
use std::str::FromStr;

use crate::bloch::{InitialState, SystemParams};

use super::config::{rf_default_axes, se_default_axes};
use super::{OutputSpec, ScenarioConfig, ScenarioKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    /// Free decay, delta = -2, filter 0.5.
    Fig1b,
    /// Driven, Omega = 6, delta = -7, Delta = 0, filter 0.5.
    Fig2,
    /// Same physics as `Fig2`, used for the sideband doublet close-up.
    Fig3,
    /// `Fig2` with a narrow filter, 0.1.
    Fig4a,
    /// `Fig2` with a wide filter, 1.
    Fig4c,
}

impl Preset {
    pub const ALL: [Preset; 5] = [Preset::Fig1b, Preset::Fig2, Preset::Fig3, Preset::Fig4a, Preset::Fig4c];

    pub fn name(&self) -> &'static str {
        match self {
            Preset::Fig1b => "fig1b",
            Preset::Fig2 => "fig2",
            Preset::Fig3 => "fig3",
            Preset::Fig4a => "fig4a",
            Preset::Fig4c => "fig4c",
        }
    }
}

impl FromStr for Preset {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| format!("unknown preset `{s}`"))
    }
}

pub fn preset(p: Preset) -> ScenarioConfig {
    let output = OutputSpec {
        path: PathBuf::from(p.name()),
        ..OutputSpec::default()
    };
    if p == Preset::Fig1b {
        let (nu, times) = se_default_axes();
        return ScenarioConfig {
            kind: ScenarioKind::SpontaneousEmission,
            params: SystemParams::spontaneous_emission(-2.0).expect("valid preset"),
            bandwidth: 0.5,
            nu,
            times,
            initial: InitialState::ExcitedSuperposition,
            output,
        };
    }
    let bandwidth = match p {
        Preset::Fig4a => 0.1,
        Preset::Fig4c => 1.0,
        _ => 0.5,
    };
    let (nu, times) = rf_default_axes();
    ScenarioConfig {
        kind: ScenarioKind::ResonanceFluorescence,
        params: SystemParams::new(6.0, 0.0, -7.0).expect("valid preset"),
        bandwidth,
        nu,
        times,
        initial: InitialState::GroundSuperposition,
        output,
    }
}
