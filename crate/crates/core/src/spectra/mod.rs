//! Time-dependent physical spectra and derived quantities.
//!
//! The filtered spectrum of the pi light seen through a Lorentzian filter of
//! bandwidth `Gamma`, tuned to detuning `nu`, after a measurement time `t`:
//!
//! ```text
//! S(nu, t, Gamma) = 2 Gamma Re int_0^t dt1 e^{-Gamma (t - t1)}
//!                   int_0^{t - t1} dtau e^{(Gamma/2 - i nu) tau} G(t1, tau)
//! ```
//!
//! with `G = g13 + g24` from [`crate::correlations`].

mod analytic;
pub mod features;
mod filtered;
mod grid;
mod stationary;

use serde::{Deserialize, Serialize};

use crate::bloch::SystemParams;
use crate::error::{Error, Result};

pub use analytic::{se_spectrum_analytic, se_spectrum_analytic_with, se_spectrum_narrowing_limit, se_spectrum_stable, sinc};
pub use filtered::{ew_spectrum, ew_spectrum_with, perfect_resolution_spectrum, perfect_resolution_spectrum_with};
pub use grid::{se_spectrum_grid, spectrum_grid, GridMeta, Method, SpectrumGrid};
pub use stationary::{wk_spectrum, wk_spectrum_with};

/// Filter bandwidth and tuning.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FilterSettings {
    /// Gamma, in units of gamma.
    pub bandwidth: f64,
    /// nu = omega - omega_L (driven) or omega - omega_13 (free decay).
    pub nu: f64,
}

impl FilterSettings {
    pub fn new(bandwidth: f64, nu: f64) -> Result<Self> {
        let f = FilterSettings { bandwidth, nu };
        f.validate()?;
        Ok(f)
    }

    pub fn validate(&self) -> Result<()> {
        if self.bandwidth.is_nan() || self.bandwidth <= 0.0 || self.bandwidth.is_infinite() {
            return Err(Error::invalid("bandwidth", format!("must be positive, got {}", self.bandwidth)));
        }
        if !self.nu.is_finite() {
            return Err(Error::invalid("nu", "must be finite"));
        }
        Ok(())
    }
}

/// Generalized Rabi frequencies of the two pi transitions and their beat.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BeatFrequencies {
    pub omega1: f64,
    pub omega2: f64,
    pub omega_av: f64,
    pub omega_beat: f64,
}

pub fn rabi_frequencies(params: &SystemParams) -> BeatFrequencies {
    let o = params.rabi;
    let dl = params.laser_detuning;
    let dz = params.zeeman_diff;
    let omega1 = (4.0 * o * o + dl * dl).sqrt();
    let omega2 = (4.0 * o * o + (dz - dl) * (dz - dl)).sqrt();
    BeatFrequencies {
        omega1,
        omega2,
        omega_av: 0.5 * (omega2 + omega1),
        omega_beat: 0.5 * (omega2 - omega1),
    }
}
