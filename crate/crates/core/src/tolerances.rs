//! Library-wide numerical tolerances.
//!
//! Every threshold used by the solvers lives here so that a run manifest can
//! record exactly what was used. [`Tolerances::default`] holds the standard
//! settings; callers may override individual fields.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Relative change between successive step halvings at which the outer
    /// time quadrature is accepted.
    pub quadrature_rel: f64,
    /// Absolute floor added to the relative test, for spectra that vanish.
    pub quadrature_abs: f64,
    /// Refinement cap, as log2 of the number of Simpson panels.
    pub max_panels_log2: u32,
    /// Largest `h * omega_max` allowed for the first refinement level, where
    /// `omega_max` bounds the fastest oscillation in the integrand.
    pub initial_phase_step: f64,
    /// Singular values below `kernel_rel * sigma_max` count as zero.
    pub kernel_rel: f64,
    /// Above this condition number the resolvent route for the inner delay
    /// integral is abandoned for the augmented exponential.
    pub resolvent_condition_max: f64,
    /// Condition number above which the stationary resolvent is singular.
    pub singular_condition_max: f64,
    /// `|gamma - Gamma| < narrowing_switch * gamma` selects the sinc form of
    /// the analytic spontaneous-emission spectrum.
    pub narrowing_switch: f64,
    /// Below this argument `sinc` is evaluated by its Taylor series.
    pub sinc_series: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            quadrature_rel: 1e-5,
            quadrature_abs: 1e-12,
            max_panels_log2: 14,
            initial_phase_step: 0.5,
            kernel_rel: 1e-9,
            resolvent_condition_max: 1e8,
            singular_condition_max: 1e12,
            narrowing_switch: 1e-6,
            sinc_series: 1e-4,
        }
    }
}
