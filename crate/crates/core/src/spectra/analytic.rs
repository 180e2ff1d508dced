//! Closed-form spectrum of free decay from the excited superposition.
//!
//! Each pi transition contributes
//!
//! ```text
//! F(t, x) / ((gamma - Gamma)^2 + 4 (nu + x)^2)
//! F(t, x) = 2 Gamma (e^{-Gamma t} + e^{-gamma t}) - 4 Gamma e^{-(gamma + Gamma) t / 2} cos((nu + x) t)
//! ```
//!
//! with `x = 0` for 1-3 and `x = delta` for 2-4. Written with `a = (gamma - Gamma) t / 4`
//! and `b = (nu + x) t / 2` the same term is
//!
//! ```text
//! (Gamma t^2 / 2) e^{-(gamma + Gamma) t / 2} (sinh^2 a + sin^2 b) / (a^2 + b^2)
//! ```
//!
//! which is free of the 0/0 at `Gamma -> gamma`, `nu + x -> 0` and is what
//! [`se_spectrum_stable`] evaluates.

use super::FilterSettings;
use crate::tolerances::Tolerances;

/// `sin(z)/z`, with the Taylor series below `series_below`.
pub fn sinc(z: f64, series_below: f64) -> f64 {
    if z.abs() < series_below {
        let z2 = z * z;
        1.0 - z2 / 6.0 + z2 * z2 / 120.0
    } else {
        z.sin() / z
    }
}

/// One transition's term in the stable form.
fn transition_term(gamma: f64, bandwidth: f64, detuning: f64, t: f64) -> f64 {
    let a = (gamma - bandwidth) * t / 4.0;
    let b = detuning * t / 2.0;
    let mean_decay = (-(gamma + bandwidth) * t / 2.0).exp();
    // e^{-(gamma+Gamma)t/4} sinh(a), computed without overflow or cancellation
    let sh = if a.abs() < 0.5 {
        (-(gamma + bandwidth) * t / 4.0).exp() * a.sinh()
    } else {
        0.5 * ((-bandwidth * t / 2.0).exp() - (-gamma * t / 2.0).exp())
    };
    let num = sh * sh + mean_decay * b.sin().powi(2);
    let den = a * a + b * b;
    let ratio = if den == 0.0 { mean_decay } else { num / den };
    0.5 * bandwidth * t * t * ratio
}

/// Closed-form spectrum without the narrowing-limit switch.
pub fn se_spectrum_stable(gamma: f64, delta: f64, bandwidth: f64, nu: f64, t: f64) -> f64 {
    if t <= 0.0 {
        return 0.0;
    }
    transition_term(gamma, bandwidth, nu, t) + transition_term(gamma, bandwidth, nu + delta, t)
}

/// Spontaneous-emission spectrum; zero for `t <= 0` since nothing has reached
/// the filter yet.
pub fn se_spectrum_analytic(gamma: f64, delta: f64, f: &FilterSettings, t: f64) -> f64 {
    se_spectrum_analytic_with(gamma, delta, f, t, &Tolerances::default())
}

pub fn se_spectrum_analytic_with(
    gamma: f64,
    delta: f64,
    f: &FilterSettings,
    t: f64,
    tol: &Tolerances,
) -> f64 {
    if (gamma - f.bandwidth).abs() < tol.narrowing_switch * gamma {
        return se_spectrum_narrowing_limit(gamma, delta, f.nu, t);
    }
    se_spectrum_stable(gamma, delta, f.bandwidth, f.nu, t)
}

/// The `Gamma = gamma` limit: `(gamma t^2 / 2) e^{-gamma t} [sinc^2(nu t/2) + sinc^2((nu+delta) t/2)]`.
pub fn se_spectrum_narrowing_limit(gamma: f64, delta: f64, nu: f64, t: f64) -> f64 {
    if t <= 0.0 {
        return 0.0;
    }
    let cut = Tolerances::default().sinc_series;
    let s1 = sinc(nu * t / 2.0, cut);
    let s2 = sinc((nu + delta) * t / 2.0, cut);
    0.5 * gamma * t * t * (-gamma * t).exp() * (s1 * s1 + s2 * s2)
}
