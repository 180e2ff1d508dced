use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bloch::{GeneratorMatrix, InitialState, SystemParams};
use crate::error::{Error, Result};
use crate::tolerances::Tolerances;

use super::{ew_spectrum_with, se_spectrum_analytic_with, FilterSettings};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// Quadrature of the regression-formula correlations.
    Numeric,
    /// Closed form for free decay.
    Analytic,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridMeta {
    pub params: SystemParams,
    pub bandwidth: f64,
    pub initial: String,
    pub method: Method,
}

/// `values[i][j] = S(nus[i], times[j], Gamma)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumGrid {
    pub nus: Vec<f64>,
    pub times: Vec<f64>,
    pub values: Vec<Vec<f64>>,
    pub meta: GridMeta,
}

impl SpectrumGrid {
    /// Spectrum at fixed time index `j` as a function of `nu`.
    pub fn column(&self, j: usize) -> Vec<f64> {
        self.values.iter().map(|row| row[j]).collect()
    }

    pub fn max(&self) -> f64 {
        self.values.iter().flatten().copied().fold(f64::NEG_INFINITY, f64::max)
    }
}

fn check_axis(name: &'static str, xs: &[f64]) -> Result<()> {
    if xs.is_empty() {
        return Err(Error::invalid(name, "grid is empty"));
    }
    if xs.iter().any(|x| !x.is_finite()) {
        return Err(Error::invalid(name, "grid values must be finite"));
    }
    if xs.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::invalid(name, "grid must be strictly increasing"));
    }
    Ok(())
}

/// Evaluates `point` on every `(nu, t)` pair in parallel. The first failing
/// point in row-major order is reported, so errors do not depend on the
/// thread schedule.
fn fill<F>(nus: &[f64], times: &[f64], point: F) -> Result<Vec<Vec<f64>>>
where
    F: Fn(f64, f64) -> Result<f64> + Sync,
{
    let nt = times.len();
    let flat: Vec<Result<f64>> = (0..nus.len() * nt)
        .into_par_iter()
        .map(|idx| {
            let (nu, t) = (nus[idx / nt], times[idx % nt]);
            point(nu, t).map_err(|e| Error::GridPoint {
                nu,
                t,
                source: Box::new(e),
            })
        })
        .collect();
    let flat: Vec<f64> = flat.into_iter().collect::<Result<_>>()?;
    Ok(flat.chunks(nt).map(<[f64]>::to_vec).collect())
}

/// Numerical physical spectrum on a `(nu, t)` grid.
pub fn spectrum_grid(
    g: &GeneratorMatrix,
    initial: &InitialState,
    nus: &[f64],
    times: &[f64],
    bandwidth: f64,
    tol: &Tolerances,
) -> Result<SpectrumGrid> {
    check_axis("nus", nus)?;
    check_axis("times", times)?;
    FilterSettings::new(bandwidth, 0.0)?;
    let q0 = initial.vector();
    let values = fill(nus, times, |nu, t| {
        ew_spectrum_with(g, &q0, &FilterSettings { bandwidth, nu }, t, tol)
    })?;
    Ok(SpectrumGrid {
        nus: nus.to_vec(),
        times: times.to_vec(),
        values,
        meta: GridMeta {
            params: *g.params(),
            bandwidth,
            initial: initial.tag().to_string(),
            method: Method::Numeric,
        },
    })
}

/// Closed-form spontaneous-emission spectrum on a `(nu, t)` grid. `params`
/// must describe free decay (no drive, no laser detuning).
pub fn se_spectrum_grid(
    params: &SystemParams,
    nus: &[f64],
    times: &[f64],
    bandwidth: f64,
    tol: &Tolerances,
) -> Result<SpectrumGrid> {
    params.validate()?;
    if params.rabi != 0.0 || params.laser_detuning != 0.0 {
        return Err(Error::invalid("rabi", "closed form requires rabi = laser_detuning = 0"));
    }
    check_axis("nus", nus)?;
    check_axis("times", times)?;
    FilterSettings::new(bandwidth, 0.0)?;
    let values = fill(nus, times, |nu, t| {
        Ok(se_spectrum_analytic_with(
            params.gamma,
            params.zeeman_diff,
            &FilterSettings { bandwidth, nu },
            t,
            tol,
        ))
    })?;
    Ok(SpectrumGrid {
        nus: nus.to_vec(),
        times: times.to_vec(),
        values,
        meta: GridMeta {
            params: *params,
            bandwidth,
            initial: InitialState::ExcitedSuperposition.tag().to_string(),
            method: Method::Analytic,
        },
    })
}
