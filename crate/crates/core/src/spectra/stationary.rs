//! Stationary (Wiener-Khintchine) spectrum via a resolvent solve.

use num_complex::Complex64;

use crate::bloch::{GeneratorMatrix, Matrix8, A31, A42};
use crate::correlations::TwoTimeInitial;
use crate::error::{Error, Result};
use crate::tolerances::Tolerances;

/// `Re int_0^inf dtau e^{-(b + i nu) tau} G_ss(tau)` for the steady state of `g`.
///
/// `b` is the phenomenological broadening. With `b = 0` the elastic
/// component makes the resolvent singular at `nu = 0`; that case is reported
/// as [`Error::SingularResolvent`] rather than modelled as a delta peak.
pub fn wk_spectrum(g: &GeneratorMatrix, nu: f64, broadening: f64) -> Result<f64> {
    wk_spectrum_with(g, nu, broadening, &Tolerances::default())
}

pub fn wk_spectrum_with(g: &GeneratorMatrix, nu: f64, broadening: f64, tol: &Tolerances) -> Result<f64> {
    if broadening.is_nan() || broadening < 0.0 || broadening.is_infinite() {
        return Err(Error::invalid("broadening", format!("must be non-negative, got {broadening}")));
    }
    if !nu.is_finite() {
        return Err(Error::invalid("nu", "must be finite"));
    }
    let ss = g.steady_state_with(tol)?;
    let init = TwoTimeInitial::from_state(&ss, f64::INFINITY);

    let z = Complex64::new(broadening, nu);
    let resolvent = Matrix8::identity() * z - g.matrix();
    let sv = resolvent.singular_values();
    let condition = sv.max() / sv.min();
    if condition.is_nan() || condition > tol.singular_condition_max {
        return Err(Error::SingularResolvent { nu, condition });
    }
    let lu = resolvent.lu();
    let x_u = lu.solve(&init.u0).ok_or(Error::SingularResolvent { nu, condition })?;
    let x_v = lu.solve(&init.v0).ok_or(Error::SingularResolvent { nu, condition })?;
    Ok((x_u[A31] + x_v[A42]).re)
}
