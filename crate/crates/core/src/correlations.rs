//! Two-time dipole correlations from the quantum regression formula.
//!
//! For a first measurement time `t1` the vectors `U(t1, tau) = A13(t1) Q(t1 + tau)`
//! and `V(t1, tau) = A24(t1) Q(t1 + tau)` obey the same equations in `tau` as
//! `Q` itself. Their `tau = 0` values follow from operator products:
//! `A13 A31 = A11`, `A13 A33 = A13`, `A24 A42 = A22`, `A24 A44 = A24`, all
//! other products with the components of `Q` vanish. Hence
//!
//! ```text
//! U(t1, 0) = (0, 0, 0, 0, <A11>, <A13>, 0, 0)
//! V(t1, 0) = (0, 0, 0, 0, 0, 0, <A22>, <A24>)
//! ```
//!
//! and with `E = e^{M tau}` (0-based indices, see [`crate::bloch`]):
//!
//! ```text
//! <A13(t1) A31(t1+tau)> = E[4][4] <A11(t1)> + E[4][5] <A13(t1)>
//! <A24(t1) A42(t1+tau)> = E[6][6] <A22(t1)> + E[6][7] <A24(t1)>
//! ```

use num_complex::Complex64;

use crate::bloch::{BlochVector, GeneratorMatrix, Matrix8, Vector8, A11, A13, A22, A24, A31, A33, A42, A44};
use crate::error::{Error, Result};

/// Regression-formula initial vectors at delay zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoTimeInitial {
    pub u0: Vector8,
    pub v0: Vector8,
    pub t1: f64,
}

impl TwoTimeInitial {
    /// Builds both vectors from the one-time Bloch vector at `t1`.
    pub fn from_state(q: &BlochVector, t1: f64) -> Self {
        let mut u0 = Vector8::zeros();
        let mut v0 = Vector8::zeros();
        u0[A31] = q.get(A11);
        u0[A33] = q.get(A13);
        v0[A42] = q.get(A22);
        v0[A44] = q.get(A24);
        TwoTimeInitial { u0, v0, t1 }
    }
}

/// `G(t1, tau) = g13 + g24`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationKernel {
    pub g: Complex64,
    /// `<A13(t1) A31(t1 + tau)>`
    pub g13: Complex64,
    /// `<A24(t1) A42(t1 + tau)>`
    pub g24: Complex64,
    pub t1: f64,
    pub tau: f64,
}

impl CorrelationKernel {
    fn new(g13: Complex64, g24: Complex64, t1: f64, tau: f64) -> Self {
        CorrelationKernel {
            g: g13 + g24,
            g13,
            g24,
            t1,
            tau,
        }
    }
}

fn check_times(t1: f64, tau: f64) -> Result<()> {
    if t1 < 0.0 || t1.is_nan() {
        return Err(Error::NegativeTime(t1));
    }
    if tau < 0.0 || tau.is_nan() {
        return Err(Error::NegativeTime(tau));
    }
    Ok(())
}

pub fn two_time_initials(g: &GeneratorMatrix, q0: &BlochVector, t1: f64) -> Result<TwoTimeInitial> {
    let q = g.propagate(q0, t1)?;
    Ok(TwoTimeInitial::from_state(&q, t1))
}

/// Correlation pieces from a precomputed delay propagator `e^{M tau}`.
pub(crate) fn correlation_from_parts(
    delay_prop: &Matrix8,
    q_t1: &BlochVector,
) -> (Complex64, Complex64) {
    let g13 = delay_prop[(A31, A31)] * q_t1.get(A11) + delay_prop[(A31, A33)] * q_t1.get(A13);
    let g24 = delay_prop[(A42, A42)] * q_t1.get(A22) + delay_prop[(A42, A44)] * q_t1.get(A24);
    (g13, g24)
}

pub fn dipole_correlation(
    g: &GeneratorMatrix,
    q0: &BlochVector,
    t1: f64,
    tau: f64,
) -> Result<CorrelationKernel> {
    check_times(t1, tau)?;
    let q = g.propagate(q0, t1)?;
    let e = g.matrix_exp(tau)?;
    let (g13, g24) = correlation_from_parts(&e, &q);
    Ok(CorrelationKernel::new(g13, g24, t1, tau))
}

/// The two correlations that the spectrum leaves out,
/// `(<A13(t1) A42(t1+tau)>, <A24(t1) A31(t1+tau)>)`.
///
/// Both start at zero. They stay zero without drive but pick up a small
/// nonzero value under laser driving through the sigma-decay feeding of the
/// opposite ground level.
pub fn cross_correlations(
    g: &GeneratorMatrix,
    q0: &BlochVector,
    t1: f64,
    tau: f64,
) -> Result<(Complex64, Complex64)> {
    check_times(t1, tau)?;
    let init = two_time_initials(g, q0, t1)?;
    let e = g.matrix_exp(tau)?;
    Ok(((e * init.u0)[A42], (e * init.v0)[A31]))
}

/// Closed-form correlations for free decay from the excited superposition.
pub fn se_correlation_analytic(gamma: f64, delta: f64, t1: f64, tau: f64) -> Result<CorrelationKernel> {
    check_times(t1, tau)?;
    let decay = 0.5 * (-gamma * t1).exp();
    let g13 = Complex64::new(decay * (-gamma * tau / 2.0).exp(), 0.0);
    let g24 = decay * Complex64::new(-gamma * tau / 2.0, -delta * tau).exp();
    Ok(CorrelationKernel::new(g13, g24, t1, tau))
}
