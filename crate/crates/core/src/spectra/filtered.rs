//! Numerical evaluation of filtered double integrals of the dipole correlation.
//!
//! Both the physical spectrum and the perfect-resolution spectrum have the form
//!
//! ```text
//! D = 2 c Re int_0^t dt1 e^{-a (t - t1)} int_0^{t - t1} dtau e^{s tau} G(t1, tau)
//! ```
//!
//! The delay integral is done in closed form. With `G` read off rows 4 and 6 of
//! `e^{M tau}`, what is needed is the row vector
//! `r_c(T) = e_c^T int_0^T e^{(s + M) tau} dtau`, obtained either from the
//! resolvent, `(e_c^T e^{sT} e^{MT} - e_c^T) (sI + M)^{-1}`, or, when `sI + M` is
//! badly conditioned, from the top-right block of
//! `exp([[sI + M, I], [0, 0]] T)`. The outer `t1` integral uses composite
//! Simpson with step halving on the uniform grid `t1_k = k h`, for which
//! `T = (N - k) h`, so every propagator is a power of `e^{M h}`.

use nalgebra::SMatrix;
use num_complex::Complex64;

use crate::bloch::{BlochVector, GeneratorMatrix, Matrix8, A11, A13, A22, A24, A31, A42};
use crate::error::{Error, Result};
use crate::expm::expm;
use crate::tolerances::Tolerances;

use super::FilterSettings;

type Matrix16 = SMatrix<Complex64, 16, 16>;
type Row8 = [Complex64; 8];

/// The spectrum-specific constants `c`, `a` and `s` of the double integral.
#[derive(Debug, Clone, Copy)]
struct Kernel {
    prefactor: f64,
    outer_decay: f64,
    s: Complex64,
    nu: f64,
}

enum DelayRoute {
    /// `(sI + M)^{-1}`
    Resolvent(Box<Matrix8>),
    Augmented,
}

fn choose_route(shifted: &Matrix8, tol: &Tolerances) -> DelayRoute {
    let sv = shifted.singular_values();
    let cond = sv.max() / sv.min();
    if cond.is_finite() && cond <= tol.resolvent_condition_max {
        if let Some(inv) = shifted.try_inverse() {
            return DelayRoute::Resolvent(Box::new(inv));
        }
    }
    DelayRoute::Augmented
}

fn unit_row(c: usize) -> Row8 {
    let mut r = [Complex64::new(0.0, 0.0); 8];
    r[c] = Complex64::new(1.0, 0.0);
    r
}

fn row_times(r: &Row8, m: &Matrix8) -> Row8 {
    std::array::from_fn(|j| (0..8).map(|k| r[k] * m[(k, j)]).sum())
}

/// `[r_4(T)[4], r_4(T)[5], r_6(T)[6], r_6(T)[7]]` for `T = m h`, `m = 0..=n`.
fn delay_rows(
    route: &DelayRoute,
    shifted: &Matrix8,
    step_prop: &Matrix8,
    s: Complex64,
    h: f64,
    n: usize,
) -> Vec<[Complex64; 4]> {
    let mut out = Vec::with_capacity(n + 1);
    let mut row4 = unit_row(A31);
    let mut row6 = unit_row(A42);
    match route {
        DelayRoute::Resolvent(inv) => {
            let entry = |row: &Row8, c: usize, j: usize, es: Complex64| -> Complex64 {
                (0..8)
                    .map(|k| {
                        let lead = es * row[k] - if k == c { 1.0 } else { 0.0 };
                        lead * inv[(k, j)]
                    })
                    .sum()
            };
            for m in 0..=n {
                let es = (s * (m as f64 * h)).exp();
                out.push([
                    entry(&row4, A31, A31, es),
                    entry(&row4, A31, A31 + 1, es),
                    entry(&row6, A42, A42, es),
                    entry(&row6, A42, A42 + 1, es),
                ]);
                row4 = row_times(&row4, step_prop);
                row6 = row_times(&row6, step_prop);
            }
        }
        DelayRoute::Augmented => {
            let mut aug = Matrix16::zeros();
            for i in 0..8 {
                for j in 0..8 {
                    aug[(i, j)] = shifted[(i, j)] * h;
                }
                aug[(i, 8 + i)] = Complex64::new(h, 0.0);
            }
            let e = expm(&aug);
            let shifted_step = Matrix8::from_fn(|i, j| e[(i, j)]);
            let phi = Matrix8::from_fn(|i, j| e[(i, 8 + j)]);
            let mut acc4 = [Complex64::new(0.0, 0.0); 8];
            let mut acc6 = acc4;
            for _ in 0..=n {
                out.push([acc4[A31], acc4[A31 + 1], acc6[A42], acc6[A42 + 1]]);
                let d4 = row_times(&row4, &phi);
                let d6 = row_times(&row6, &phi);
                for j in 0..8 {
                    acc4[j] += d4[j];
                    acc6[j] += d6[j];
                }
                row4 = row_times(&row4, &shifted_step);
                row6 = row_times(&row6, &shifted_step);
            }
        }
    }
    out
}

/// Composite Simpson value with `n` (even) panels.
fn simpson_level(
    g: &GeneratorMatrix,
    q0: &BlochVector,
    kernel: &Kernel,
    route: &DelayRoute,
    shifted: &Matrix8,
    t: f64,
    n: usize,
) -> f64 {
    let h = t / n as f64;
    let step_prop = expm(&g.matrix().map(|z| z * h));
    let rows = delay_rows(route, shifted, &step_prop, kernel.s, h, n);

    let mut q = q0.0;
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..=n {
        let m = n - k;
        let r = &rows[m];
        let corr = r[0] * q[A11] + r[1] * q[A13] + r[2] * q[A22] + r[3] * q[A24];
        let weight = if k == 0 || k == n {
            1.0
        } else if k % 2 == 1 {
            4.0
        } else {
            2.0
        };
        acc += corr * (weight * (-kernel.outer_decay * m as f64 * h).exp());
        q = step_prop * q;
    }
    2.0 * kernel.prefactor * (acc * (h / 3.0)).re
}

fn filtered_integral(
    g: &GeneratorMatrix,
    q0: &BlochVector,
    kernel: Kernel,
    t: f64,
    tol: &Tolerances,
) -> Result<f64> {
    if t < 0.0 || t.is_nan() {
        return Err(Error::NegativeTime(t));
    }
    if t == 0.0 {
        return Ok(0.0);
    }
    let m = g.matrix();
    let shifted = m + Matrix8::identity() * kernel.s;
    let route = choose_route(&shifted, tol);

    // fastest oscillation/decay rate in the integrand bounds the first step
    let m_inf = m
        .row_iter()
        .map(|r| r.iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max);
    let omega_max = m_inf + kernel.s.norm() + kernel.outer_decay;
    let cap = 1usize << tol.max_panels_log2;
    let wanted = (t * omega_max / tol.initial_phase_step).ceil() as usize;
    let mut n = wanted.max(16).next_power_of_two().min(cap / 2).max(2);

    let mut prev = simpson_level(g, q0, &kernel, &route, &shifted, t, n);
    loop {
        let n2 = 2 * n;
        let cur = simpson_level(g, q0, &kernel, &route, &shifted, t, n2);
        let diff = (cur - prev).abs();
        if diff <= tol.quadrature_rel * cur.abs() + tol.quadrature_abs {
            // Richardson step on the h^4 error term
            return Ok(cur + (cur - prev) / 15.0);
        }
        if 2 * n2 > cap {
            return Err(Error::QuadratureNotConverged {
                nu: kernel.nu,
                t,
                panels: n2,
                rel_change: diff / cur.abs().max(f64::MIN_POSITIVE),
            });
        }
        prev = cur;
        n = n2;
    }
}

/// Physical (filtered) spectrum `S(nu, t, Gamma)` by numerical quadrature.
pub fn ew_spectrum(g: &GeneratorMatrix, q0: &BlochVector, f: &FilterSettings, t: f64) -> Result<f64> {
    ew_spectrum_with(g, q0, f, t, &Tolerances::default())
}

pub fn ew_spectrum_with(
    g: &GeneratorMatrix,
    q0: &BlochVector,
    f: &FilterSettings,
    t: f64,
    tol: &Tolerances,
) -> Result<f64> {
    f.validate()?;
    let bw = f.bandwidth;
    let kernel = Kernel {
        prefactor: bw,
        outer_decay: bw,
        s: Complex64::new(bw / 2.0, -f.nu),
        nu: f.nu,
    };
    filtered_integral(g, q0, kernel, t, tol)
}

/// Finite-time spectrum with perfect resolution,
/// `P(nu) = 2 Re int_0^T dt1 int_0^{T - t1} dtau e^{-i nu tau} G(t1, tau)`.
///
/// This is the double integral of `G(t1, t2)` over the square `[0, T]^2`,
/// folded onto `t2 >= t1` with `G(t2, t1) = G(t1, t2)^*`. The frequency sign
/// follows the physical spectrum, so that `P = lim S / Gamma` as
/// `Gamma -> 0`. The proportionality constant is 1.
pub fn perfect_resolution_spectrum(g: &GeneratorMatrix, q0: &BlochVector, nu: f64, big_t: f64) -> Result<f64> {
    perfect_resolution_spectrum_with(g, q0, nu, big_t, &Tolerances::default())
}

pub fn perfect_resolution_spectrum_with(
    g: &GeneratorMatrix,
    q0: &BlochVector,
    nu: f64,
    big_t: f64,
    tol: &Tolerances,
) -> Result<f64> {
    if !nu.is_finite() {
        return Err(Error::invalid("nu", "must be finite"));
    }
    let kernel = Kernel {
        prefactor: 1.0,
        outer_decay: 0.0,
        s: Complex64::new(0.0, -nu),
        nu,
    };
    filtered_integral(g, q0, kernel, big_t, tol)
}
