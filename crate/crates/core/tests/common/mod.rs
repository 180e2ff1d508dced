//! Independent reference implementations shared by the integration tests.
//! Nothing here goes through the crate's own exponential or quadrature.
#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use qbeats::bloch::Matrix8;
use qbeats::BlochVector;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn dense(m: &Matrix8) -> DMatrix<Complex64> {
    DMatrix::from_fn(8, 8, |i, j| m[(i, j)])
}

pub fn max_abs_diff(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn ket_bra(j: usize, k: usize) -> DMatrix<Complex64> {
    let mut m = DMatrix::zeros(4, 4);
    m[(j - 1, k - 1)] = c(1.0, 0.0);
    m
}

/// The reduced generator obtained from the full 4-level master equation,
/// restricted to the eight tracked expectation values `<A_jk> = rho_kj`.
pub fn lindblad_reduced(omega: f64, laser_detuning: f64, zeeman_diff: f64) -> DMatrix<Complex64> {
    let (gp, gs) = (1.0 / 3.0, 2.0 / 3.0);
    let i = c(0.0, 1.0);
    let h = ket_bra(1, 1) * c(-laser_detuning, 0.0)
        + ket_bra(2, 2) * c(-(laser_detuning - zeeman_diff), 0.0)
        + (ket_bra(1, 3) - ket_bra(2, 4) + ket_bra(3, 1) - ket_bra(4, 2)) * c(omega, 0.0);
    let lower = [ket_bra(3, 1), ket_bra(4, 2), ket_bra(3, 2), ket_bra(4, 1)];
    // the two pi channels radiate into the same mode with opposite sign
    let pi_rates = [((0, 0), gp), ((1, 1), gp), ((0, 1), -gp), ((1, 0), -gp)];

    let apply = |r: &DMatrix<Complex64>| -> DMatrix<Complex64> {
        let mut out = (&h * r - r * &h) * (-i);
        let mut dissipate = |a: &DMatrix<Complex64>, b: &DMatrix<Complex64>, rate: f64| {
            let bd = b.adjoint();
            out += (a * r * &bd * c(2.0, 0.0) - &bd * a * r - r * &bd * a) * c(0.5 * rate, 0.0);
        };
        for ((p, q), rate) in pi_rates {
            dissipate(&lower[p], &lower[q], rate);
        }
        for k in [2, 3] {
            dissipate(&lower[k], &lower[k], gs);
        }
        out
    };

    let mut sup = DMatrix::zeros(16, 16);
    for col in 0..16 {
        let mut e = DMatrix::zeros(4, 4);
        e[(col / 4, col % 4)] = c(1.0, 0.0);
        let image = apply(&e);
        for row in 0..16 {
            sup[(row, col)] = image[(row / 4, row % 4)];
        }
    }
    let ops = [(1, 1), (1, 3), (2, 2), (2, 4), (3, 1), (3, 3), (4, 2), (4, 4)];
    let idx: Vec<usize> = ops.iter().map(|&(j, k)| (k - 1) * 4 + (j - 1)).collect();
    DMatrix::from_fn(8, 8, |a, b| sup[(idx[a], idx[b])])
}

/// `e^{M t}` from eigenvalues plus inverse-iteration eigenvectors. Returns
/// `None` when the eigenvector basis is too ill conditioned to trust.
pub fn expm_eigen(m: &DMatrix<Complex64>, t: f64) -> Option<DMatrix<Complex64>> {
    let n = m.nrows();
    let lambdas = m.clone().eigenvalues()?;
    let scale = m.iter().map(|z| z.norm()).fold(1.0, f64::max);
    let mut v = DMatrix::zeros(n, n);
    for (k, &l) in lambdas.iter().enumerate() {
        let shifted = m - DMatrix::identity(n, n) * (l + c(1e-10 * scale, 1e-10 * scale));
        let lu = shifted.lu();
        let mut x = DVector::from_fn(n, |i, _| c(1.0 + 0.1 * i as f64, 0.3 - 0.05 * i as f64));
        for _ in 0..3 {
            x = lu.solve(&x)?;
            x /= c(x.norm(), 0.0);
        }
        v.set_column(k, &x);
    }
    let sv = v.clone().singular_values();
    if sv.max() / sv.min() > 1e6 {
        return None;
    }
    let v_inv = v.clone().try_inverse()?;
    let d = DMatrix::from_diagonal(&lambdas.map(|l| (l * t).exp()));
    Some(v * d * v_inv)
}

/// Filtered spectrum from one 24x24 block exponential per transition:
/// its upper-right block is the whole triangle double integral.
pub fn ew_oracle(m: &Matrix8, q0: &BlochVector, nu: f64, t: f64, bandwidth: f64) -> f64 {
    let s = c(bandwidth / 2.0, -nu);
    let m = dense(m);
    let q0 = DVector::from_fn(8, |i, _| q0.get(i));
    let id = DMatrix::<Complex64>::identity(8, 8);
    let mut total = c(0.0, 0.0);
    // (output, first source, second source)
    for (out, a, b) in [(4, 0, 1), (6, 2, 3)] {
        let mut p = DMatrix::zeros(8, 8);
        p[(out, a)] = c(1.0, 0.0);
        p[(out + 1, b)] = c(1.0, 0.0);
        let mut k = DMatrix::zeros(24, 24);
        k.view_mut((0, 0), (8, 8)).copy_from(&(&id * (s - bandwidth) + &m));
        k.view_mut((0, 8), (8, 8)).copy_from(&id);
        k.view_mut((8, 8), (8, 8)).copy_from(&(&id * c(-bandwidth, 0.0)));
        k.view_mut((8, 16), (8, 8)).copy_from(&p);
        k.view_mut((16, 16), (8, 8)).copy_from(&m);
        let e = (k * c(t, 0.0)).exp();
        let block = e.view((0, 16), (8, 8)).into_owned();
        total += (block * &q0)[out];
    }
    2.0 * bandwidth * total.re
}

/// Evenly spaced grid `lo, lo + step, ..., hi`.
pub fn axis(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let n = ((hi - lo) / step).round() as usize;
    (0..=n).map(|i| lo + i as f64 * step).collect()
}
