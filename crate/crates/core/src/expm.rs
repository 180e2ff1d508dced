//! Matrix exponential by scaling and squaring with diagonal Padé
//! approximants of degree 3, 5, 7, 9 or 13.
//!
//! The degree is picked from the 1-norm of the argument using the backward
//! error bounds `THETA_*`; larger norms are scaled by `2^-s` into the degree-13
//! region and the result squared `s` times. For the small dense matrices used
//! in this crate the exact 1-norm is cheap, so no norm estimator is needed.

use nalgebra::SMatrix;
use num_complex::Complex64;

#[allow(clippy::excessive_precision)]
const THETA_3: f64 = 1.495585217958292e-2;
#[allow(clippy::excessive_precision)]
const THETA_5: f64 = 2.539398330063230e-1;
const THETA_7: f64 = 9.504178996162932e-1;
const THETA_9: f64 = 2.097847961257068e0;
const THETA_13: f64 = 5.371920351148152e0;

const B3: [f64; 4] = [120.0, 60.0, 12.0, 1.0];
const B5: [f64; 6] = [30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0];
const B7: [f64; 8] = [
    17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0,
];
const B9: [f64; 10] = [
    17643225600.0,
    8821612800.0,
    2075673600.0,
    302702400.0,
    30270240.0,
    2162160.0,
    110880.0,
    3960.0,
    90.0,
    1.0,
];
const B13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

type Square<const N: usize> = SMatrix<Complex64, N, N>;

/// Maximum absolute column sum.
pub fn norm1<const N: usize>(a: &Square<N>) -> f64 {
    a.column_iter()
        .map(|col| col.iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

fn scaled<const N: usize>(a: &Square<N>, f: f64) -> Square<N> {
    a.map(|z| z * f)
}

/// `e^A` for a square complex matrix.
pub fn expm<const N: usize>(a: &Square<N>) -> Square<N> {
    let norm = norm1(a);
    if !norm.is_finite() {
        return a.map(|_| Complex64::new(f64::NAN, f64::NAN));
    }
    if norm <= THETA_3 {
        return pade_low(a, &B3);
    }
    if norm <= THETA_5 {
        return pade_low(a, &B5);
    }
    if norm <= THETA_7 {
        return pade_low(a, &B7);
    }
    if norm <= THETA_9 {
        return pade_low(a, &B9);
    }

    let s = (norm / THETA_13).log2().ceil().max(0.0) as i32;
    let reduced = scaled(a, 2f64.powi(-s));
    let mut r = pade13(&reduced);
    for _ in 0..s {
        r = r * r;
    }
    r
}

/// Padé approximant of degree m = b.len() - 1 for odd m <= 9.
fn pade_low<const N: usize>(a: &Square<N>, b: &[f64]) -> Square<N> {
    let ident = Square::<N>::identity();
    let a2 = a * a;
    // even powers A^0, A^2, A^4, ...
    let mut pow = ident;
    let mut u_inner = Square::<N>::zeros();
    let mut v = Square::<N>::zeros();
    for k in (0..b.len()).step_by(2) {
        v += scaled(&pow, b[k]);
        u_inner += scaled(&pow, b[k + 1]);
        pow *= a2;
    }
    let u = a * u_inner;
    solve_pade(&u, &v)
}

fn pade13<const N: usize>(a: &Square<N>) -> Square<N> {
    let b = &B13;
    let ident = Square::<N>::identity();
    let a2 = a * a;
    let a4 = a2 * a2;
    let a6 = a4 * a2;

    let u_hi = scaled(&a6, b[13]) + scaled(&a4, b[11]) + scaled(&a2, b[9]);
    let u_inner = a6 * u_hi
        + scaled(&a6, b[7])
        + scaled(&a4, b[5])
        + scaled(&a2, b[3])
        + scaled(&ident, b[1]);
    let u = a * u_inner;

    let v_hi = scaled(&a6, b[12]) + scaled(&a4, b[10]) + scaled(&a2, b[8]);
    let v = a6 * v_hi
        + scaled(&a6, b[6])
        + scaled(&a4, b[4])
        + scaled(&a2, b[2])
        + scaled(&ident, b[0]);
    solve_pade(&u, &v)
}

/// Solves `(V - U) X = V + U` by Gaussian elimination with partial pivoting.
/// `V - U` is well conditioned for `||A||_1 <= THETA_13`.
fn solve_pade<const N: usize>(u: &Square<N>, v: &Square<N>) -> Square<N> {
    let mut a = v - u;
    let mut x = v + u;
    for col in 0..N {
        let pivot = (col..N)
            .max_by(|&i, &j| a[(i, col)].norm().total_cmp(&a[(j, col)].norm()))
            .unwrap_or(col);
        a.swap_rows(col, pivot);
        x.swap_rows(col, pivot);
        let d = a[(col, col)];
        for row in col + 1..N {
            let f = a[(row, col)] / d;
            if f == Complex64::new(0.0, 0.0) {
                continue;
            }
            for k in col..N {
                let t = a[(col, k)];
                a[(row, k)] -= f * t;
            }
            for k in 0..N {
                let t = x[(col, k)];
                x[(row, k)] -= f * t;
            }
        }
    }
    for col in (0..N).rev() {
        let d = a[(col, col)];
        for k in 0..N {
            let mut s = x[(col, k)];
            for j in col + 1..N {
                s -= a[(col, j)] * x[(j, k)];
            }
            x[(col, k)] = s / d;
        }
    }
    x
}
