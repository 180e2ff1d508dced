mod common;

use common::{c, dense, expm_eigen, lindblad_reduced, max_abs_diff};
use num_complex::Complex64;
use proptest::prelude::*;
use qbeats::bloch::{A11, A13, A22, A24, A31, A33, A42, A44, POPULATIONS};
use qbeats::{build_generator, intensity, BlochVector, SystemParams};

fn params() -> impl Strategy<Value = SystemParams> {
    (0.0..10.0f64, -10.0..10.0f64, -10.0..10.0f64)
        .prop_map(|(o, dl, dz)| SystemParams::new(o, dl, dz).unwrap())
}

/// Physical Bloch vectors: nonnegative populations summing to one and
/// coherences inside the Cauchy-Schwarz bound.
fn physical_state() -> impl Strategy<Value = BlochVector> {
    (
        prop::array::uniform4(0.0..1.0f64),
        prop::array::uniform2(0.0..1.0f64),
        prop::array::uniform2(0.0..std::f64::consts::TAU),
    )
        .prop_filter("nonzero weights", |(w, _, _)| w.iter().sum::<f64>() > 1e-3)
        .prop_map(|(w, r, phi)| {
            let total: f64 = w.iter().sum();
            let p: Vec<f64> = w.iter().map(|x| x / total).collect();
            let a13 = Complex64::from_polar(r[0] * (p[0] * p[2]).sqrt(), phi[0]);
            let a24 = Complex64::from_polar(r[1] * (p[1] * p[3]).sqrt(), phi[1]);
            let mut q = [c(0.0, 0.0); 8];
            q[A11] = c(p[0], 0.0);
            q[A22] = c(p[1], 0.0);
            q[A33] = c(p[2], 0.0);
            q[A44] = c(p[3], 0.0);
            q[A13] = a13;
            q[A31] = a13.conj();
            q[A24] = a24;
            q[A42] = a24.conj();
            BlochVector::from_array(q)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn trace_is_conserved_out_to_fifty(p in params(), q0 in physical_state()) {
        let g = build_generator(p).unwrap();
        for k in 0..=100 {
            let t = 0.5 * k as f64;
            let q = g.propagate(&q0, t).unwrap();
            prop_assert!((q.population_sum() - 1.0).norm() <= 1e-10, "t={t}");
            for i in POPULATIONS {
                let z = q.get(i);
                prop_assert!(z.im.abs() <= 1e-10);
                prop_assert!(z.re >= -1e-10 && z.re <= 1.0 + 1e-10);
            }
        }
    }

    #[test]
    fn conjugate_pairing_is_preserved(p in params(), q0 in physical_state(), t in 0.0..20.0f64) {
        let q = build_generator(p).unwrap().propagate(&q0, t).unwrap();
        prop_assert!((q.get(A31) - q.get(A13).conj()).norm() <= 1e-12);
        prop_assert!((q.get(A42) - q.get(A24).conj()).norm() <= 1e-12);
    }

    #[test]
    fn semigroup(p in params(), a in 0.0..5.0f64, b in 0.0..5.0f64) {
        let g = build_generator(p).unwrap();
        let lhs = g.matrix_exp(a + b).unwrap();
        let rhs = g.matrix_exp(a).unwrap() * g.matrix_exp(b).unwrap();
        prop_assert!((lhs - rhs).iter().map(|z| z.norm()).fold(0.0, f64::max) <= 1e-9);
    }

    #[test]
    fn generator_is_dissipative(p in params()) {
        let g = build_generator(p).unwrap();
        for l in g.eigenvalues() {
            prop_assert!(l.re <= 1e-10, "{l}");
        }
    }

    #[test]
    fn population_rows_cancel(p in params()) {
        let m = *build_generator(p).unwrap().matrix();
        for j in 0..8 {
            let s: Complex64 = POPULATIONS.iter().map(|&i| m[(i, j)]).sum();
            prop_assert!(s.norm() <= 1e-15);
        }
    }

    #[test]
    fn generator_matches_master_equation(p in params()) {
        let m = dense(build_generator(p).unwrap().matrix());
        let reference = lindblad_reduced(p.rabi, p.laser_detuning, p.zeeman_diff);
        prop_assert!(max_abs_diff(&m, &reference) <= 1e-12);
    }

    #[test]
    fn exponential_matches_eigendecomposition(p in params()) {
        let g = build_generator(p).unwrap();
        let ours = dense(&g.matrix_exp(2.0).unwrap());
        let oracle = expm_eigen(&dense(g.matrix()), 2.0);
        prop_assume!(oracle.is_some());
        let oracle = oracle.unwrap();
        let scale = oracle.iter().map(|z| z.norm()).fold(0.0, f64::max);
        prop_assert!(max_abs_diff(&ours, &oracle) <= 1e-9 * scale);
    }
}

#[test]
fn exponential_matches_nalgebra_reference() {
    let g = build_generator(SystemParams::new(6.0, 0.3, -7.0).unwrap()).unwrap();
    for t in [0.0, 0.01, 0.7, 2.0, 9.0, 30.0] {
        let ours = dense(&g.matrix_exp(t).unwrap());
        let reference = (dense(g.matrix()) * c(t, 0.0)).exp();
        let scale = reference.iter().map(|z| z.norm()).fold(0.0, f64::max);
        assert!(max_abs_diff(&ours, &reference) <= 1e-10 * scale, "t={t}");
    }
}

#[test]
fn free_decay_closed_form() {
    let g = build_generator(SystemParams::spontaneous_emission(-2.0).unwrap()).unwrap();
    let q0 = BlochVector::excited_superposition();
    for k in 0..=40 {
        let t = 0.25 * k as f64;
        let q = g.propagate(&q0, t).unwrap();
        let half = 0.5 * (-t).exp();
        assert!((q.get(A11) - half).norm() <= 1e-12);
        assert!((q.get(A22) - half).norm() <= 1e-12);
        for i in [A13, A24, A31, A42] {
            assert!(q.get(i).norm() <= 1e-12);
        }
        assert!((intensity(&q) - (-t).exp()).abs() <= 1e-10);
    }
    let q1 = g.propagate(&q0, 1.0).unwrap();
    assert!((q1.get(A11).re - 0.183940).abs() < 1e-6);
    assert!((intensity(&g.propagate(&q0, 2.0).unwrap()) - 0.135335).abs() < 1e-6);
}

#[test]
fn driven_state_relaxes_to_steady_state() {
    let g = build_generator(SystemParams::new(6.0, 0.0, -7.0).unwrap()).unwrap();
    let ss = g.steady_state().unwrap();
    assert!((ss.population_sum() - 1.0).norm() <= 1e-12);
    for i in POPULATIONS {
        assert!(ss.get(i).im.abs() <= 1e-12 && (0.0..=1.0).contains(&ss.get(i).re));
    }
    let q0 = BlochVector::ground_superposition();
    let gap = |t: f64| {
        let q = g.propagate(&q0, t).unwrap();
        (q.0 - ss.0).iter().map(|z| z.norm()).fold(0.0, f64::max)
    };
    assert!(gap(30.0) <= 1e-6);
    assert!(gap(50.0) <= 1e-8);
    let i_ss = intensity(&ss);
    assert!(i_ss > 0.0 && i_ss < 1.0);
    assert!((g.matrix() * ss.0).iter().all(|z| z.norm() <= 1e-12));
    assert_eq!(intensity(&q0), 0.0);
}
