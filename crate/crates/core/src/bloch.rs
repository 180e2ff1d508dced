//! Bloch equations for the four-level J = 1/2 -> J' = 1/2 emitter.
//!
//! Levels: `|1>`, `|2>` are the upper Zeeman sublevels (m = -1/2, +1/2), `|3>`,
//! `|4>` the lower ones. Only the pi transitions 1-3 and 2-4 are driven and
//! observed. The coherences 1-4, 2-3, 1-2 and 3-4 stay zero, which leaves a
//! closed homogeneous system of eight expectation values
//!
//! ```text
//! index:   0    1    2    3    4    5    6    7
//! value: A11  A13  A22  A24  A31  A33  A42  A44
//! ```
//!
//! with `A_jk = |j><k|`. All rates and frequencies are in units of the total
//! excited-state decay rate `gamma`.

use nalgebra::{SMatrix, SVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expm::expm;
use crate::tolerances::Tolerances;

pub const A11: usize = 0;
pub const A13: usize = 1;
pub const A22: usize = 2;
pub const A24: usize = 3;
pub const A31: usize = 4;
pub const A33: usize = 5;
pub const A42: usize = 6;
pub const A44: usize = 7;

/// Indices of the four populations.
pub const POPULATIONS: [usize; 4] = [A11, A22, A33, A44];

pub type Matrix8 = SMatrix<Complex64, 8, 8>;
pub type Vector8 = SVector<Complex64, 8>;

const PI_BRANCHING: f64 = 1.0 / 3.0;

/// Physical parameters of the driven emitter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SystemParams {
    /// Rabi frequency Omega.
    pub rabi: f64,
    /// Laser detuning Delta from the 1-3 transition.
    pub laser_detuning: f64,
    /// Difference Zeeman splitting delta between the two pi transitions.
    pub zeeman_diff: f64,
    /// Total decay rate of each upper level.
    pub gamma: f64,
    /// Decay rate into the pi channel.
    pub gamma_pi: f64,
    /// Decay rate into the sigma channel.
    pub gamma_sigma: f64,
}

impl SystemParams {
    /// Parameters with `gamma = 1` and the J = 1/2 branching ratios 1/3, 2/3.
    pub fn new(rabi: f64, laser_detuning: f64, zeeman_diff: f64) -> Result<Self> {
        Self::from_branching(rabi, laser_detuning, zeeman_diff, 1.0)
    }

    pub fn from_branching(
        rabi: f64,
        laser_detuning: f64,
        zeeman_diff: f64,
        gamma: f64,
    ) -> Result<Self> {
        let p = SystemParams {
            rabi,
            laser_detuning,
            zeeman_diff,
            gamma,
            gamma_pi: gamma * PI_BRANCHING,
            gamma_sigma: gamma * (1.0 - PI_BRANCHING),
        };
        p.validate()?;
        Ok(p)
    }

    /// Free decay (Omega = Delta = 0) with Zeeman difference `delta`.
    pub fn spontaneous_emission(zeeman_diff: f64) -> Result<Self> {
        Self::new(0.0, 0.0, zeeman_diff)
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [
            ("rabi", self.rabi),
            ("laser_detuning", self.laser_detuning),
            ("zeeman_diff", self.zeeman_diff),
            ("gamma", self.gamma),
            ("gamma_pi", self.gamma_pi),
            ("gamma_sigma", self.gamma_sigma),
        ];
        for (name, v) in finite {
            if !v.is_finite() {
                return Err(Error::invalid(name, format!("must be finite, got {v}")));
            }
        }
        if self.gamma <= 0.0 {
            return Err(Error::invalid("gamma", "must be positive"));
        }
        if self.rabi < 0.0 {
            return Err(Error::invalid("rabi", "must be non-negative"));
        }
        if self.gamma_pi < 0.0 || self.gamma_sigma < 0.0 {
            return Err(Error::invalid("gamma_pi", "partial rates must be non-negative"));
        }
        if ((self.gamma_pi + self.gamma_sigma) - self.gamma).abs() > 1e-12 * self.gamma {
            return Err(Error::invalid(
                "gamma_pi",
                "gamma_pi + gamma_sigma must equal gamma",
            ));
        }
        Ok(())
    }
}

/// The eight expectation values, in the order given in the module docs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector(pub Vector8);

impl BlochVector {
    pub fn from_array(q: [Complex64; 8]) -> Self {
        BlochVector(Vector8::from(q))
    }

    pub fn from_real(q: [f64; 8]) -> Self {
        BlochVector(Vector8::from_fn(|i, _| Complex64::new(q[i], 0.0)))
    }

    /// Equal superposition of both upper levels, `(1/2, 0, 1/2, 0, 0, 0, 0, 0)`.
    pub fn excited_superposition() -> Self {
        Self::from_real([0.5, 0.0, 0.5, 0.0, 0.0, 0.0, 0.0, 0.0])
    }

    /// Equal mixture of both lower levels, `(0, 0, 0, 0, 0, 1/2, 0, 1/2)`.
    pub fn ground_superposition() -> Self {
        Self::from_real([0.0, 0.0, 0.0, 0.0, 0.0, 0.5, 0.0, 0.5])
    }

    pub fn get(&self, i: usize) -> Complex64 {
        self.0[i]
    }

    pub fn population_sum(&self) -> Complex64 {
        POPULATIONS.iter().map(|&i| self.0[i]).sum()
    }

    pub fn to_array(&self) -> [Complex64; 8] {
        std::array::from_fn(|i| self.0[i])
    }
}

/// Which initial state a scenario starts from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InitialState {
    ExcitedSuperposition,
    GroundSuperposition,
    Explicit([Complex64; 8]),
}

impl InitialState {
    pub fn vector(&self) -> BlochVector {
        match self {
            InitialState::ExcitedSuperposition => BlochVector::excited_superposition(),
            InitialState::GroundSuperposition => BlochVector::ground_superposition(),
            InitialState::Explicit(q) => BlochVector::from_array(*q),
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            InitialState::ExcitedSuperposition => "excited-superposition",
            InitialState::GroundSuperposition => "ground-superposition",
            InitialState::Explicit(_) => "explicit",
        }
    }
}

/// Coefficient matrix `M` of `d<Q>/dt = M <Q>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneratorMatrix {
    m: Matrix8,
    params: SystemParams,
}

/// Builds `M` row by row from the eight Bloch equations.
///
/// The pi-channel feeding rates into A33 (from A11) and A44 (from A22) are
/// `gamma_pi`; any other choice breaks conservation of probability.
pub fn build_generator(params: SystemParams) -> Result<GeneratorMatrix> {
    params.validate()?;
    let SystemParams {
        rabi,
        laser_detuning: dl,
        zeeman_diff: dz,
        gamma,
        gamma_pi,
        gamma_sigma,
    } = params;

    let i = Complex64::i();
    let re = |x: f64| Complex64::new(x, 0.0);
    let io = i * rabi;
    let half = gamma / 2.0;
    let mut m = Matrix8::zeros();

    m[(A11, A11)] = re(-gamma);
    m[(A11, A31)] = io;
    m[(A11, A13)] = -io;

    m[(A13, A13)] = -(re(half) + i * dl);
    m[(A13, A11)] = -io;
    m[(A13, A33)] = io;

    m[(A22, A22)] = re(-gamma);
    m[(A22, A42)] = -io;
    m[(A22, A24)] = io;

    m[(A24, A24)] = -(re(half) + i * (dl - dz));
    m[(A24, A22)] = io;
    m[(A24, A44)] = -io;

    m[(A31, A31)] = -(re(half) - i * dl);
    m[(A31, A11)] = io;
    m[(A31, A33)] = -io;

    m[(A33, A11)] = re(gamma_pi);
    m[(A33, A22)] = re(gamma_sigma);
    m[(A33, A31)] = -io;
    m[(A33, A13)] = io;

    m[(A42, A42)] = -(re(half) - i * (dl - dz));
    m[(A42, A22)] = -io;
    m[(A42, A44)] = io;

    m[(A44, A11)] = re(gamma_sigma);
    m[(A44, A22)] = re(gamma_pi);
    m[(A44, A42)] = io;
    m[(A44, A24)] = -io;

    Ok(GeneratorMatrix { m, params })
}

impl GeneratorMatrix {
    pub fn matrix(&self) -> &Matrix8 {
        &self.m
    }

    pub fn params(&self) -> &SystemParams {
        &self.params
    }

    /// `e^{M t}`; negative times are rejected.
    pub fn matrix_exp(&self, t: f64) -> Result<Matrix8> {
        if t < 0.0 || t.is_nan() {
            return Err(Error::NegativeTime(t));
        }
        Ok(expm(&self.m.map(|z| z * t)))
    }

    pub fn propagate(&self, q0: &BlochVector, t: f64) -> Result<BlochVector> {
        Ok(BlochVector(self.matrix_exp(t)? * q0.0))
    }

    /// Unique normalized null vector of `M`.
    ///
    /// Uses the default kernel tolerance; see [`Self::steady_state_with`].
    pub fn steady_state(&self) -> Result<BlochVector> {
        self.steady_state_with(&Tolerances::default())
    }

    pub fn steady_state_with(&self, tol: &Tolerances) -> Result<BlochVector> {
        if self.params.rabi == 0.0 {
            // every mixture of the two ground levels is stationary
            return Err(Error::DegenerateSteadyState { kernel_dim: 2 });
        }
        let svd = self.m.svd(false, true);
        let v_t = svd.v_t.expect("requested right singular vectors");
        let sigma = svd.singular_values;
        let smax = sigma.max();
        let kernel_dim = sigma.iter().filter(|&&s| s <= tol.kernel_rel * smax).count();
        if kernel_dim > 1 {
            return Err(Error::DegenerateSteadyState { kernel_dim });
        }
        let k = sigma.imin();
        // rows of V^H are conjugated right singular vectors
        let null = Vector8::from_fn(|i, _| v_t[(k, i)].conj());
        let norm: Complex64 = POPULATIONS.iter().map(|&i| null[i]).sum();
        Ok(BlochVector(null / norm))
    }

    /// Eigenvalues of `M` (from the complex Schur form).
    pub fn eigenvalues(&self) -> Vec<Complex64> {
        self.m
            .eigenvalues()
            .map(|v| v.iter().copied().collect())
            .unwrap_or_default()
    }
}

/// Total pi-light intensity `<A11> + <A22>`.
pub fn intensity(q: &BlochVector) -> f64 {
    (q.0[A11] + q.0[A22]).re
}
