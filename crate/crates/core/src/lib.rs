//! Time-dependent physical spectra of quantum beats.
//!
//! A single emitter with a J = 1/2 upper and lower level, Zeeman split so
//! that its two pi transitions differ by `delta`, radiates light whose
//! spectrum, seen through a Lorentzian filter, changes in time. This crate
//! computes that filtered spectrum for free decay from an excited
//! superposition and for laser-driven resonance fluorescence.
//!
//! * [`bloch`]: the eight-component Bloch equations, propagation, steady state.
//! * [`correlations`]: two-time dipole correlations via the regression formula.
//! * [`spectra`]: filtered, closed-form, stationary and perfect-resolution spectra.
//! * [`scenario`]: configuration, presets and output used by the `qbeats` binary.
//!
//! All rates and frequencies are in units of the upper-level decay rate.

pub mod bloch;
pub mod correlations;
pub mod error;
pub mod expm;
pub mod scenario;
pub mod spectra;
pub mod tolerances;

pub use bloch::{build_generator, intensity, BlochVector, GeneratorMatrix, InitialState, SystemParams};
pub use correlations::{dipole_correlation, se_correlation_analytic, two_time_initials, CorrelationKernel, TwoTimeInitial};
pub use error::{Error, Result};
pub use spectra::{rabi_frequencies, BeatFrequencies, FilterSettings, SpectrumGrid};
pub use tolerances::Tolerances;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
