use thiserror::Error;

/// Errors raised by the numerical core.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("negative propagation time {0}")]
    NegativeTime(f64),

    #[error("steady state is not unique: generator kernel has dimension {kernel_dim}")]
    DegenerateSteadyState { kernel_dim: usize },

    #[error("resolvent (broadening + i nu) - M is singular at nu = {nu} (condition number {condition:.3e})")]
    SingularResolvent { nu: f64, condition: f64 },

    #[error(
        "quadrature did not converge at nu = {nu}, t = {t}: \
         relative change {rel_change:.3e} after {panels} panels"
    )]
    QuadratureNotConverged {
        nu: f64,
        t: f64,
        panels: usize,
        rel_change: f64,
    },

    #[error("grid point (nu = {nu}, t = {t}): {source}")]
    GridPoint {
        nu: f64,
        t: f64,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }

    /// True when the error, or the error it wraps, is a convergence failure.
    pub fn is_convergence_failure(&self) -> bool {
        match self {
            Error::QuadratureNotConverged { .. } => true,
            Error::GridPoint { source, .. } => source.is_convergence_failure(),
            _ => false,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
