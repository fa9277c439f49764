//! Numerical substrate: real and complex error-function family plus
//! adaptive quadrature. Everything here is pure and reentrant; results are
//! deterministic for identical inputs.

mod erf;
mod faddeeva;
mod quad;

pub use erf::{erf as erf_real, erfi as erfi_real, erfi_scaled, ERFI_DOMAIN_LIMIT};
pub use faddeeva::erf_complex;
pub use quad::{
    integrate_adaptive, integrate_adaptive_opts, QuadratureOptions, QuadratureResult,
};

/// Errors from the numerical kernels.
#[derive(Debug, Clone, thiserror::Error)]
pub enum NumericsError {
    #[error("{what} {value} outside supported domain (|.| <= {limit})")]
    OverflowDomain { what: &'static str, value: f64, limit: f64 },
    #[error("quadrature error estimate {} above tolerance after {} panels",
            result.abs_error_estimate, result.panels_used)]
    ToleranceNotMet { result: QuadratureResult },
    #[error("{what} is not finite")]
    NonFinite { what: &'static str },
    #[error("invalid input: {0}")]
    InvalidInput(&'static str),
}
