//! Error type shared by every module of the crate.

use thiserror::Error;

/// Everything that can be rejected at a public API boundary.
///
/// Numerical trouble (e.g. a quadrature that fails to converge) is *not* an
/// error: it is reported through result types so callers can inspect it.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid interval [{lo}, {hi}]: bounds must be finite with lo <= hi")]
    InvalidInterval { lo: f64, hi: f64 },

    #[error("invalid parameters x = {x}, a = {a}: both must be finite and > 0")]
    InvalidParams { x: f64, a: f64 },

    #[error("moment order {k} exceeds the supported maximum {max}")]
    MomentOrderTooLarge { k: u32, max: u32 },

    #[error("invalid quadrature spec: {0}")]
    InvalidQuadSpec(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid surface request: {0}")]
    InvalidSurface(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
