//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by the numerical kernels.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A parameter is outside the mathematical domain of the operation
    /// (e.g. `alpha <= 0`, `p` outside `(0, 2]`, division by a series with
    /// vanishing constant term).
    #[error("domain error: {0}")]
    Domain(String),

    /// A structurally invalid argument (wrong grid size, zero polynomial
    /// where a nonconstant one is required, ...).
    #[error("argument error: {0}")]
    Argument(String),

    /// The circle quadrature did not converge before the grid cap was hit.
    /// Carries the last two norm values so the caller can inspect the stall.
    #[error("norm quadrature did not converge at grid {grid_size}: last={last}, previous={prev}")]
    NormConvergence { last: f64, prev: f64, grid_size: usize },

    /// The extremal search produced no valid candidate.
    #[error("search failure: {0}")]
    SearchFailure(String),
}

pub type Result<T> = std::result::Result<T, Error>;
