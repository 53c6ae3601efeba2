//! Error type shared by all solver stages.

use crate::ComplexScalar;

/// Errors produced by the special functions, the propagator, and the sweep
/// drivers.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// The log-Gamma argument sits on (or within `1e-12` of) a pole of Gamma,
    /// i.e. a non-positive integer.
    #[error("log_gamma pole: z = {0} is within 1e-12 of a non-positive integer")]
    GammaPole(ComplexScalar),

    /// The propagation state left the finite range and refinement retries were
    /// exhausted.
    #[error("non-finite propagation state at x = {x:.6} (step {step}) after {attempts} attempts")]
    NonFiniteState {
        x: f64,
        step: usize,
        attempts: usize,
    },

    /// The left asymptotic channel is evanescent, so there is no propagating
    /// incident wave and the reflection problem is degenerate.
    #[error("left channel evanescent at E = {0}: no propagating incident wave")]
    LeftChannelEvanescent(f64),

    /// The requested energy is too close to a regime threshold for the channel
    /// wavenumbers to be meaningful.
    #[error("E = {energy} is within {epsilon:e} of the regime threshold {threshold}")]
    NearThreshold {
        energy: f64,
        threshold: f64,
        epsilon: f64,
    },

    /// A configuration value violates a documented precondition.
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    /// The operation is only defined for the hyperbolic tangent potential.
    #[error("operation requires the hyperbolic tangent potential")]
    WrongPotential,

    /// More than the tolerated fraction of sweep points failed to solve.
    #[error("sweep failed: {failed} of {total} points errored (first: {first})")]
    SweepFailed {
        failed: usize,
        total: usize,
        first: String,
    },

    /// An I/O failure, carrying the offending path.
    #[error("i/o error on {path}: {message}")]
    Io { path: String, message: String },
}

/// Convenience alias used across the crate.
pub type Result<T> = std::result::Result<T, Error>;
