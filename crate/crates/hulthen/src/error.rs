use num_complex::Complex64;
use thiserror::Error;

/// Errors produced anywhere in the scattering pipeline.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    /// Scattering states require E > m; anything at or below the mass gap is
    /// the bound-state regime, which is out of scope.
    #[error("sub-threshold energy: E = {energy} must exceed m = {mass}")]
    SubThresholdEnergy { energy: f64, mass: f64 },

    /// The potential has a cusp at the origin, so dV/dx is two-valued there.
    #[error("potential derivative is discontinuous at x = 0; request a one-sided limit instead")]
    DerivativeAtOrigin,

    /// The hypergeometric series has poles where gamma is zero or a negative
    /// integer.
    #[error("hypergeometric parameter gamma = {gamma} is at or near a series pole")]
    GammaPole { gamma: Complex64 },

    #[error(
        "hypergeometric series did not converge after {iterations} terms \
         (last |term| = {last_term:e})"
    )]
    SeriesDivergence { iterations: usize, last_term: f64 },

    #[error("series needs more than {limit} bits of working precision; argument too extreme")]
    PrecisionExhausted { limit: u32 },

    #[error("matching system is degenerate (condition estimate {condition:e})")]
    DegenerateMatching { condition: f64 },

    #[error("matching residual {residual:e} exceeds tolerance {tolerance:e}")]
    MatchingResidual { residual: f64, tolerance: f64 },

    /// R + T drifted away from 1 beyond what special-function accuracy allows;
    /// signals an internal failure rather than physics.
    #[error("unitarity violated: |R + T - 1| = {residual:e} exceeds {limit:e}")]
    UnitarityViolation { residual: f64, limit: f64 },

    #[error("integration exceeded {max_steps} steps near x = {x}")]
    StepLimitExceeded { max_steps: usize, x: f64 },

    #[error("integrator step size underflowed near x = {x} (h = {step:e})")]
    StepSizeUnderflow { x: f64, step: f64 },

    #[error("invalid sweep: {reason}")]
    InvalidSweep { reason: &'static str },
}

impl Error {
    /// Stable machine-readable identifier, used by the CLI error lines.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidParameter { .. } => "invalid-parameter",
            Error::SubThresholdEnergy { .. } => "sub-threshold-energy",
            Error::DerivativeAtOrigin => "derivative-at-origin",
            Error::GammaPole { .. } => "gamma-pole",
            Error::SeriesDivergence { .. } => "series-divergence",
            Error::PrecisionExhausted { .. } => "precision-exhausted",
            Error::DegenerateMatching { .. } => "degenerate-matching",
            Error::MatchingResidual { .. } => "matching-residual",
            Error::UnitarityViolation { .. } => "unitarity-violation",
            Error::StepLimitExceeded { .. } => "step-limit-exceeded",
            Error::StepSizeUnderflow { .. } => "step-size-underflow",
            Error::InvalidSweep { .. } => "invalid-sweep",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
