use thiserror::Error;

use crate::config::Scheme;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A physical or numerical parameter lies outside its admissible range.
    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    /// The heralding event has zero probability, so no conditional state exists.
    #[error("conditioning event has zero probability; no conditional state exists")]
    DegenerateConditioning,

    /// Some Gaussian component is too close to singular to evaluate reliably.
    #[error("numerically degenerate configuration: {0}")]
    NumericallyDegenerate(String),

    /// The requested closed form only exists for the lossless, perfect-detector setup.
    #[error("closed form is only available for the ideal setup (T_L = 1, eta = 1, nu = 0)")]
    NotIdeal,

    #[error("operation requires the {expected:?} scheme")]
    WrongScheme { expected: Scheme },

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    /// The truncated Fock space drops more probability mass than allowed.
    #[error("Fock cutoff n_max = {n_max} too small: neglected mass {neglected:e}")]
    CutoffTooSmall { n_max: usize, neglected: f64 },

    /// A sweep record whose grid or columns are inconsistent.
    #[error("invalid sweep: {0}")]
    InvalidSweep(String),

    #[error("invalid mode index {mode} for a {modes}-mode space")]
    InvalidMode { mode: usize, modes: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
