//! Photon-subtracted squeezed vacuum: closed-form statistics, a truncated
//! Fock-space reference engine, and a QPSK dense-coding channel analyzer.
//!
//! Units: `hbar = 1`, vacuum quadrature variance `1/2`, squeezing given as
//! `lambda = tanh r`.

pub mod config;
pub mod crossover;
pub mod dense_coding;
pub mod error;
pub mod fock;
pub mod gaussian;
pub mod quadrature;
pub mod special;
pub mod sweep;

pub use config::{DetectorModel, ExperimentConfig, OpticalSetup, Scheme, SqueezingSpec};
pub use error::{Error, Result};

/// Version string recorded in serialized outputs.
pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");
