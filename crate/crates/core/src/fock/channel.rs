use std::f64::consts::SQRT_2;

use super::basis::FockCutoff;
use super::experiment::conditional_state;
use super::measure::BellDensity;
use crate::config::{ExperimentConfig, Scheme};
use crate::dense_coding::{ChannelMatrix, SignalAlphabet};
use crate::error::Result;

/// Integration domain and refinement target for quadrant probabilities.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureSpec {
    /// Bell variables are integrated over `[-half_width, half_width]`.
    pub half_width: f64,
    /// Panel doubling stops once successive estimates differ by less.
    pub tolerance: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            half_width: 12.0,
            tolerance: 1e-8,
        }
    }
}

/// Row sums of an oracle channel matrix may miss 1 by the truncated tails.
pub const ORACLE_ROW_TOLERANCE: f64 = 1e-6;

/// Channel matrix from quadrant integrals of the Fock-space Bell density.
pub fn channel_matrix_oracle(
    config: &ExperimentConfig,
    alphabet: &SignalAlphabet,
    cutoff: &FockCutoff,
    spec: &QuadratureSpec,
) -> Result<ChannelMatrix> {
    config.require_scheme(Scheme::TwoMode)?;
    let cond = conditional_state(config, cutoff)?;
    let bell = BellDensity::new(&cond.rho)?;
    let w = spec.half_width;
    let shift = SQRT_2 * alphabet.alpha();
    // received = symbol + noise; decision bit 0 means received >= 0
    let interval = |sent: usize, decided: usize| {
        let s = if sent == 0 { shift } else { -shift };
        if decided == 0 {
            (-s, w)
        } else {
            (-w, -s)
        }
    };
    let mut entries = [[0.0; 4]; 4];
    for (row, out) in entries.iter_mut().enumerate() {
        let (k, l) = (row / 2, row % 2);
        for (col, v) in out.iter_mut().enumerate() {
            let (m, n) = (col / 2, col % 2);
            *v = bell
                .rectangle_probability(interval(k, m), interval(l, n), spec.tolerance * 1e-2)
                .clamp(0.0, 1.0);
        }
    }
    ChannelMatrix::with_tolerance(entries, ORACLE_ROW_TOLERANCE)
}
