use crate::config::DetectorModel;

use super::basis::FockCutoff;

/// POVM element diagonal in the number basis of one mode.
#[derive(Clone, Debug, PartialEq)]
pub struct DiagonalPOVM {
    weights: Vec<f64>,
}

impl DiagonalPOVM {
    pub fn new(weights: Vec<f64>) -> Self {
        assert!(weights.iter().all(|w| (0.0..=1.0).contains(w)));
        Self { weights }
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Weight on `|n><n|`.
    pub fn weight(&self, n: usize) -> f64 {
        self.weights[n]
    }
}

/// `(off, on)` elements of an on-off detector: `off_n = exp(-nu) (1 - eta)^n`.
pub fn on_off_povm(detector: &DetectorModel, cutoff: &FockCutoff) -> (DiagonalPOVM, DiagonalPOVM) {
    let (eta, nu) = (detector.efficiency(), detector.dark_mean());
    let mut off = Vec::with_capacity(cutoff.photon_limit() + 1);
    let mut on = Vec::with_capacity(cutoff.photon_limit() + 1);
    for n in 0..=cutoff.photon_limit() {
        let log_off = if n == 0 {
            -nu
        } else if eta == 1.0 {
            f64::NEG_INFINITY
        } else {
            -nu + n as f64 * (-eta).ln_1p()
        };
        off.push(log_off.exp());
        on.push(-log_off.exp_m1());
    }
    (DiagonalPOVM::new(off), DiagonalPOVM::new(on))
}
