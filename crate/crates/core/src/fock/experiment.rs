use std::collections::BTreeMap;
use std::f64::consts::FRAC_PI_4;

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use super::basis::{FockBasis, FockCutoff};
use super::density::DensityOperator;
use super::povm::on_off_povm;
use super::state::{beam_splitter, squeezed_vacuum_amplitudes, FockStateVector};
use crate::config::{ExperimentConfig, OpticalSetup, Scheme};
use crate::error::{Error, Result};

/// Heralding probabilities below this are treated as zero.
pub const MIN_PROBABILITY: f64 = 1e-30;

/// A normalized conditional state and the probability of its heralding event.
#[derive(Clone, Debug)]
pub struct Conditioned {
    pub rho: DensityOperator,
    pub probability: f64,
}

/// Runs the full network of `config` in the truncated space: squeezed
/// input(s), 50:50 split, path loss on both arms, tap and on-off detection on
/// both arms, and for the single-mode scheme the 50:50 recombination.
///
/// Returns the two-mode state `(A, B)`. For the two-mode scheme the arms are
/// left as they are; [`super::bell_pdf`] performs the recombination.
pub fn conditional_state(config: &ExperimentConfig, cutoff: &FockCutoff) -> Result<Conditioned> {
    let n = FockCutoff::new(cutoff.n_max(), config.lambda(), config.scheme)?.photon_limit();
    let lam = config.lambda();
    let squeezed = squeezed_vacuum_amplitudes(lam, n);
    let second = match config.scheme {
        Scheme::SingleMode => vec![C64::new(1.0, 0.0)],
        Scheme::TwoMode => squeezed_vacuum_amplitudes(-lam, n),
    };
    let input = FockStateVector::product(&[&squeezed, &second], n);
    let split = beam_splitter(&input, 0, 1, config.setup.split_angle())?;
    let mut rho = DensityOperator::from_pure(&split);

    let t_l = config.setup.path_transmittance();
    if t_l < 1.0 {
        let all = vec![1.0; n + 1];
        for mode in 0..2 {
            rho = rho.apply_lowering_channel(mode, t_l, &all)?;
        }
    }
    let (_, on) = on_off_povm(&config.detector, cutoff);
    for mode in 0..2 {
        rho = rho.apply_lowering_channel(mode, config.setup.tap_transmittance(), on.weights())?;
    }
    let probability = rho.trace();
    if !(probability >= MIN_PROBABILITY) {
        return Err(Error::DegenerateConditioning);
    }
    rho = rho.scaled(1.0 / probability);
    if config.scheme == Scheme::SingleMode {
        rho = rho.apply_beam_splitter(0, 1, -config.setup.split_angle())?;
    }
    Ok(Conditioned { rho, probability })
}

/// Conditional single-mode state of the sequential scheme: one tap of
/// transmittance `tap_transmittance` on the squeezed mode, the tapped light
/// split 50:50 onto two ideal on-off detectors, both required to fire.
pub fn dakna_conditional_state(lambda: f64, tap_transmittance: f64, cutoff: &FockCutoff) -> Result<Conditioned> {
    let n = FockCutoff::new(cutoff.n_max(), lambda, Scheme::SingleMode)?.photon_limit();
    let setup = OpticalSetup::lossless(tap_transmittance)?;
    let squeezed = squeezed_vacuum_amplitudes(lambda, n);
    let vac = [C64::new(1.0, 0.0)];
    // modes: 0 = signal, 1 and 2 = detector arms
    let input = FockStateVector::product(&[&squeezed, &vac, &vac], n);
    let tapped = beam_splitter(&input, 0, 1, setup.tap_angle())?;
    let psi = beam_splitter(&tapped, 1, 2, FRAC_PI_4)?;

    let basis = psi.basis();
    let mut branches: BTreeMap<(u16, u16), Vec<(usize, C64)>> = BTreeMap::new();
    for i in 0..basis.dim() {
        let occ = basis.occupation(i);
        if occ[1] >= 1 && occ[2] >= 1 {
            branches
                .entry((occ[1], occ[2]))
                .or_default()
                .push((occ[0] as usize, psi.amplitudes()[i]));
        }
    }
    let mut m = DMatrix::<C64>::zeros(n + 1, n + 1);
    for branch in branches.values() {
        for &(a, x) in branch {
            for &(b, y) in branch {
                m[(a, b)] += x * y.conj();
            }
        }
    }
    let rho = DensityOperator::new(FockBasis::new(1, n), m);
    let probability = rho.trace();
    if !(probability >= MIN_PROBABILITY) {
        return Err(Error::DegenerateConditioning);
    }
    Ok(Conditioned {
        rho: rho.scaled(1.0 / probability),
        probability,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::detection_probability;

    #[test]
    fn dark_counts_only_at_zero_squeezing() {
        let cfg = ExperimentConfig::practical_defaults(0.0, Scheme::SingleMode).unwrap();
        let c = conditional_state(&cfg, &FockCutoff::unchecked(4)).unwrap();
        let want = (1.0 - (-1e-3f64).exp()).powi(2);
        assert!((c.probability / want - 1.0).abs() < 1e-12);
        assert!((c.rho.matrix()[(0, 0)].re - 1.0).abs() < 1e-12);
        let ideal = ExperimentConfig::ideal(0.0, 0.9, Scheme::SingleMode).unwrap();
        assert!(matches!(
            conditional_state(&ideal, &FockCutoff::unchecked(4)),
            Err(Error::DegenerateConditioning)
        ));
        assert!(matches!(
            dakna_conditional_state(0.0, 0.9, &FockCutoff::unchecked(4)),
            Err(Error::DegenerateConditioning)
        ));
    }

    #[test]
    fn probability_near_closed_form() {
        let cfg = ExperimentConfig::ideal(0.3, 0.9, Scheme::TwoMode).unwrap();
        let cutoff = FockCutoff::automatic(0.3, Scheme::TwoMode);
        let c = conditional_state(&cfg, &cutoff).unwrap();
        assert!((c.probability / detection_probability(&cfg) - 1.0).abs() < 1e-8);
        assert!((c.rho.trace() - 1.0).abs() < 1e-12);
        let too_small = FockCutoff::unchecked(6);
        assert!(matches!(
            conditional_state(&cfg, &too_small),
            Err(Error::CutoffTooSmall { .. })
        ));
    }
}
