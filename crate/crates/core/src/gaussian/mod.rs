//! Closed-form conditional statistics of photon-subtracted squeezed vacuum.
//!
//! Each heralded quantity is a signed sum over the four detector index pairs
//! `(i, j)`: `i = 1` keeps the full trace over the first tap, `i = 0`
//! subtracts its no-click projector. The lossless formulas are the
//! `T_L = 1, eta = 1, nu = 0` evaluation of the same code.

mod mixture;

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

pub use mixture::{
    GaussianComponent, PhasePoint, Point, QuadPhase, QuadraturePoint, SignedGaussianMixture,
};

use crate::config::{ExperimentConfig, Scheme};
use crate::error::{Error, Result};

/// Component denominators at or below this are treated as singular.
pub const DEGENERACY_FLOOR: f64 = 1e-14;

/// Order in which mixture components are stored.
pub const COMPONENT_ORDER: [(usize, usize); 4] = [(1, 1), (1, 0), (0, 1), (0, 0)];

/// Effective tap weights `gamma'` entering the component coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum GammaTable {
    /// Indexed `[i][j]`.
    SingleMode([[f64; 2]; 2]),
    /// Indexed `[i]`.
    TwoMode([f64; 2]),
}

impl GammaTable {
    pub fn single_mode(&self, i: usize, j: usize) -> Option<f64> {
        match self {
            GammaTable::SingleMode(g) => Some(g[i][j]),
            GammaTable::TwoMode(_) => None,
        }
    }

    pub fn two_mode(&self, i: usize) -> Option<f64> {
        match self {
            GammaTable::TwoMode(g) => Some(g[i]),
            GammaTable::SingleMode(_) => None,
        }
    }
}

pub fn gamma_table(config: &ExperimentConfig) -> GammaTable {
    let tapped = config.setup.path_transmittance() * config.setup.tap_reflectance();
    let eta = config.detector.efficiency();
    match config.scheme {
        Scheme::SingleMode => {
            let half = (2.0 - eta) * tapped / 2.0;
            GammaTable::SingleMode([[(1.0 - eta) * tapped, half], [half, tapped]])
        }
        Scheme::TwoMode => GammaTable::TwoMode([(1.0 - eta) * tapped, tapped]),
    }
}

/// Signed heralding weight `(-1)^(i+j) exp(-(2-i-j) nu)` of component `(i, j)`.
pub fn component_weight(i: usize, j: usize, dark_mean: f64) -> f64 {
    let sign = if (i + j) % 2 == 0 { 1.0 } else { -1.0 };
    sign * (-((2 - i - j) as f64) * dark_mean).exp()
}

// Per-component scalars shared by every closed form.
#[derive(Clone, Copy, Debug)]
struct Term {
    index: (usize, usize),
    weight: f64,
    /// ln of the component mass relative to the heralding event.
    log_mass: f64,
    /// Inverse-variance numerator E.
    e: f64,
    /// Variance numerator D at phase 0.
    d: f64,
    /// Anti-squeezed Wigner denominator F (single-mode scheme only).
    f: f64,
    /// Transmitted fraction T_L T.
    u: f64,
    /// Heralding-weighted sum T_L T + R_L + gamma'.
    s: f64,
}

impl Term {
    fn mass(&self) -> f64 {
        self.log_mass.exp()
    }
}

fn terms(config: &ExperimentConfig) -> [Term; 4] {
    let lam = config.lambda();
    let lam2 = lam * lam;
    let u = config.setup.path_transmittance() * config.setup.tap_transmittance();
    let rl = config.setup.path_loss();
    let nu = config.detector.dark_mean();
    let gamma = gamma_table(config);
    COMPONENT_ORDER.map(|(i, j)| {
        let weight = component_weight(i, j, nu);
        match gamma {
            GammaTable::SingleMode(g) => {
                let c = rl + g[i][j];
                let s = u + c;
                Term {
                    index: (i, j),
                    weight,
                    log_mass: 0.5 * ((-lam2).ln_1p() - (-lam2 * s * s).ln_1p()),
                    e: (1.0 - lam * s) * (1.0 + lam * s),
                    d: (1.0 - lam * u - lam * c) * (1.0 - lam * u + lam * c),
                    f: (1.0 - lam * (u - c)) * (1.0 + lam * (u - c)),
                    u,
                    s,
                }
            }
            GammaTable::TwoMode(g) => {
                let (ci, cj) = (rl + g[i], rl + g[j]);
                let ss = (u + ci) * (u + cj);
                Term {
                    index: (i, j),
                    weight,
                    log_mass: (-lam2).ln_1p() - (-lam2 * ss).ln_1p(),
                    e: 1.0 - lam2 * ss,
                    d: (1.0 - lam * u).powi(2) - lam2 * ci * cj,
                    f: f64::NAN,
                    u,
                    s: ss.sqrt(),
                }
            }
        }
    })
}

// Sum of weighted masses, written as sum(w) + sum(w (m - 1)) so that the
// O(1) parts cancel exactly.
fn weighted_mass(terms: &[Term; 4], dark_mean: f64) -> f64 {
    let base = (-dark_mean).exp_m1().powi(2);
    base + terms
        .iter()
        .map(|t| t.weight * t.log_mass.exp_m1())
        .sum::<f64>()
}

/// `(index, E, D)` of each component at phase 0, in [`COMPONENT_ORDER`].
pub(crate) fn component_coefficients(config: &ExperimentConfig) -> [((usize, usize), f64, f64); 4] {
    terms(config).map(|t| (t.index, t.e, t.d))
}

/// Probability that both on-off detectors click.
pub fn detection_probability(config: &ExperimentConfig) -> f64 {
    weighted_mass(&terms(config), config.detector.dark_mean()).clamp(0.0, 1.0)
}

fn mixture_from(components: [GaussianComponent; 4]) -> Result<SignedGaussianMixture> {
    let mixture = SignedGaussianMixture::self_normalized(components);
    if mixture.normalization() <= 0.0 || !mixture.normalization().is_finite() {
        return Err(Error::DegenerateConditioning);
    }
    Ok(mixture)
}

fn conditioned_terms(config: &ExperimentConfig) -> Result<[Term; 4]> {
    let terms = terms(config);
    let p = weighted_mass(&terms, config.detector.dark_mean());
    if p <= 0.0 || !p.is_finite() {
        return Err(Error::DegenerateConditioning);
    }
    for t in &terms {
        if t.d <= DEGENERACY_FLOOR || t.e <= DEGENERACY_FLOOR {
            return Err(Error::NumericallyDegenerate(format!(
                "component {:?} has D = {:e}, E = {:e}",
                t.index, t.d, t.e
            )));
        }
    }
    Ok(terms)
}

/// Conditional homodyne density at local-oscillator phase `phase`
/// (single-mode scheme), or the Bell-measurement density in `(x, p)`
/// (two-mode scheme, where the phase is irrelevant).
pub fn homodyne_mixture(
    config: &ExperimentConfig,
    phase: impl Into<QuadPhase>,
) -> Result<SignedGaussianMixture> {
    let phase = phase.into().radians();
    let lam = config.lambda();
    let norm = 1.0 - lam * lam;
    let terms = conditioned_terms(config)?;
    let components = terms.map(|t| {
        let index = (t.index.0 as u8, t.index.1 as u8);
        match config.scheme {
            Scheme::SingleMode => {
                let d_phi = t.d + 4.0 * lam * t.u * phase.sin().powi(2);
                GaussianComponent {
                    index,
                    weight: t.weight,
                    amplitude: (norm / d_phi).sqrt() / PI.sqrt(),
                    coeff_x: t.e / d_phi,
                    coeff_p: None,
                }
            }
            Scheme::TwoMode => {
                let coeff = t.e / (2.0 * t.d);
                GaussianComponent {
                    index,
                    weight: t.weight,
                    amplitude: norm / (2.0 * PI * t.d),
                    coeff_x: coeff,
                    coeff_p: Some(coeff),
                }
            }
        }
    });
    mixture_from(components)
}

/// Evaluates a mixture at a quadrature value or phase-space point.
pub fn pdf_at(mixture: &SignedGaussianMixture, point: impl Into<Point>) -> f64 {
    mixture.pdf_at(point)
}

/// Variance of the conditional quadrature distribution. For the two-mode
/// scheme this is the per-axis variance of the Bell-measurement variables.
pub fn variance(config: &ExperimentConfig, phase: impl Into<QuadPhase>) -> Result<f64> {
    Ok(homodyne_mixture(config, phase)?.variance_x())
}

/// Wigner function of the conditional single-mode state as a signed
/// two-dimensional mixture.
pub fn wigner_mixture(config: &ExperimentConfig) -> Result<SignedGaussianMixture> {
    config.require_scheme(Scheme::SingleMode)?;
    let lam = config.lambda();
    let norm = 1.0 - lam * lam;
    let terms = conditioned_terms(config)?;
    for t in &terms {
        if t.f <= DEGENERACY_FLOOR {
            return Err(Error::NumericallyDegenerate(format!(
                "component {:?} has F = {:e}",
                t.index, t.f
            )));
        }
    }
    let components = terms.map(|t| GaussianComponent {
        index: (t.index.0 as u8, t.index.1 as u8),
        weight: t.weight,
        amplitude: (norm / t.f).sqrt() / PI,
        coeff_x: t.e / t.d,
        coeff_p: Some(t.d / t.f),
    });
    mixture_from(components)
}

pub fn wigner_single(config: &ExperimentConfig, x: f64, p: f64) -> Result<f64> {
    Ok(wigner_mixture(config)?.value(x, p))
}

/// Mean photon number of the conditional single-mode state, lossless setup
/// with perfect detectors only.
pub fn mean_photon_single_ideal(config: &ExperimentConfig) -> Result<f64> {
    config.require_scheme(Scheme::SingleMode)?;
    if !config.is_ideal() {
        return Err(Error::NotIdeal);
    }
    let lam = config.lambda();
    let terms = conditioned_terms(config)?;
    let t_tap = config.setup.tap_transmittance();
    let sum: f64 = terms
        .iter()
        .map(|t| t.weight * t.mass() * t.s / t.e)
        .sum();
    let p: f64 = terms.iter().map(|t| t.weight * t.mass()).sum();
    Ok(lam * lam * t_tap * sum / p)
}

/// Mean photon number of the conditional single-mode state for any setup,
/// `(<x^2> + <p^2> - 1) / 2` from the two homodyne mixtures.
pub fn mean_photon_single(config: &ExperimentConfig) -> Result<f64> {
    config.require_scheme(Scheme::SingleMode)?;
    let vx = variance(config, 0.0)?;
    let vp = variance(config, std::f64::consts::FRAC_PI_2)?;
    Ok(0.5 * (vx + vp - 1.0))
}

/// Vacuum quadrature variance in the units of each scheme: `1/2` for a
/// single quadrature, `1` for the Bell variables `x_A - x_B`, `p_A + p_B`.
pub fn shot_noise(scheme: Scheme) -> f64 {
    match scheme {
        Scheme::SingleMode => 0.5,
        Scheme::TwoMode => 1.0,
    }
}

/// Squeezed-quadrature variance of the unsubtracted input after a path
/// transmittance `path_transmittance` (pass `1.0` for the pure state).
pub fn reference_variance(lambda: f64, scheme: Scheme, path_transmittance: f64) -> f64 {
    let pure = (1.0 - lambda) / (2.0 * (1.0 + lambda));
    let single = path_transmittance * pure + (1.0 - path_transmittance) / 2.0;
    match scheme {
        Scheme::SingleMode => single,
        Scheme::TwoMode => 2.0 * single,
    }
}

/// Reference variance for the same squeezing and path loss as `config`,
/// without taps or detectors.
pub fn reference_variance_for(config: &ExperimentConfig) -> f64 {
    reference_variance(
        config.lambda(),
        config.scheme,
        config.setup.path_transmittance(),
    )
}

/// Reference variance of `x_phi`. The Bell variables of the two-mode scheme
/// do not depend on the phase.
pub fn reference_variance_at(config: &ExperimentConfig, phase: impl Into<QuadPhase>) -> f64 {
    if config.scheme == Scheme::TwoMode {
        return reference_variance_for(config);
    }
    let phi = phase.into().radians();
    let lam = config.lambda();
    let t_l = config.setup.path_transmittance();
    let pure = 0.5 * ((1.0 - lam) / (1.0 + lam) * phi.cos().powi(2) + (1.0 + lam) / (1.0 - lam) * phi.sin().powi(2));
    t_l * pure + (1.0 - t_l) / 2.0
}

/// Quadrature density of the unsubtracted reference state (single quadrature
/// for the single-mode scheme, one Bell variable for the two-mode scheme).
pub fn reference_pdf(config: &ExperimentConfig, x: f64) -> f64 {
    let v = reference_variance_for(config);
    (-x * x / (2.0 * v)).exp() / (2.0 * PI * v).sqrt()
}

/// Squeezing below the scheme's shot noise in dB, `-10 log10(V / V_vac)`.
pub fn gain_db(variance: f64, scheme: Scheme) -> f64 {
    // + 0.0 turns -0 into 0
    -10.0 * (variance / shot_noise(scheme)).log10() + 0.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::ExperimentConfig;

    const LAMBDAS: [f64; 6] = [0.05, 0.1, 0.3, 0.4, 0.5, 0.8];

    fn ideal(lambda: f64, scheme: Scheme) -> ExperimentConfig {
        ExperimentConfig::ideal(lambda, 0.9, scheme).unwrap()
    }

    fn practical(lambda: f64, scheme: Scheme) -> ExperimentConfig {
        ExperimentConfig::practical_defaults(lambda, scheme).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn gamma_tables() {
        let g = gamma_table(&ideal(0.4, Scheme::SingleMode));
        for (i, j, want) in [(1, 1, 0.1), (1, 0, 0.05), (0, 1, 0.05), (0, 0, 0.0)] {
            assert!((g.single_mode(i, j).unwrap() - want).abs() < 1e-15);
        }
        let cfg = ExperimentConfig::practical(0.4, 0.9, 0.75, 0.6, 0.0, Scheme::SingleMode).unwrap();
        let g = gamma_table(&cfg);
        assert!((g.single_mode(1, 1).unwrap() - 0.075).abs() < 1e-15);
        assert!((g.single_mode(1, 0).unwrap() - 0.0525).abs() < 1e-15);
        assert!((g.single_mode(0, 0).unwrap() - 0.03).abs() < 1e-15);
        let g = gamma_table(&cfg.with_scheme(Scheme::TwoMode));
        assert!((g.two_mode(0).unwrap() - 0.03).abs() < 1e-15);
        assert!((g.two_mode(1).unwrap() - 0.075).abs() < 1e-15);
        assert_eq!(g.single_mode(0, 0), None);
    }

    #[test]
    fn weights() {
        assert_eq!(
            COMPONENT_ORDER.map(|(i, j)| component_weight(i, j, 0.0)),
            [1.0, -1.0, -1.0, 1.0]
        );
        let nu: f64 = 1e-3;
        assert!((component_weight(0, 0, nu) - (-2.0 * nu).exp()).abs() < 1e-16);
        assert!((component_weight(0, 1, nu) + (-nu).exp()).abs() < 1e-16);
    }

    #[test]
    fn detection_probability_matches_lossless_closed_forms() {
        let t: f64 = 0.9;
        for &lam in &LAMBDAS {
            let l2 = lam * lam;
            let single = 1.0 - 2.0 * ((1.0 - l2) / (1.0 - l2 * ((1.0 + t) / 2.0).powi(2))).sqrt()
                + ((1.0 - l2) / (1.0 - l2 * t * t)).sqrt();
            assert!(rel(detection_probability(&ideal(lam, Scheme::SingleMode)), single) < 1e-9);
            let two = l2 * (1.0 - t).powi(2) * (1.0 + l2 * t) / ((1.0 - l2 * t) * (1.0 - l2 * t * t));
            assert!(rel(detection_probability(&ideal(lam, Scheme::TwoMode)), two) < 1e-12);
        }
    }

    #[test]
    fn detection_probability_practical_closed_forms() {
        let (t, tl, eta, nu): (f64, f64, f64, f64) = (0.9, 0.75, 0.6, 1e-3);
        let (r, rl) = (1.0 - t, 1.0 - tl);
        for &lam in &LAMBDAS {
            let l2 = lam * lam;
            let a = ((1.0 - l2) / (1.0 - l2 * (tl * t + rl + (2.0 - eta) / 2.0 * tl * r).powi(2))).sqrt();
            let b = ((1.0 - l2) / (1.0 - l2 * (tl * t + rl + (1.0 - eta) * tl * r).powi(2))).sqrt();
            let single = 1.0 - 2.0 * (-nu).exp() * a + (-2.0 * nu).exp() * b;
            assert!(rel(detection_probability(&practical(lam, Scheme::SingleMode)), single) < 1e-9);
            let q = 1.0 - eta * tl * r;
            let two = 1.0 - 2.0 * (-nu).exp() * (1.0 - l2) / (1.0 - l2 * q)
                + (-2.0 * nu).exp() * (1.0 - l2) / (1.0 - l2 * q * q);
            assert!(rel(detection_probability(&practical(lam, Scheme::TwoMode)), two) < 1e-9);
        }
    }

    #[test]
    fn detection_probability_edge_cases() {
        assert_eq!(detection_probability(&ideal(0.0, Scheme::SingleMode)), 0.0);
        let nu: f64 = 1e-3;
        for eta in [0.3, 1.0] {
            let cfg = ExperimentConfig::practical(0.0, 0.9, 0.6, eta, nu, Scheme::SingleMode).unwrap();
            let want = (1.0 - (-nu).exp()).powi(2);
            assert!(rel(detection_probability(&cfg), want) < 1e-12);
            assert!((detection_probability(&cfg) - 9.995e-7).abs() < 1e-9);
        }
        assert!((detection_probability(&ideal(0.4, Scheme::SingleMode)) - 7.0e-4).abs() < 5e-6);
        assert!((detection_probability(&ideal(0.4, Scheme::TwoMode)) - 2.46e-3).abs() < 5e-6);
    }

    #[test]
    fn degenerate_ideal_vacuum() {
        let cfg = ideal(0.0, Scheme::SingleMode);
        assert_eq!(homodyne_mixture(&cfg, 0.0), Err(Error::DegenerateConditioning));
        assert_eq!(variance(&cfg, 0.0), Err(Error::DegenerateConditioning));
        assert_eq!(wigner_single(&cfg, 0.0, 0.0), Err(Error::DegenerateConditioning));
    }

    #[test]
    fn dark_count_conditioning_leaves_vacuum() {
        let cfg = practical(0.0, Scheme::SingleMode);
        for phase in [0.0, 0.7, 2.0] {
            let m = homodyne_mixture(&cfg, phase).unwrap();
            for x in [-2.0, -0.5, 0.0, 1.3] {
                let vac = (-x * x as f64).exp() / PI.sqrt();
                assert!((m.pdf_at(x) - vac).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn ideal_limit_of_practical_formulas() {
        // A practical configuration with no imperfections must be bit-for-bit
        // the ideal one.
        for &lam in &LAMBDAS {
            for scheme in [Scheme::SingleMode, Scheme::TwoMode] {
                let a = ideal(lam, scheme);
                let b = ExperimentConfig::practical(lam, 0.9, 1.0, 1.0, 0.0, scheme).unwrap();
                assert_eq!(detection_probability(&a), detection_probability(&b));
                assert_eq!(variance(&a, 0.0), variance(&b, 0.0));
            }
        }
    }

    #[test]
    fn lossless_variance_matches_printed_closed_forms() {
        let t: f64 = 0.9;
        let r = 1.0 - t;
        for &lam in &LAMBDAS {
            let l2 = lam * lam;
            let p = detection_probability(&ideal(lam, Scheme::SingleMode));
            let gammas = [(1.0, r), (-1.0, r / 2.0), (-1.0, r / 2.0), (1.0, 0.0)];
            let v: f64 = gammas
                .iter()
                .map(|&(w, g)| {
                    w * (1.0 - l2).sqrt() / (2.0 * p) * ((1.0 - lam * t).powi(2) - l2 * g * g)
                        / (1.0 - l2 * (t + g).powi(2)).powf(1.5)
                })
                .sum();
            assert!(rel(variance(&ideal(lam, Scheme::SingleMode), 0.0).unwrap(), v) < 1e-9);

            let p2 = detection_probability(&ideal(lam, Scheme::TwoMode));
            let g2 = [0.0, r];
            let mut v2 = 0.0;
            for (i, j) in COMPONENT_ORDER {
                let (gi, gj) = (g2[i], g2[j]);
                let w = component_weight(i, j, 0.0);
                v2 += w * (1.0 - l2) * ((1.0 - lam * t).powi(2) - l2 * gi * gj)
                    / (p2 * (1.0 - l2 * (t + gi) * (t + gj)).powi(2));
            }
            assert!(rel(variance(&ideal(lam, Scheme::TwoMode), 0.0).unwrap(), v2) < 1e-9);
        }
    }

    #[test]
    fn mass_identity() {
        for &lam in &LAMBDAS {
            for scheme in [Scheme::SingleMode, Scheme::TwoMode] {
                for cfg in [ideal(lam, scheme), practical(lam, scheme)] {
                    for phase in [0.0, 0.4, 1.5] {
                        let m = homodyne_mixture(&cfg, phase).unwrap();
                        assert!((m.total_mass() - 1.0).abs() < 1e-12, "{cfg:?}");
                    }
                    if scheme == Scheme::SingleMode {
                        assert!((wigner_mixture(&cfg).unwrap().total_mass() - 1.0).abs() < 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn unit_transmittance_limit() {
        // two-photon subtraction on both inputs as R -> 0, values at lambda = 0.5
        for (scheme, want) in [(Scheme::SingleMode, 1.0 / 6.0), (Scheme::TwoMode, 0.2)] {
            let err = |t: f64| {
                let cfg = ExperimentConfig::ideal(0.5, t, scheme).unwrap();
                (variance(&cfg, 0.0).unwrap() - want).abs()
            };
            let (coarse, fine) = (err(0.99), err(0.999));
            assert!(fine < 0.2 * coarse && fine < 1e-2, "{coarse} {fine}");
        }
        assert!((reference_variance(0.5, Scheme::SingleMode, 1.0) - 1.0 / 6.0).abs() < 1e-15);
    }

    #[test]
    fn reference_variance_values() {
        assert_eq!(reference_variance(0.0, Scheme::SingleMode, 1.0), 0.5);
        assert!((reference_variance(0.5, Scheme::SingleMode, 0.75) - 0.25).abs() < 1e-15);
        for lam in [0.0, 0.3, 0.9] {
            for tl in [1.0, 0.75] {
                assert_eq!(
                    reference_variance(lam, Scheme::TwoMode, tl),
                    2.0 * reference_variance(lam, Scheme::SingleMode, tl)
                );
            }
        }
    }

    #[test]
    fn wigner_p_marginal_is_homodyne_density() {
        for cfg in [ideal(0.4, Scheme::SingleMode), practical(0.4, Scheme::SingleMode)] {
            let w = wigner_mixture(&cfg).unwrap().marginal_x();
            let h = homodyne_mixture(&cfg, 0.0).unwrap();
            for k in 0..41 {
                let x = -4.0 + 0.2 * k as f64;
                assert!((w.value(x, 0.0) - h.value(x, 0.0)).abs() < 1e-12);
            }
            // p marginal is the homodyne density at phase pi/2
            let wp = wigner_mixture(&cfg).unwrap();
            let hp = homodyne_mixture(&cfg, std::f64::consts::FRAC_PI_2).unwrap();
            let (a, b) = (wp.variance_p().unwrap(), hp.variance_x());
            assert!((a / b - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn mean_photon_from_moments() {
        for &lam in &LAMBDAS {
            let cfg = ideal(lam, Scheme::SingleMode);
            let a = mean_photon_single(&cfg).unwrap();
            let b = mean_photon_single_ideal(&cfg).unwrap();
            assert!((a - b).abs() < 1e-9 * b.max(1.0), "{lam} {a} {b}");
        }
        assert!(mean_photon_single(&practical(0.4, Scheme::SingleMode)).unwrap() > 0.0);
        assert!(mean_photon_single(&ideal(0.4, Scheme::TwoMode)).is_err());
    }

    #[test]
    fn reference_variance_phase() {
        let cfg = practical(0.5, Scheme::SingleMode);
        assert_eq!(reference_variance_at(&cfg, 0.0), reference_variance_for(&cfg));
        let anti = reference_variance_at(&cfg, std::f64::consts::FRAC_PI_2);
        assert!((anti - (0.75 * 1.5 + 0.125)).abs() < 1e-15);
    }

    #[test]
    fn mean_photon_exceeds_input() {
        let n = mean_photon_single_ideal(&ideal(0.4, Scheme::SingleMode)).unwrap();
        assert!(n > 0.4f64.powi(2) / (1.0 - 0.16));
        assert_eq!(
            mean_photon_single_ideal(&practical(0.4, Scheme::SingleMode)),
            Err(Error::NotIdeal)
        );
        assert_eq!(
            mean_photon_single_ideal(&ideal(0.4, Scheme::TwoMode)),
            Err(Error::WrongScheme { expected: Scheme::SingleMode })
        );
        // small-lambda limit is finite and smooth
        let a = mean_photon_single_ideal(&ideal(1e-3, Scheme::SingleMode)).unwrap();
        let b = mean_photon_single_ideal(&ideal(1e-4, Scheme::SingleMode)).unwrap();
        assert!(a.is_finite() && b.is_finite());
        assert!((a - b).abs() < 1e-5, "{a} {b}");
    }
}
