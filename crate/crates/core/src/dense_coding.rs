//! QPSK dense coding over the conditional two-mode state.
//!
//! Alice displaces her mode by one of four symbols `(x_s, p_s) = ((-1)^k,
//! (-1)^l) * sqrt(2) alpha`; Bob performs the Bell measurement and decides
//! `b_mn` from the signs of the outcome (`m = 0` for `x >= 0`, `n = 0` for
//! `p >= 0`). Rows and columns are indexed `2k + l` and `2m + n`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::{ExperimentConfig, Scheme};
use crate::error::{Error, Result};
use crate::gaussian;
use crate::sweep::SweepResult;

pub use crate::special::erf;

const STOCHASTIC_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SignalAlphabet {
    alpha: f64,
    priors: [f64; 4],
}

impl SignalAlphabet {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(alpha.is_finite() && alpha >= 0.0) {
            return Err(Error::InvalidParameter {
                name: "alpha",
                value: alpha,
                reason: "must be finite and non-negative",
            });
        }
        Ok(Self {
            alpha,
            priors: [0.25; 4],
        })
    }

    pub fn with_priors(self, priors: [f64; 4]) -> Result<Self> {
        check_distribution(&priors, "priors")?;
        Ok(Self { priors, ..self })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn priors(&self) -> [f64; 4] {
        self.priors
    }

    /// Displacement `(x_s, p_s)` of symbol `a_kl`.
    pub fn symbol(&self, k: usize, l: usize) -> (f64, f64) {
        let a = std::f64::consts::SQRT_2 * self.alpha;
        (sign(k) * a, sign(l) * a)
    }

    /// All symbols in row order `a_00, a_01, a_10, a_11`.
    pub fn symbols(&self) -> [(f64, f64); 4] {
        [0, 1, 2, 3].map(|r| self.symbol(r / 2, r % 2))
    }
}

fn sign(bit: usize) -> f64 {
    if bit % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

fn check_distribution(p: &[f64], what: &str) -> Result<()> {
    if p.iter().any(|&v| !(-STOCHASTIC_TOL..=1.0 + STOCHASTIC_TOL).contains(&v)) {
        return Err(Error::InvalidDistribution(format!("{what} {p:?} outside [0, 1]")));
    }
    let sum: f64 = p.iter().sum();
    if (sum - 1.0).abs() > STOCHASTIC_TOL {
        return Err(Error::InvalidDistribution(format!("{what} sum to {sum}")));
    }
    Ok(())
}

/// Row-stochastic `P(b_mn | a_kl)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChannelMatrix {
    entries: [[f64; 4]; 4],
}

impl ChannelMatrix {
    pub fn new(entries: [[f64; 4]; 4]) -> Result<Self> {
        Self::with_tolerance(entries, STOCHASTIC_TOL)
    }

    /// Accepts rows whose sums miss 1 by at most `tol`.
    pub fn with_tolerance(entries: [[f64; 4]; 4], tol: f64) -> Result<Self> {
        for (k, row) in entries.iter().enumerate() {
            let sum: f64 = row.iter().sum();
            if row.iter().any(|v| !(0.0..=1.0).contains(v)) || (sum - 1.0).abs() > tol {
                return Err(Error::InvalidDistribution(format!("row {k} {row:?} sums to {sum}")));
            }
        }
        Ok(Self { entries })
    }

    pub fn identity() -> Self {
        let mut e = [[0.0; 4]; 4];
        for (k, row) in e.iter_mut().enumerate() {
            row[k] = 1.0;
        }
        Self { entries: e }
    }

    pub fn uniform() -> Self {
        Self {
            entries: [[0.25; 4]; 4],
        }
    }

    pub fn entries(&self) -> &[[f64; 4]; 4] {
        &self.entries
    }

    /// `P(b_mn | a_kl)` with row `2k + l`, column `2m + n`.
    pub fn get(&self, sent: usize, decided: usize) -> f64 {
        self.entries[sent][decided]
    }

    /// Channel followed by a further row-stochastic `confusion` on the output.
    pub fn then(&self, confusion: &ChannelMatrix) -> ChannelMatrix {
        let mut e = [[0.0; 4]; 4];
        for (i, row) in e.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = (0..4).map(|k| self.entries[i][k] * confusion.entries[k][j]).sum();
            }
        }
        Self { entries: e }
    }

    pub fn max_abs_diff(&self, other: &ChannelMatrix) -> f64 {
        self.entries
            .iter()
            .flatten()
            .zip(other.entries.iter().flatten())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// `Omega'_ij`: inverse per-axis standard deviation of component `(i, j)`,
/// so that the component's quadrant probability is `(1 + erf(alpha Omega)) / 2`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OmegaTable([[f64; 2]; 2]);

impl OmegaTable {
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.0[i][j]
    }
}

/// Equals `sqrt(E_ij / D_ij)` of the two-mode closed forms.
pub fn omega_table(config: &ExperimentConfig) -> Result<OmegaTable> {
    config.require_scheme(Scheme::TwoMode)?;
    let mut t = [[0.0; 2]; 2];
    for ((i, j), e, d) in gaussian::component_coefficients(config) {
        t[i][j] = (e / d).sqrt();
    }
    Ok(OmegaTable(t))
}

// Probability that Gaussian noise of inverse std `omega` keeps the received
// value in the decision half-line with bit `decided`, given sent bit `sent`.
fn half_line(alpha: f64, omega: f64, sent: usize, decided: usize) -> f64 {
    0.5 * (1.0 + sign(sent + decided) * erf(alpha * omega))
}

fn matrix_from_components(alpha: f64, components: &[(f64, f64)]) -> ChannelMatrix {
    let mut e = [[0.0; 4]; 4];
    for (row, entries) in e.iter_mut().enumerate() {
        let (k, l) = (row / 2, row % 2);
        for (col, v) in entries.iter_mut().enumerate() {
            let (m, n) = (col / 2, col % 2);
            *v = components
                .iter()
                .map(|&(w, om)| w * half_line(alpha, om, k, m) * half_line(alpha, om, l, n))
                .sum::<f64>()
                .clamp(0.0, 1.0);
        }
        // exact rows sum to one; this removes the rounding of the signed sum
        let total: f64 = entries.iter().sum();
        entries.iter_mut().for_each(|v| *v /= total);
    }
    ChannelMatrix { entries: e }
}

/// Channel of the conditional two-mode state: quadrant integrals of the
/// signed Bell-measurement mixture.
pub fn channel_matrix(config: &ExperimentConfig, alphabet: &SignalAlphabet) -> Result<ChannelMatrix> {
    config.require_scheme(Scheme::TwoMode)?;
    let mixture = gaussian::homodyne_mixture(config, 0.0)?;
    let p = mixture.normalization();
    let comps: Vec<(f64, f64)> = mixture
        .components()
        .iter()
        .map(|c| (c.weight * c.mass() / p, (2.0 * c.coeff_x).sqrt()))
        .collect();
    Ok(matrix_from_components(alphabet.alpha(), &comps))
}

/// Channel of the unsubtracted two-mode squeezed vacuum after the template's
/// path loss.
pub fn reference_channel_matrix(config: &ExperimentConfig, alphabet: &SignalAlphabet) -> ChannelMatrix {
    let v = gaussian::reference_variance(config.lambda(), Scheme::TwoMode, config.setup.path_transmittance());
    matrix_from_components(alphabet.alpha(), &[(1.0, v.sqrt().recip())])
}

/// `I(A; B)` in bits.
pub fn mutual_information(matrix: &ChannelMatrix, priors: &[f64; 4]) -> Result<f64> {
    check_distribution(priors, "priors")?;
    for (k, row) in matrix.entries.iter().enumerate() {
        check_distribution(row, &format!("row {k}"))?;
    }
    let mut output = [0.0; 4];
    for (a, row) in matrix.entries.iter().enumerate() {
        for (b, &pba) in row.iter().enumerate() {
            output[b] += priors[a] * pba;
        }
    }
    let mut info = 0.0;
    for (a, row) in matrix.entries.iter().enumerate() {
        for (b, &pba) in row.iter().enumerate() {
            if pba > 0.0 && priors[a] > 0.0 {
                info += priors[a] * pba * (pba / output[b]).log2();
            }
        }
    }
    Ok(info.clamp(0.0, 2.0))
}

/// Mutual information of the conditional state and of the reference.
pub fn mi_pair(config: &ExperimentConfig, alphabet: &SignalAlphabet) -> Result<(f64, f64)> {
    let ng = mutual_information(&channel_matrix(config, alphabet)?, &alphabet.priors())?;
    let reference = mutual_information(&reference_channel_matrix(config, alphabet), &alphabet.priors())?;
    Ok((ng, reference))
}

/// Mutual information over a `lambda` grid, with the reference curve and the
/// gain `value_ng - value_ref` in bits.
pub fn mi_scan(template: &ExperimentConfig, grid: &[f64], alphabet: &SignalAlphabet) -> Result<SweepResult> {
    template.require_scheme(Scheme::TwoMode)?;
    let pairs = grid
        .par_iter()
        .map(|&l| mi_pair(&template.with_lambda(l)?, alphabet))
        .collect::<Result<Vec<_>>>()?;
    let (ng, reference): (Vec<f64>, Vec<f64>) = pairs.into_iter().unzip();
    let gain = ng.iter().zip(&reference).map(|(a, b)| a - b).collect();
    SweepResult::new("lambda", grid.to_vec(), ng)?
        .with_reference(reference)?
        .with_derived("gain_bits", gain)
}
