//! Physical parameterization of one photon-subtraction experiment.
//!
//! Every quantity in the crate is a function of an [`ExperimentConfig`]. The
//! lossless, perfect-detector setup is not a separate code path: it is the
//! point `T_L = 1, eta = 1, nu = 0` of the practical parameterization.

use std::f64::consts::FRAC_PI_4;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tap beam-splitter transmittance used throughout unless overridden.
pub const DEFAULT_TAP_TRANSMITTANCE: f64 = 0.9;
/// Path transmittance of the practical setup (25 % linear loss).
pub const PRACTICAL_PATH_TRANSMITTANCE: f64 = 0.75;
/// Detector quantum efficiency of the practical setup.
pub const PRACTICAL_EFFICIENCY: f64 = 0.6;
/// Mean dark counts per detection gate of the practical setup.
pub const PRACTICAL_DARK_MEAN: f64 = 1e-3;

fn check(name: &'static str, value: f64, ok: bool, reason: &'static str) -> Result<()> {
    if value.is_finite() && ok {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            reason,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scheme {
    /// One squeezed vacuum split on a 50:50 interferometer.
    SingleMode,
    /// Two oppositely squeezed vacua combined into a two-mode squeezed state.
    TwoMode,
}

/// Squeezing strength `lambda = tanh r`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SqueezingSpec {
    lambda: f64,
}

impl SqueezingSpec {
    pub fn new(lambda: f64) -> Result<Self> {
        check("lambda", lambda, (0.0..1.0).contains(&lambda), "must satisfy 0 <= lambda < 1")?;
        Ok(Self { lambda })
    }

    pub fn from_squeezing_parameter(r: f64) -> Result<Self> {
        check("r", r, r >= 0.0, "must be non-negative")?;
        Self::new(r.tanh())
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// The squeezing parameter `r = atanh(lambda)`.
    pub fn r(&self) -> f64 {
        self.lambda.atanh()
    }
}

/// On-off detector with quantum efficiency and Poissonian dark counts.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DetectorModel {
    efficiency: f64,
    dark_mean: f64,
}

impl DetectorModel {
    pub fn new(efficiency: f64, dark_mean: f64) -> Result<Self> {
        check(
            "eta",
            efficiency,
            efficiency > 0.0 && efficiency <= 1.0,
            "must satisfy 0 < eta <= 1",
        )?;
        check("nu", dark_mean, dark_mean >= 0.0, "must be non-negative")?;
        Ok(Self {
            efficiency,
            dark_mean,
        })
    }

    pub fn perfect() -> Self {
        Self {
            efficiency: 1.0,
            dark_mean: 0.0,
        }
    }

    pub fn efficiency(&self) -> f64 {
        self.efficiency
    }

    pub fn dark_mean(&self) -> f64 {
        self.dark_mean
    }
}

/// Beam-splitter network: tap transmittance `T`, path transmittance `T_L`
/// and a balanced interferometer.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OpticalSetup {
    tap_transmittance: f64,
    path_transmittance: f64,
}

impl OpticalSetup {
    pub const INTERFEROMETER_SPLIT: f64 = 0.5;

    pub fn new(tap_transmittance: f64, path_transmittance: f64) -> Result<Self> {
        check(
            "T",
            tap_transmittance,
            tap_transmittance > 0.0 && tap_transmittance < 1.0,
            "must satisfy 0 < T < 1",
        )?;
        check(
            "T_L",
            path_transmittance,
            path_transmittance > 0.0 && path_transmittance <= 1.0,
            "must satisfy 0 < T_L <= 1",
        )?;
        Ok(Self {
            tap_transmittance,
            path_transmittance,
        })
    }

    pub fn lossless(tap_transmittance: f64) -> Result<Self> {
        Self::new(tap_transmittance, 1.0)
    }

    /// `T`
    pub fn tap_transmittance(&self) -> f64 {
        self.tap_transmittance
    }

    /// `R = 1 - T`
    pub fn tap_reflectance(&self) -> f64 {
        1.0 - self.tap_transmittance
    }

    /// `T_L`
    pub fn path_transmittance(&self) -> f64 {
        self.path_transmittance
    }

    /// `R_L = 1 - T_L`
    pub fn path_loss(&self) -> f64 {
        1.0 - self.path_transmittance
    }

    /// Beam-splitter angle with `tan(theta) = sqrt(R / T)`.
    pub fn tap_angle(&self) -> f64 {
        (self.tap_reflectance() / self.tap_transmittance).sqrt().atan()
    }

    /// Beam-splitter angle with `tan(xi) = sqrt(R_L / T_L)`.
    pub fn loss_angle(&self) -> f64 {
        (self.path_loss() / self.path_transmittance).sqrt().atan()
    }

    /// Angle of the balanced interferometer beam splitters.
    pub fn split_angle(&self) -> f64 {
        FRAC_PI_4
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub squeezing: SqueezingSpec,
    pub setup: OpticalSetup,
    pub detector: DetectorModel,
    pub scheme: Scheme,
}

impl ExperimentConfig {
    pub fn new(
        squeezing: SqueezingSpec,
        setup: OpticalSetup,
        detector: DetectorModel,
        scheme: Scheme,
    ) -> Self {
        Self {
            squeezing,
            setup,
            detector,
            scheme,
        }
    }

    /// Lossless setup with perfect on-off detectors.
    pub fn ideal(lambda: f64, tap_transmittance: f64, scheme: Scheme) -> Result<Self> {
        Ok(Self::new(
            SqueezingSpec::new(lambda)?,
            OpticalSetup::lossless(tap_transmittance)?,
            DetectorModel::perfect(),
            scheme,
        ))
    }

    pub fn practical(
        lambda: f64,
        tap_transmittance: f64,
        path_transmittance: f64,
        efficiency: f64,
        dark_mean: f64,
        scheme: Scheme,
    ) -> Result<Self> {
        Ok(Self::new(
            SqueezingSpec::new(lambda)?,
            OpticalSetup::new(tap_transmittance, path_transmittance)?,
            DetectorModel::new(efficiency, dark_mean)?,
            scheme,
        ))
    }

    /// The practical parameter set `T = 0.9, T_L = 0.75, eta = 0.6, nu = 1e-3`.
    pub fn practical_defaults(lambda: f64, scheme: Scheme) -> Result<Self> {
        Self::practical(
            lambda,
            DEFAULT_TAP_TRANSMITTANCE,
            PRACTICAL_PATH_TRANSMITTANCE,
            PRACTICAL_EFFICIENCY,
            PRACTICAL_DARK_MEAN,
            scheme,
        )
    }

    pub fn is_ideal(&self) -> bool {
        self.setup.path_transmittance() == 1.0
            && self.detector.efficiency() == 1.0
            && self.detector.dark_mean() == 0.0
    }

    pub fn lambda(&self) -> f64 {
        self.squeezing.lambda()
    }

    pub fn with_lambda(&self, lambda: f64) -> Result<Self> {
        Ok(Self {
            squeezing: SqueezingSpec::new(lambda)?,
            ..*self
        })
    }

    pub fn with_scheme(&self, scheme: Scheme) -> Self {
        Self { scheme, ..*self }
    }

    /// Same squeezing, tap and scheme with the imperfections removed.
    pub fn idealized(&self) -> Self {
        Self {
            setup: OpticalSetup {
                path_transmittance: 1.0,
                ..self.setup
            },
            detector: DetectorModel::perfect(),
            ..*self
        }
    }

    pub(crate) fn require_scheme(&self, expected: Scheme) -> Result<()> {
        if self.scheme == expected {
            Ok(())
        } else {
            Err(Error::WrongScheme { expected })
        }
    }
}
