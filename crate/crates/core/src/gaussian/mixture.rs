use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::special::erfc;

/// Local-oscillator phase of a quadrature measurement, reduced to `[0, 2 pi)`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct QuadPhase(f64);

impl QuadPhase {
    pub const ZERO: QuadPhase = QuadPhase(0.0);

    pub fn new(radians: f64) -> Self {
        let r = radians.rem_euclid(TAU);
        // rem_euclid can round up to exactly TAU for tiny negative inputs
        Self(if r >= TAU { 0.0 } else { r })
    }

    pub fn radians(self) -> f64 {
        self.0
    }
}

impl From<f64> for QuadPhase {
    fn from(radians: f64) -> Self {
        Self::new(radians)
    }
}

/// Outcome of a single quadrature measurement.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadraturePoint {
    pub x: f64,
}

/// Point `(x, p)` of phase space, or a joint Bell-measurement outcome.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhasePoint {
    pub x: f64,
    pub p: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Point {
    Quadrature(QuadraturePoint),
    Phase(PhasePoint),
}

impl From<f64> for Point {
    fn from(x: f64) -> Self {
        Point::Quadrature(QuadraturePoint { x })
    }
}

impl From<QuadraturePoint> for Point {
    fn from(q: QuadraturePoint) -> Self {
        Point::Quadrature(q)
    }
}

impl From<(f64, f64)> for Point {
    fn from((x, p): (f64, f64)) -> Self {
        Point::Phase(PhasePoint { x, p })
    }
}

impl From<PhasePoint> for Point {
    fn from(p: PhasePoint) -> Self {
        Point::Phase(p)
    }
}

/// One term `amplitude * exp(-coeff_x x^2 - coeff_p p^2)` with its signed weight.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GaussianComponent {
    /// Heralding indices `(i, j)`; `0` marks a detector whose no-click
    /// projector was subtracted.
    pub index: (u8, u8),
    pub weight: f64,
    pub amplitude: f64,
    pub coeff_x: f64,
    /// Absent for one-dimensional mixtures.
    pub coeff_p: Option<f64>,
}

impl GaussianComponent {
    pub fn value(&self, x: f64, p: f64) -> f64 {
        let exponent = self.coeff_x * x * x + self.coeff_p.map_or(0.0, |c| c * p * p);
        self.amplitude * (-exponent).exp()
    }

    /// Integral of the unweighted term over its whole domain.
    pub fn mass(&self) -> f64 {
        let mx = (PI / self.coeff_x).sqrt();
        self.amplitude * mx * self.coeff_p.map_or(1.0, |c| (PI / c).sqrt())
    }

    pub fn variance_x(&self) -> f64 {
        0.5 / self.coeff_x
    }

    pub fn variance_p(&self) -> Option<f64> {
        self.coeff_p.map(|c| 0.5 / c)
    }

    // Mass of the normalized term on x >= x0, p >= p0.
    fn upper_quadrant_fraction(&self, x0: f64, p0: f64) -> f64 {
        let fx = 0.5 * erfc(x0 * self.coeff_x.sqrt());
        let fp = self.coeff_p.map_or(1.0, |c| 0.5 * erfc(p0 * c.sqrt()));
        fx * fp
    }
}

/// Four signed Gaussian terms divided by a common normalization (the
/// heralding probability). This is the shape of every conditional homodyne
/// density, Bell-measurement density and Wigner function in the crate.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SignedGaussianMixture {
    components: [GaussianComponent; 4],
    normalization: f64,
}

impl SignedGaussianMixture {
    pub fn new(components: [GaussianComponent; 4], normalization: f64) -> Self {
        Self {
            components,
            normalization,
        }
    }

    /// Mixture normalized by its own total weighted mass, so that rounding in
    /// the cancelling sum is shared between numerator and denominator.
    pub fn self_normalized(components: [GaussianComponent; 4]) -> Self {
        let normalization = components.iter().map(|c| c.weight * c.mass()).sum();
        Self::new(components, normalization)
    }

    pub fn components(&self) -> &[GaussianComponent; 4] {
        &self.components
    }

    pub fn normalization(&self) -> f64 {
        self.normalization
    }

    pub fn is_two_dimensional(&self) -> bool {
        self.components[0].coeff_p.is_some()
    }

    /// Signed sum of the four terms. May be negative for Wigner functions.
    pub fn value(&self, x: f64, p: f64) -> f64 {
        self.components
            .iter()
            .map(|c| c.weight * c.value(x, p))
            .sum::<f64>()
            / self.normalization
    }

    /// Probability density at `point`. Negative rounding residue in the far
    /// tails is clamped to zero.
    pub fn pdf_at(&self, point: impl Into<Point>) -> f64 {
        let (x, p) = match point.into() {
            Point::Quadrature(q) => (q.x, 0.0),
            Point::Phase(q) => (q.x, q.p),
        };
        self.value(x, p).max(0.0)
    }

    /// Analytic integral of the mixture; 1 for every valid mixture.
    pub fn total_mass(&self) -> f64 {
        self.components
            .iter()
            .map(|c| c.weight * c.mass())
            .sum::<f64>()
            / self.normalization
    }

    /// Second moment along `x` (all terms are centered).
    pub fn variance_x(&self) -> f64 {
        self.components
            .iter()
            .map(|c| c.weight * c.mass() * c.variance_x())
            .sum::<f64>()
            / self.normalization
    }

    pub fn variance_p(&self) -> Option<f64> {
        let mut sum = 0.0;
        for c in &self.components {
            sum += c.weight * c.mass() * c.variance_p()?;
        }
        Some(sum / self.normalization)
    }

    /// Integrates out `p`, leaving a one-dimensional mixture in `x`.
    pub fn marginal_x(&self) -> SignedGaussianMixture {
        let components = self.components.map(|c| match c.coeff_p {
            Some(cp) => GaussianComponent {
                amplitude: c.amplitude * (PI / cp).sqrt(),
                coeff_p: None,
                ..c
            },
            None => c,
        });
        Self::new(components, self.normalization)
    }

    /// Probability of `x >= x0` and (for two-dimensional mixtures) `p >= p0`.
    pub fn upper_quadrant_probability(&self, x0: f64, p0: f64) -> f64 {
        self.components
            .iter()
            .map(|c| c.weight * c.mass() * c.upper_quadrant_fraction(x0, p0))
            .sum::<f64>()
            / self.normalization
    }
}
