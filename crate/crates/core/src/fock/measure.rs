use std::f64::consts::{FRAC_PI_4, PI, SQRT_2};

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use super::density::DensityOperator;
use super::hermite::oscillator_functions;
use crate::error::{Error, Result};
use crate::quadrature::composite_nodes;

/// Trace lost by [`displace`] above which the cutoff is rejected.
pub const DISPLACEMENT_TAIL_LIMIT: f64 = 1e-8;

fn require_modes(rho: &DensityOperator, modes: usize, reason: &'static str) -> Result<()> {
    if rho.mode_count() == modes {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name: "rho",
            value: rho.mode_count() as f64,
            reason,
        })
    }
}

fn i_pow(k: usize) -> C64 {
    match k % 4 {
        0 => C64::new(1.0, 0.0),
        1 => C64::new(0.0, 1.0),
        2 => C64::new(-1.0, 0.0),
        _ => C64::new(0.0, -1.0),
    }
}

/// `Tr[rho n_mode]`.
pub fn mean_photon(rho: &DensityOperator, mode: usize) -> Result<f64> {
    rho.number_expectation(mode, |n| n as f64)
}

/// Probability that `mode` holds no photons.
pub fn vacuum_overlap(rho: &DensityOperator, mode: usize) -> Result<f64> {
    rho.number_expectation(mode, |n| if n == 0 { 1.0 } else { 0.0 })
}

/// Density of `x_phi = (a e^{-i phi} + a^dag e^{i phi}) / sqrt 2` on one mode,
/// with the reduced state cached for repeated evaluation.
#[derive(Clone, Debug)]
pub struct QuadratureDensity {
    // rho_{mn} e^{-i (m - n) phi}
    kernel: DMatrix<C64>,
}

impl QuadratureDensity {
    pub fn new(rho: &DensityOperator, mode: usize, phase: f64) -> Result<Self> {
        let red = rho.reduced(mode)?;
        let m = red.matrix();
        let kernel = DMatrix::from_fn(m.nrows(), m.ncols(), |a, b| {
            m[(a, b)] * C64::from_polar(1.0, -(a as f64 - b as f64) * phase)
        });
        Ok(Self { kernel })
    }

    pub fn value(&self, x: f64) -> f64 {
        let psi = oscillator_functions(x, self.kernel.nrows() - 1);
        let mut sum = 0.0;
        for (b, &pb) in psi.iter().enumerate() {
            for (a, &pa) in psi.iter().enumerate() {
                sum += (self.kernel[(a, b)] * (pa * pb)).re;
            }
        }
        sum
    }
}

/// `<x_phi| rho_mode |x_phi>`.
pub fn quadrature_pdf(rho: &DensityOperator, mode: usize, phase: f64, x: f64) -> Result<f64> {
    Ok(QuadratureDensity::new(rho, mode, phase)?.value(x))
}

/// Second central moment of `x_phi` on `mode`, from `<a>`, `<a^2>` and `<n>`.
pub fn quadrature_variance(rho: &DensityOperator, mode: usize, phase: f64) -> Result<f64> {
    let red = rho.reduced(mode)?;
    let m = red.matrix();
    let dim = m.nrows();
    let mut a1 = C64::default();
    let mut a2 = C64::default();
    let mut n = 0.0;
    for k in 0..dim {
        n += k as f64 * m[(k, k)].re;
        if k >= 1 {
            a1 += m[(k, k - 1)] * (k as f64).sqrt();
        }
        if k >= 2 {
            a2 += m[(k, k - 2)] * ((k * (k - 1)) as f64).sqrt();
        }
    }
    let mean = SQRT_2 * (C64::from_polar(1.0, -phase) * a1).re;
    let second = (C64::from_polar(1.0, -2.0 * phase) * a2).re + n + 0.5;
    Ok(second - mean * mean)
}

/// Joint density of the Bell variables `u = x_A - x_B`, `v = p_A + p_B`:
/// the two modes are recombined on a 50:50 beam splitter, `x` is read on one
/// output port and `p` on the other, each scaled by `sqrt 2`.
#[derive(Clone, Debug)]
pub struct BellDensity {
    recombined: DensityOperator,
    // (count in port x, count in port p) per basis index
    counts: Vec<(usize, usize)>,
}

impl BellDensity {
    pub fn new(rho: &DensityOperator) -> Result<Self> {
        require_modes(rho, 2, "Bell measurement needs a two-mode state")?;
        let recombined = rho.apply_beam_splitter(0, 1, -FRAC_PI_4)?;
        let b = recombined.basis();
        let counts = (0..b.dim()).map(|i| (b.count(i, 0), b.count(i, 1))).collect();
        Ok(Self { recombined, counts })
    }

    fn n_max(&self) -> usize {
        self.recombined.n_max()
    }

    // Port-x kernel after contracting the p port with eigenfunctions at p.
    fn kernel_at_p(&self, v: f64) -> DMatrix<C64> {
        let n = self.n_max();
        let phi: Vec<C64> = oscillator_functions(v / SQRT_2, n)
            .into_iter()
            .enumerate()
            .map(|(k, f)| i_pow(k) * f)
            .collect();
        self.contract_p(&|b, b2| phi[b].conj() * phi[b2])
    }

    fn contract_p(&self, weight: &dyn Fn(usize, usize) -> C64) -> DMatrix<C64> {
        let n = self.n_max();
        let m = self.recombined.matrix();
        let mut out = DMatrix::<C64>::zeros(n + 1, n + 1);
        for (j, &(a2, b2)) in self.counts.iter().enumerate() {
            for (i, &(a, b)) in self.counts.iter().enumerate() {
                out[(a, a2)] += m[(i, j)] * weight(b, b2);
            }
        }
        out
    }

    fn contract_x(kernel: &DMatrix<C64>, weight: &dyn Fn(usize, usize) -> f64) -> f64 {
        let mut sum = 0.0;
        for a2 in 0..kernel.ncols() {
            for a in 0..kernel.nrows() {
                sum += (kernel[(a, a2)] * weight(a, a2)).re;
            }
        }
        sum
    }

    pub fn value(&self, u: f64, v: f64) -> f64 {
        let kernel = self.kernel_at_p(v);
        let psi = oscillator_functions(u / SQRT_2, self.n_max());
        0.5 * Self::contract_x(&kernel, &|a, a2| psi[a] * psi[a2])
    }

    /// Values on the tensor grid `us x vs`, row-major with `u` slowest.
    pub fn grid(&self, us: &[f64], vs: &[f64]) -> Vec<f64> {
        let kernels: Vec<DMatrix<C64>> = vs.iter().map(|&v| self.kernel_at_p(v)).collect();
        let mut out = Vec::with_capacity(us.len() * vs.len());
        for &u in us {
            let psi = oscillator_functions(u / SQRT_2, self.n_max());
            for k in &kernels {
                out.push(0.5 * Self::contract_x(k, &|a, a2| psi[a] * psi[a2]));
            }
        }
        out
    }

    /// Probability of `u in [u0, u1]`, `v in [v0, v1]` by tensor-product
    /// Gauss-Legendre quadrature, refined until successive estimates differ
    /// by less than `tol`.
    pub fn rectangle_probability(&self, (u0, u1): (f64, f64), (v0, v1): (f64, f64), tol: f64) -> f64 {
        let n = self.n_max();
        let iu = overlap_integrals(u0, u1, n, tol);
        let iv = overlap_integrals(v0, v1, n, tol);
        let kernel = self.contract_p(&|b, b2| i_pow(b).conj() * i_pow(b2) * iv[(b, b2)]);
        0.5 * Self::contract_x(&kernel, &|a, a2| iu[(a, a2)])
    }

    /// Per-axis variances `(Var u, Var v)` from the port moments.
    pub fn variances(&self) -> Result<(f64, f64)> {
        let vx = quadrature_variance(&self.recombined, 0, 0.0)?;
        let vp = quadrature_variance(&self.recombined, 1, PI / 2.0)?;
        Ok((2.0 * vx, 2.0 * vp))
    }
}

/// `int_a^b psi_m(u / sqrt 2) psi_n(u / sqrt 2) du` for `m, n <= n_max`.
pub(crate) fn overlap_integrals(a: f64, b: f64, n_max: usize, tol: f64) -> DMatrix<f64> {
    let estimate = |panels: usize| {
        let mut out = DMatrix::<f64>::zeros(n_max + 1, n_max + 1);
        for (u, w) in composite_nodes(a, b, panels) {
            let psi = nalgebra::DVector::from_vec(oscillator_functions(u / SQRT_2, n_max));
            out.ger(w, &psi, &psi, 1.0);
        }
        out
    };
    let mut panels = 4;
    let mut previous = estimate(panels);
    loop {
        panels *= 2;
        let current = estimate(panels);
        if (&current - &previous).amax() < tol || panels >= 1024 {
            return current;
        }
        previous = current;
    }
}

/// Joint density of the Bell variables at `(u, v)`.
pub fn bell_pdf(rho: &DensityOperator, u: f64, v: f64) -> Result<f64> {
    Ok(BellDensity::new(rho)?.value(u, v))
}

/// `(Var(x_A - x_B), Var(p_A + p_B))` of a two-mode state.
pub fn bell_variances(rho: &DensityOperator) -> Result<(f64, f64)> {
    BellDensity::new(rho)?.variances()
}

/// Wigner function of a single-mode state from its defining integral
/// `W(x, p) = (1/pi) int dy e^{-2ipy} <x + y| rho |x - y>`.
pub fn wigner(rho: &DensityOperator, x: f64, p: f64) -> Result<f64> {
    require_modes(rho, 1, "Wigner function needs a single-mode state")?;
    let m = rho.matrix();
    let n = rho.n_max();
    let half = x.abs() + ((2 * n + 1) as f64).sqrt() + 8.0;
    let estimate = |panels: usize| {
        let mut sum = 0.0;
        for (y, w) in composite_nodes(-half, half, panels) {
            let left = oscillator_functions(x + y, n);
            let right = oscillator_functions(x - y, n);
            let mut g = C64::default();
            for (b, &rb) in right.iter().enumerate() {
                if rb == 0.0 {
                    continue;
                }
                let mut col = C64::default();
                for (a, &la) in left.iter().enumerate() {
                    col += m[(a, b)] * la;
                }
                g += col * rb;
            }
            sum += w * (C64::from_polar(1.0, -2.0 * p * y) * g).re;
        }
        sum / PI
    };
    let mut panels = 8;
    let mut previous = estimate(panels);
    loop {
        panels *= 2;
        let current = estimate(panels);
        if (current - previous).abs() < 1e-11 || panels >= 1024 {
            return Ok(current);
        }
        previous = current;
    }
}

/// Number-basis matrix of `D(beta) = exp(beta a^dag - beta* a)` on
/// `0..=n_max`.
pub fn displacement_matrix(beta: C64, n_max: usize) -> DMatrix<C64> {
    let x = beta.norm_sqr();
    let gauss = (-0.5 * x).exp();
    DMatrix::from_fn(n_max + 1, n_max + 1, |m, n| {
        let (lo, hi, base) = if m >= n { (n, m, beta) } else { (m, n, -beta.conj()) };
        let order = hi - lo;
        // sqrt(lo! / hi!) base^order
        let mut factor = C64::new(1.0, 0.0);
        for k in lo + 1..=hi {
            factor *= base / (k as f64).sqrt();
        }
        factor * gauss * laguerre(lo, order as f64, x)
    })
}

fn laguerre(k: usize, alpha: f64, x: f64) -> f64 {
    let mut prev = 1.0;
    if k == 0 {
        return prev;
    }
    let mut cur = 1.0 + alpha - x;
    for j in 1..k {
        let jf = j as f64;
        let next = ((2.0 * jf + 1.0 + alpha - x) * cur - (jf + alpha) * prev) / (jf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Displaces `mode` by `D((x_s + i p_s)/sqrt 2)`, shifting its quadrature
/// means by `(x_s, p_s)`.
pub fn displace(rho: &DensityOperator, mode: usize, x_s: f64, p_s: f64) -> Result<DensityOperator> {
    let beta = C64::new(x_s, p_s) / SQRT_2;
    let d = displacement_matrix(beta, rho.n_max());
    let out = rho.apply_mode_operator(mode, &d)?;
    let lost = 1.0 - out.trace() / rho.trace();
    if lost > DISPLACEMENT_TAIL_LIMIT {
        return Err(Error::CutoffTooSmall {
            n_max: rho.n_max(),
            neglected: lost,
        });
    }
    Ok(out)
}
