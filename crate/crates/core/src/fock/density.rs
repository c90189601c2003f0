use std::collections::HashMap;
use std::sync::Arc;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64 as C64;

use super::basis::FockBasis;
use super::state::{beam_splitter_sectors, FockStateVector};
use crate::error::{Error, Result};

/// Density operator over a truncated multi-mode number basis.
#[derive(Clone, Debug)]
pub struct DensityOperator {
    basis: Arc<FockBasis>,
    matrix: DMatrix<C64>,
}

impl DensityOperator {
    pub fn new(basis: Arc<FockBasis>, matrix: DMatrix<C64>) -> Self {
        assert_eq!(matrix.shape(), (basis.dim(), basis.dim()));
        Self { basis, matrix }
    }

    pub fn from_pure(state: &FockStateVector) -> Self {
        let v = state.amplitudes();
        Self::new(state.basis().clone(), v * v.adjoint())
    }

    pub fn basis(&self) -> &Arc<FockBasis> {
        &self.basis
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.matrix
    }

    pub fn mode_count(&self) -> usize {
        self.basis.modes()
    }

    pub fn n_max(&self) -> usize {
        self.basis.n_max()
    }

    pub fn trace(&self) -> f64 {
        self.matrix.diagonal().iter().map(|z| z.re).sum()
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self::new(self.basis.clone(), &self.matrix * C64::new(factor, 0.0))
    }

    /// Largest `|rho - rho^dag|` entry.
    pub fn hermiticity_error(&self) -> f64 {
        let d = &self.matrix - self.matrix.adjoint();
        d.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        let h = (&self.matrix + self.matrix.adjoint()) * C64::new(0.5, 0.0);
        SymmetricEigen::new(h).eigenvalues.iter().copied().collect()
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues().into_iter().fold(f64::INFINITY, f64::min)
    }

    /// `||rho - sigma||_1 / 2`; both operators must share a basis shape.
    pub fn trace_distance(&self, other: &DensityOperator) -> f64 {
        assert_eq!(self.matrix.shape(), other.matrix.shape());
        let d = &self.matrix - &other.matrix;
        let h = (&d + d.adjoint()) * C64::new(0.5, 0.0);
        0.5 * SymmetricEigen::new(h).eigenvalues.iter().map(|l| l.abs()).sum::<f64>()
    }

    /// Partial trace over every mode except `mode`.
    pub fn reduced(&self, mode: usize) -> Result<DensityOperator> {
        self.basis.check_mode(mode)?;
        let n = self.basis.n_max();
        let out_basis = FockBasis::new(1, n);
        let mut groups: HashMap<Vec<u16>, Vec<(usize, usize)>> = HashMap::new();
        for i in 0..self.basis.dim() {
            let mut key = self.basis.occupation(i).to_vec();
            let count = key.remove(mode) as usize;
            groups.entry(key).or_default().push((count, i));
        }
        let mut out = DMatrix::zeros(n + 1, n + 1);
        for members in groups.values() {
            for &(a, i) in members {
                for &(b, j) in members {
                    out[(a, b)] += self.matrix[(i, j)];
                }
            }
        }
        Ok(DensityOperator::new(out_basis, out))
    }

    /// Applies `sum_k w_k K_k rho K_k^dag` on `mode`, where `K_k` removes `k`
    /// photons through a beam splitter of transmittance `transmittance`:
    /// `K_k |n> = sqrt(C(n, k) T^(n-k) (1-T)^k) |n - k>`.
    /// Missing trailing weights count as zero.
    pub fn apply_lowering_channel(&self, mode: usize, transmittance: f64, weights: &[f64]) -> Result<Self> {
        let b = &self.basis;
        b.check_mode(mode)?;
        let n_max = b.n_max();
        let coef = lowering_coefficients(transmittance, n_max);
        let dim = b.dim();
        // lowered[i][k]: index of state i with k photons removed from `mode`
        let lowered: Vec<Vec<usize>> = (0..dim)
            .map(|i| {
                let n = b.count(i, mode);
                (0..=n)
                    .map(|k| b.with_count(i, mode, n - k).expect("lowering stays in the basis"))
                    .collect()
            })
            .collect();
        let counts: Vec<usize> = (0..dim).map(|i| b.count(i, mode)).collect();
        let mut out = DMatrix::<C64>::zeros(dim, dim);
        for (k, &w) in weights.iter().enumerate().take(n_max + 1) {
            if w == 0.0 {
                continue;
            }
            for j in 0..dim {
                let nj = counts[j];
                if nj < k {
                    continue;
                }
                let wj = w * coef[nj][k];
                let tj = lowered[j][k];
                for i in 0..dim {
                    let ni = counts[i];
                    if ni < k {
                        continue;
                    }
                    out[(lowered[i][k], tj)] += self.matrix[(i, j)] * (wj * coef[ni][k]);
                }
            }
        }
        Ok(Self::new(self.basis.clone(), out))
    }

    /// Conjugation by the beam splitter `exp(theta (a^dag b - a b^dag))`.
    pub fn apply_beam_splitter(&self, mode_a: usize, mode_b: usize, theta: f64) -> Result<Self> {
        let b = &self.basis;
        b.check_mode(mode_a)?;
        b.check_mode(mode_b)?;
        if mode_a == mode_b {
            return Err(Error::InvalidMode {
                mode: mode_b,
                modes: b.modes(),
            });
        }
        let sectors = beam_splitter_sectors(theta, b.n_max());
        let mut groups: Vec<(usize, Vec<usize>)> = Vec::new();
        for rep in 0..b.dim() {
            if b.count(rep, mode_b) != 0 {
                continue;
            }
            let s = b.count(rep, mode_a);
            let members = (0..=s)
                .map(|k| {
                    let mut occ: Vec<usize> = b.occupation(rep).iter().map(|&n| n as usize).collect();
                    occ[mode_a] = k;
                    occ[mode_b] = s - k;
                    b.index(&occ).expect("sector stays in the basis")
                })
                .collect();
            groups.push((s, members));
        }
        let dim = b.dim();
        // U rho, then (U rho) U^T; U is real
        let mut left = DMatrix::<C64>::zeros(dim, dim);
        for j in 0..dim {
            for (s, members) in &groups {
                let u = &sectors[*s];
                for (p, &i) in members.iter().enumerate() {
                    left[(i, j)] = members
                        .iter()
                        .enumerate()
                        .map(|(r, &m)| self.matrix[(m, j)] * u[(p, r)])
                        .sum();
                }
            }
        }
        let mut out = DMatrix::<C64>::zeros(dim, dim);
        for (s, members) in &groups {
            let u = &sectors[*s];
            for (p, &jp) in members.iter().enumerate() {
                for (r, &jr) in members.iter().enumerate() {
                    let w = u[(p, r)];
                    if w == 0.0 {
                        continue;
                    }
                    let src = left.column(jr).clone_owned();
                    let mut dst = out.column_mut(jp);
                    dst.axpy(C64::new(w, 0.0), &src, C64::new(1.0, 0.0));
                }
            }
        }
        Ok(Self::new(self.basis.clone(), out))
    }

    /// `(O x 1) rho (O x 1)^dag` for a single-mode operator `O` given on
    /// `0..=n_max`; components leaving the truncated basis are dropped.
    pub fn apply_mode_operator(&self, mode: usize, op: &DMatrix<C64>) -> Result<Self> {
        let b = &self.basis;
        b.check_mode(mode)?;
        let dim = b.dim();
        let n_max = b.n_max();
        assert_eq!(op.shape(), (n_max + 1, n_max + 1));
        // replaced[i][m]: index of state i with `mode` set to m
        let replaced: Vec<Vec<Option<usize>>> = (0..dim)
            .map(|i| (0..=n_max).map(|m| b.with_count(i, mode, m)).collect())
            .collect();
        let counts: Vec<usize> = (0..dim).map(|i| b.count(i, mode)).collect();
        let mut left = DMatrix::<C64>::zeros(dim, dim);
        for j in 0..dim {
            for i in 0..dim {
                let v = self.matrix[(i, j)];
                if v == C64::default() {
                    continue;
                }
                for (m, t) in replaced[i].iter().enumerate() {
                    if let Some(t) = t {
                        left[(*t, j)] += op[(m, counts[i])] * v;
                    }
                }
            }
        }
        let mut out = DMatrix::<C64>::zeros(dim, dim);
        for j in 0..dim {
            for (m, t) in replaced[j].iter().enumerate() {
                if let Some(t) = t {
                    let w = op[(m, counts[j])].conj();
                    if w == C64::default() {
                        continue;
                    }
                    let src = left.column(j).clone_owned();
                    out.column_mut(*t).axpy(w, &src, C64::new(1.0, 0.0));
                }
            }
        }
        Ok(Self::new(self.basis.clone(), out))
    }

    /// `Tr[rho f(n_mode)]` for a function of the photon number of `mode`.
    pub fn number_expectation(&self, mode: usize, f: impl Fn(usize) -> f64) -> Result<f64> {
        self.basis.check_mode(mode)?;
        Ok((0..self.basis.dim())
            .map(|i| self.matrix[(i, i)].re * f(self.basis.count(i, mode)))
            .sum())
    }
}

/// `sqrt(C(n, k) T^(n-k) (1-T)^k)` for `0 <= k <= n <= n_max`.
fn lowering_coefficients(transmittance: f64, n_max: usize) -> Vec<Vec<f64>> {
    let r = 1.0 - transmittance;
    let mut binom = vec![vec![1.0f64]];
    for n in 1..=n_max {
        let prev = &binom[n - 1];
        let row: Vec<f64> = (0..=n)
            .map(|k| {
                let a = if k > 0 { prev[k - 1] } else { 0.0 };
                let b = if k < n { prev[k] } else { 0.0 };
                a + b
            })
            .collect();
        binom.push(row);
    }
    binom
        .iter()
        .enumerate()
        .map(|(n, row)| {
            row.iter()
                .enumerate()
                .map(|(k, c)| (c * transmittance.powi((n - k) as i32) * r.powi(k as i32)).sqrt())
                .collect()
        })
        .collect()
}
