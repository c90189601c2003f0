use std::sync::Arc;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64 as C64;

use super::basis::{FockBasis, FockCutoff};
use crate::config::Scheme;
use crate::error::{Error, Result};

/// Pure state over a truncated multi-mode number basis.
#[derive(Clone, Debug)]
pub struct FockStateVector {
    basis: Arc<FockBasis>,
    amplitudes: DVector<C64>,
}

impl FockStateVector {
    pub fn new(basis: Arc<FockBasis>, amplitudes: DVector<C64>) -> Self {
        assert_eq!(basis.dim(), amplitudes.len());
        Self { basis, amplitudes }
    }

    pub fn vacuum(modes: usize, n_max: usize) -> Self {
        let basis = FockBasis::new(modes, n_max);
        let mut amplitudes = DVector::zeros(basis.dim());
        amplitudes[0] = C64::new(1.0, 0.0);
        Self { basis, amplitudes }
    }

    /// Tensor product of single-mode amplitude lists, truncated to total
    /// photon number `n_max`.
    pub fn product(factors: &[&[C64]], n_max: usize) -> Self {
        let basis = FockBasis::new(factors.len(), n_max);
        let amplitudes = DVector::from_iterator(
            basis.dim(),
            (0..basis.dim()).map(|i| {
                basis
                    .occupation(i)
                    .iter()
                    .zip(factors)
                    .map(|(&n, f)| f.get(n as usize).copied().unwrap_or_default())
                    .product()
            }),
        );
        Self { basis, amplitudes }
    }

    pub fn basis(&self) -> &Arc<FockBasis> {
        &self.basis
    }

    pub fn mode_count(&self) -> usize {
        self.basis.modes()
    }

    pub fn amplitudes(&self) -> &DVector<C64> {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.norm()
    }

    /// Amplitude of the number state `occupation`, zero outside the basis.
    pub fn amplitude(&self, occupation: &[usize]) -> C64 {
        self.basis
            .index(occupation)
            .map_or(C64::default(), |i| self.amplitudes[i])
    }
}

/// Single-mode squeezed vacuum `exp(-(r/2)(a^dag^2 - a^2))|0>` with
/// `lambda = tanh r`, squeezed along `x`.
pub fn squeezed_vacuum_state(lambda: f64, cutoff: &FockCutoff) -> Result<FockStateVector> {
    let n = FockCutoff::new(cutoff.n_max(), lambda, Scheme::SingleMode)?.photon_limit();
    let amps = squeezed_vacuum_amplitudes(lambda, n);
    Ok(FockStateVector::product(&[&amps], n))
}

/// Number-basis amplitudes `c_0 .. c_n_max` of the squeezed vacuum; a
/// negative `lambda` gives the state squeezed along `p`.
pub(crate) fn squeezed_vacuum_amplitudes(lambda: f64, n_max: usize) -> Vec<C64> {
    let mut out = vec![C64::default(); n_max + 1];
    let mut c = (1.0 - lambda * lambda).sqrt().sqrt();
    let mut n = 0;
    while n <= n_max {
        out[n] = C64::new(c, 0.0);
        c *= -lambda * ((n + 1) as f64 / (n + 2) as f64).sqrt();
        n += 2;
    }
    out
}

/// Matrix of `exp(theta (a^dag b - a b^dag))` on the sector with `s` photons
/// shared by modes `a` and `b`, in the basis `|k, s - k>`, `k = 0..=s`.
pub fn beam_splitter_sector(theta: f64, s: usize) -> DMatrix<f64> {
    // The generator is real antisymmetric tridiagonal with off-diagonal
    // g_k = sqrt((k+1)(s-k)); conjugating by diag(i^k) turns it into -i S
    // with S real symmetric.
    let dim = s + 1;
    let mut sym = DMatrix::<f64>::zeros(dim, dim);
    for k in 0..s {
        let g = (((k + 1) * (s - k)) as f64).sqrt();
        sym[(k, k + 1)] = g;
        sym[(k + 1, k)] = g;
    }
    let eig = SymmetricEigen::new(sym);
    let q = &eig.eigenvectors;
    let phases: Vec<C64> = eig
        .eigenvalues
        .iter()
        .map(|&l| C64::from_polar(1.0, -theta * l))
        .collect();
    let i_pow = |k: usize| match k % 4 {
        0 => C64::new(1.0, 0.0),
        1 => C64::new(0.0, 1.0),
        2 => C64::new(-1.0, 0.0),
        _ => C64::new(0.0, -1.0),
    };
    DMatrix::from_fn(dim, dim, |p, r| {
        let sum: C64 = (0..dim).map(|m| phases[m] * q[(p, m)] * q[(r, m)]).sum();
        // i^p i^-r; the product is real up to rounding
        (i_pow(p) * i_pow((4 - r % 4) % 4) * sum).re
    })
}

/// All sector matrices for `s = 0..=n_max`.
pub(crate) fn beam_splitter_sectors(theta: f64, n_max: usize) -> Vec<DMatrix<f64>> {
    (0..=n_max).map(|s| beam_splitter_sector(theta, s)).collect()
}

/// Applies the beam splitter `exp(theta (a^dag b - a b^dag))` between modes
/// `mode_a` and `mode_b`.
pub fn beam_splitter(
    state: &FockStateVector,
    mode_a: usize,
    mode_b: usize,
    theta: f64,
) -> Result<FockStateVector> {
    let basis = state.basis.clone();
    basis.check_mode(mode_a)?;
    basis.check_mode(mode_b)?;
    if mode_a == mode_b {
        return Err(Error::InvalidMode {
            mode: mode_b,
            modes: basis.modes(),
        });
    }
    let sectors = beam_splitter_sectors(theta, basis.n_max());
    let mut out = DVector::zeros(basis.dim());
    let mut members = Vec::new();
    for rep in 0..basis.dim() {
        // one representative per sector: all of the pair's photons in mode_a
        if basis.count(rep, mode_b) != 0 {
            continue;
        }
        let s = basis.count(rep, mode_a);
        members.clear();
        for k in 0..=s {
            let mut occ: Vec<usize> = basis.occupation(rep).iter().map(|&n| n as usize).collect();
            occ[mode_a] = k;
            occ[mode_b] = s - k;
            members.push(basis.index(&occ).expect("sector stays in the basis"));
        }
        let u = &sectors[s];
        for (p, &i) in members.iter().enumerate() {
            out[i] = members
                .iter()
                .enumerate()
                .map(|(r, &j)| state.amplitudes[j] * u[(p, r)])
                .sum();
        }
    }
    Ok(FockStateVector::new(basis, out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::FRAC_PI_4;

    #[test]
    fn squeezed_amplitudes() {
        let cutoff = FockCutoff::new(40, 0.5, Scheme::SingleMode).unwrap();
        let psi = squeezed_vacuum_state(0.5, &cutoff).unwrap();
        assert!((psi.norm() - 1.0).abs() < 1e-9);
        for n in (1..40).step_by(2) {
            assert_eq!(psi.amplitude(&[n]), C64::default());
        }
        let vac = squeezed_vacuum_state(0.0, &FockCutoff::unchecked(4)).unwrap();
        assert_eq!(vac.amplitude(&[0]), C64::new(1.0, 0.0));
        assert_eq!(vac.amplitude(&[2]), C64::default());
        // <x^2> = <(a^2 + a^dag^2 + 2n + 1)>/2 = 1/6 at lambda = 1/2
        let c: Vec<f64> = (0..=40).map(|n| psi.amplitude(&[n]).re).collect();
        let mut x2 = 0.0;
        for n in 0..=40 {
            x2 += c[n] * c[n] * (2 * n + 1) as f64 / 2.0;
            if n + 2 <= 40 {
                x2 += c[n] * c[n + 2] * (((n + 1) * (n + 2)) as f64).sqrt();
            }
        }
        assert!((x2 - 1.0 / 6.0).abs() < 1e-9, "{x2}");
    }

    #[test]
    fn one_photon_sector() {
        let u = beam_splitter_sector(FRAC_PI_4, 1);
        let h = FRAC_PI_4.cos();
        // |1,0> is basis element k = 1; it maps to cos|1,0> - sin|0,1>
        assert!((u[(1, 1)] - h).abs() < 1e-15);
        assert!((u[(0, 1)] + h).abs() < 1e-15);
        let one = FockStateVector::product(
            &[&[C64::new(0.0, 0.0), C64::new(1.0, 0.0)], &[C64::new(1.0, 0.0)]],
            1,
        );
        let out = beam_splitter(&one, 0, 1, FRAC_PI_4).unwrap();
        assert!((out.amplitude(&[1, 0]).re - h).abs() < 1e-15);
        assert!((out.amplitude(&[0, 1]).re + h).abs() < 1e-15);
        assert!(beam_splitter(&one, 0, 0, 0.1).is_err());
        assert!(beam_splitter(&one, 0, 2, 0.1).is_err());
    }

    #[test]
    fn sectors_are_orthogonal_and_compose() {
        for s in [0, 1, 5, 20, 60] {
            let u = beam_splitter_sector(0.37, s);
            let err = (&u * u.transpose() - DMatrix::identity(s + 1, s + 1)).amax();
            assert!(err < 1e-12, "s = {s}: {err}");
            let v = beam_splitter_sector(-0.37, s);
            assert!((&u * &v - DMatrix::identity(s + 1, s + 1)).amax() < 1e-12);
            assert!((beam_splitter_sector(0.0, s) - DMatrix::identity(s + 1, s + 1)).amax() < 1e-13);
        }
        let a = beam_splitter_sector(0.2, 7);
        let b = beam_splitter_sector(0.5, 7);
        assert!((&a * &b - beam_splitter_sector(0.7, 7)).amax() < 1e-12);
    }

    fn random_state(seed: &[f64], n_max: usize) -> FockStateVector {
        let basis = FockBasis::new(3, n_max);
        let v = DVector::from_iterator(
            basis.dim(),
            (0..basis.dim()).map(|i| {
                let a = seed[i % seed.len()] * (i as f64 + 1.0).sin();
                let b = seed[(i + 1) % seed.len()] * (i as f64 * 0.7).cos();
                C64::new(a, b)
            }),
        );
        let norm = v.norm();
        FockStateVector::new(basis, v / C64::new(norm, 0.0))
    }

    proptest! {
        #[test]
        fn unitary_and_number_conserving(
            seed in proptest::collection::vec(-1.0f64..1.0, 5),
            theta in -3.0f64..3.0,
        ) {
            prop_assume!(seed.iter().any(|v| v.abs() > 1e-3));
            let psi = random_state(&seed, 6);
            let out = beam_splitter(&psi, 0, 2, theta).unwrap();
            prop_assert!((out.norm() - 1.0).abs() < 1e-12);
            // weight of every (total in pair, spectator) block is preserved
            let basis = psi.basis();
            let mut before = std::collections::HashMap::new();
            let mut after = std::collections::HashMap::new();
            for i in 0..basis.dim() {
                let key = (basis.count(i, 0) + basis.count(i, 2), basis.count(i, 1));
                *before.entry(key).or_insert(0.0) += psi.amplitudes()[i].norm_sqr();
                *after.entry(key).or_insert(0.0) += out.amplitudes()[i].norm_sqr();
            }
            for (k, v) in before {
                prop_assert!((v - after[&k]).abs() < 1e-12);
            }
        }
    }
}
