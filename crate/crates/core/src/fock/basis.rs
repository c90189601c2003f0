use std::sync::Arc;

use crate::config::Scheme;
use crate::error::{Error, Result};

/// Largest neglected input mass accepted by [`FockCutoff::new`].
pub const MAX_NEGLECTED_MASS: f64 = 1e-10;
/// Neglected mass targeted by [`FockCutoff::automatic`]; pointwise densities
/// converge with its square root.
pub const AUTO_NEGLECTED_MASS: f64 = 1e-16;

/// Photon-number truncation at `n_max` photons per mode.
///
/// The basis built from it keeps every number state whose total photon
/// number is at most [`FockCutoff::photon_limit`] `= 2 n_max`: the smallest
/// space containing all states with at most `n_max` photons in each of two
/// modes that beam splitters map into itself. Loss and photon counting only
/// lower the photon number, so the networks of this crate stay inside it and
/// the only approximation is the input-state tail.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FockCutoff {
    n_max: usize,
}

impl FockCutoff {
    /// Validates `n_max` against the input of `scheme` at squeezing `lambda`.
    pub fn new(n_max: usize, lambda: f64, scheme: Scheme) -> Result<Self> {
        if n_max < 2 {
            return Err(Error::InvalidParameter {
                name: "cutoff",
                value: n_max as f64,
                reason: "must be at least 2",
            });
        }
        let neglected = neglected_input_mass(lambda, 2 * n_max, scheme);
        if neglected >= MAX_NEGLECTED_MASS {
            return Err(Error::CutoffTooSmall { n_max, neglected });
        }
        Ok(Self { n_max })
    }

    /// Smallest cutoff whose neglected input mass is below
    /// [`AUTO_NEGLECTED_MASS`].
    pub fn automatic(lambda: f64, scheme: Scheme) -> Self {
        let mut n_max = 2;
        while neglected_input_mass(lambda, 2 * n_max, scheme) >= AUTO_NEGLECTED_MASS {
            n_max += 1;
        }
        Self { n_max }
    }

    /// Cutoff without a truncation check, for states other than the inputs.
    pub fn unchecked(n_max: usize) -> Self {
        Self { n_max }
    }

    /// Photons per mode.
    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// Largest total photon number of the basis.
    pub fn photon_limit(&self) -> usize {
        2 * self.n_max
    }
}

/// `|c_2n|^2` of a squeezed vacuum for `n = 0, 1, ...` while `2n <= n_max`.
fn squeezed_populations(lambda: f64, n_max: usize) -> impl Iterator<Item = (usize, f64)> {
    let l2 = lambda * lambda;
    let mut p = (1.0 - l2).sqrt();
    (0..=n_max / 2).map(move |n| {
        let out = (2 * n, p);
        p *= l2 * (2 * n + 1) as f64 / (2 * n + 2) as f64;
        out
    })
}

/// Input probability mass above a total of `n_max` photons.
pub fn neglected_input_mass(lambda: f64, n_max: usize, scheme: Scheme) -> f64 {
    match scheme {
        Scheme::SingleMode => {
            // sum the tail directly; it is a series dominated by lambda^(2n)
            let l2 = lambda * lambda;
            let (_, mut term) = squeezed_populations(lambda, n_max).last().unwrap();
            let mut n = n_max / 2;
            let mut tail = 0.0;
            loop {
                term *= l2 * (2 * n + 1) as f64 / (2 * n + 2) as f64;
                n += 1;
                tail += term;
                if term <= tail * 1e-17 || term == 0.0 {
                    return tail;
                }
            }
        }
        // Total photon number 2k of a two-mode squeezed vacuum has
        // probability (1 - lambda^2) lambda^(2k).
        Scheme::TwoMode => (lambda * lambda).powi((n_max / 2 + 1) as i32),
    }
}

/// Number states of `modes` modes with total photon number `<= n_max`,
/// ordered by total photon number, then lexicographically with the first
/// mode varying slowest.
#[derive(Debug)]
pub struct FockBasis {
    modes: usize,
    n_max: usize,
    occupations: Vec<u16>,
    lookup: Vec<u32>,
}

const ABSENT: u32 = u32::MAX;

impl FockBasis {
    pub fn new(modes: usize, n_max: usize) -> Arc<Self> {
        assert!(modes >= 1);
        let side = n_max + 1;
        let mut lookup = vec![ABSENT; side.pow(modes as u32)];
        let mut occupations = Vec::new();
        let mut count = 0u32;
        for total in 0..=n_max {
            let mut occ = vec![0usize; modes];
            enumerate(&mut occ, 0, total, &mut |o| {
                occupations.extend(o.iter().map(|&n| n as u16));
                lookup[flat(o, side)] = count;
                count += 1;
            });
        }
        Arc::new(Self {
            modes,
            n_max,
            occupations,
            lookup,
        })
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn dim(&self) -> usize {
        self.occupations.len() / self.modes
    }

    pub fn occupation(&self, index: usize) -> &[u16] {
        &self.occupations[index * self.modes..(index + 1) * self.modes]
    }

    pub fn count(&self, index: usize, mode: usize) -> usize {
        self.occupations[index * self.modes + mode] as usize
    }

    pub fn total(&self, index: usize) -> usize {
        self.occupation(index).iter().map(|&n| n as usize).sum()
    }

    pub fn index(&self, occupation: &[usize]) -> Option<usize> {
        if occupation.len() != self.modes || occupation.iter().sum::<usize>() > self.n_max {
            return None;
        }
        match self.lookup[flat(occupation, self.n_max + 1)] {
            ABSENT => None,
            i => Some(i as usize),
        }
    }

    /// Index of the state with `mode`'s count replaced by `count`.
    pub fn with_count(&self, index: usize, mode: usize, count: usize) -> Option<usize> {
        let mut occ: Vec<usize> = self.occupation(index).iter().map(|&n| n as usize).collect();
        occ[mode] = count;
        self.index(&occ)
    }

    pub(crate) fn check_mode(&self, mode: usize) -> Result<()> {
        if mode < self.modes {
            Ok(())
        } else {
            Err(Error::InvalidMode {
                mode,
                modes: self.modes,
            })
        }
    }
}

fn flat(occ: &[usize], side: usize) -> usize {
    occ.iter().fold(0, |acc, &n| acc * side + n)
}

// Calls `f` for every occupation of modes `pos..` summing to `left`.
fn enumerate(occ: &mut [usize], pos: usize, left: usize, f: &mut dyn FnMut(&[usize])) {
    if pos + 1 == occ.len() {
        occ[pos] = left;
        f(occ);
        return;
    }
    for n in (0..=left).rev() {
        occ[pos] = n;
        enumerate(occ, pos + 1, left - n, f);
    }
    occ[pos] = 0;
}
