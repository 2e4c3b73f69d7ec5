//! Entanglement and photon statistics of pure two-mode states.
//!
//! Expectation values assume a unit-norm input. Quantities whose
//! denominator is a vanishing mean photon number are `None`.

use std::collections::{BTreeMap, HashMap};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::{FockIndex, Mode, TwoModeState};
use crate::math::CompensatedSum;

const NORM_TOLERANCE: f64 = 1e-10;

/// Single-mode density matrix, stored sparsely.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    dim: usize,
    entries: BTreeMap<(usize, usize), Complex64>,
}

impl DensityMatrix {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries.get(&(row, col)).copied().unwrap_or_default()
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|n| self.get(n, n)).sum()
    }

    /// `Tr(rho^2) = sum |rho_ij|^2` for Hermitian `rho`.
    pub fn purity(&self) -> f64 {
        self.entries
            .values()
            .map(|z| z.norm_sqr())
            .collect::<CompensatedSum>()
            .value()
    }

    pub fn hermiticity_error(&self) -> f64 {
        self.entries
            .iter()
            .map(|(&(r, c), z)| (z - self.get(c, r).conj()).norm())
            .fold(0.0, f64::max)
    }

    pub fn to_dense(&self) -> DMatrix<Complex64> {
        let mut m = DMatrix::zeros(self.dim, self.dim);
        for (&(r, c), z) in &self.entries {
            m[(r, c)] = *z;
        }
        m
    }

    /// Smallest eigenvalue of the dense Hermitian matrix.
    pub fn min_eigenvalue(&self) -> f64 {
        let dense = self.to_dense();
        let h = (&dense + dense.adjoint()) * Complex64::new(0.5, 0.0);
        h.symmetric_eigenvalues().iter().copied().fold(f64::INFINITY, f64::min)
    }
}

fn require_normalized(state: &TwoModeState) -> Result<()> {
    let norm_sqr = state.norm_sqr();
    if (norm_sqr - 1.0).abs() > NORM_TOLERANCE {
        return Err(Error::NotNormalized { norm_sqr });
    }
    Ok(())
}

/// Partial trace over the mode not kept:
/// `rho[n, n'] = sum_k psi[n, k] conj(psi[n', k])`.
pub fn reduced_density(state: &TwoModeState, keep: Mode) -> Result<DensityMatrix> {
    require_normalized(state)?;
    let traced = keep.other();
    let mut groups: HashMap<usize, Vec<(usize, Complex64)>> = HashMap::new();
    for (k, amp) in state.iter() {
        groups
            .entry(k.get(traced))
            .or_default()
            .push((k.get(keep), amp));
    }
    let mut acc: HashMap<(usize, usize), Complex64> = HashMap::new();
    for members in groups.values() {
        for &(row, a) in members {
            for &(col, b) in members {
                *acc.entry((row, col)).or_default() += a * b.conj();
            }
        }
    }
    Ok(DensityMatrix {
        dim: state.cutoff(keep) + 1,
        entries: acc.into_iter().collect(),
    })
}

/// `1 - Tr(rho^2)`.
pub fn linear_entropy(rho: &DensityMatrix) -> f64 {
    1.0 - rho.purity()
}

/// `(<n>, <n^2>)` of one mode.
pub fn photon_moments(state: &TwoModeState, mode: Mode) -> (f64, f64) {
    let mut first = CompensatedSum::default();
    let mut second = CompensatedSum::default();
    for (k, amp) in state.iter() {
        let n = k.get(mode) as f64;
        let p = amp.norm_sqr();
        first.add(n * p);
        second.add(n * n * p);
    }
    (first.value(), second.value())
}

pub fn mean_photon(state: &TwoModeState, mode: Mode) -> f64 {
    photon_moments(state, mode).0
}

/// Mandel parameter `(Var(n) - <n>) / <n>`; `None` when `<n> = 0`.
pub fn mandel_q(state: &TwoModeState, mode: Mode) -> Option<f64> {
    let (mean, second) = photon_moments(state, mode);
    if mean == 0.0 {
        return None;
    }
    let variance = second - mean * mean;
    Some((variance - mean) / mean)
}

/// `<n_s n_i> / (<n_s> <n_i>)`; `None` when either mean vanishes.
pub fn cross_correlation(state: &TwoModeState) -> Option<f64> {
    let ns = mean_photon(state, Mode::Signal);
    let ni = mean_photon(state, Mode::Idler);
    if ns == 0.0 || ni == 0.0 {
        return None;
    }
    let joint: CompensatedSum = state
        .iter()
        .map(|(k, a)| (k.n_s * k.n_i) as f64 * a.norm_sqr())
        .collect();
    Some(joint.value() / (ns * ni))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhotonStatistics {
    SubPoissonian,
    Poissonian,
    SuperPoissonian,
}

impl PhotonStatistics {
    /// Sign of `q`, treating `|q| <= tol` as Poissonian.
    pub fn classify(q: f64, tol: f64) -> Self {
        if q.abs() <= tol {
            PhotonStatistics::Poissonian
        } else if q < 0.0 {
            PhotonStatistics::SubPoissonian
        } else {
            PhotonStatistics::SuperPoissonian
        }
    }
}

/// Joint photon-number distribution `P[n, n'] = |psi(n, n')|^2`; entries
/// not stored are zero.
#[derive(Debug, Clone, PartialEq)]
pub struct JointDistribution {
    cutoff_s: usize,
    cutoff_i: usize,
    probs: BTreeMap<FockIndex, f64>,
}

impl JointDistribution {
    pub fn get(&self, n_s: usize, n_i: usize) -> f64 {
        self.probs
            .get(&FockIndex::new(n_s, n_i))
            .copied()
            .unwrap_or(0.0)
    }

    pub fn cutoff_s(&self) -> usize {
        self.cutoff_s
    }

    pub fn cutoff_i(&self) -> usize {
        self.cutoff_i
    }

    pub fn iter(&self) -> impl Iterator<Item = (FockIndex, f64)> + '_ {
        self.probs.iter().map(|(k, p)| (*k, *p))
    }

    pub fn total(&self) -> f64 {
        self.probs.values().copied().collect::<CompensatedSum>().value()
    }

    pub fn marginal(&self, mode: Mode) -> Vec<f64> {
        let len = match mode {
            Mode::Signal => self.cutoff_s,
            Mode::Idler => self.cutoff_i,
        } + 1;
        let mut out = vec![0.0; len];
        for (k, p) in &self.probs {
            out[k.get(mode)] += p;
        }
        out
    }

    /// First moment of the marginal distribution.
    pub fn first_moment(&self, mode: Mode) -> f64 {
        self.marginal(mode)
            .iter()
            .enumerate()
            .map(|(n, p)| n as f64 * p)
            .collect::<CompensatedSum>()
            .value()
    }

    /// Largest entry; ties resolve to the lexicographically first index.
    pub fn argmax(&self) -> Option<(FockIndex, f64)> {
        self.iter()
            .fold(None, |best: Option<(FockIndex, f64)>, (k, p)| match best {
                Some((_, bp)) if bp >= p => best,
                _ => Some((k, p)),
            })
    }
}

pub fn joint_distribution(state: &TwoModeState) -> JointDistribution {
    JointDistribution {
        cutoff_s: state.cutoff_s(),
        cutoff_i: state.cutoff_i(),
        probs: state.iter().map(|(k, a)| (k, a.norm_sqr())).collect(),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ObservableReport {
    /// Linear entropy of the signal reduced state.
    pub entropy: f64,
    pub n_s: f64,
    pub n_i: f64,
    pub q_s: Option<f64>,
    pub q_i: Option<f64>,
    pub g2: Option<f64>,
    pub joint: JointDistribution,
}

impl ObservableReport {
    pub fn measure(state: &TwoModeState) -> Result<Self> {
        let rho = reduced_density(state, Mode::Signal)?;
        Ok(Self {
            entropy: linear_entropy(&rho),
            n_s: mean_photon(state, Mode::Signal),
            n_i: mean_photon(state, Mode::Idler),
            q_s: mandel_q(state, Mode::Signal),
            q_i: mandel_q(state, Mode::Idler),
            g2: cross_correlation(state),
            joint: joint_distribution(state),
        })
    }

    /// Scalar observables in report-column order `S, ns, ni, Qs, Qi, g2`.
    pub fn scalars(&self) -> [Option<f64>; 6] {
        [
            Some(self.entropy),
            Some(self.n_s),
            Some(self.n_i),
            self.q_s,
            self.q_i,
            self.g2,
        ]
    }
}
