//! Truncated two-mode Fock space.
//!
//! A [`TwoModeState`] is an immutable, index-addressed set of complex
//! amplitudes over `|n_s, n_i>` with `n_s <= cutoff_s` and `n_i <= cutoff_i`.
//! Storage is sparse: exact zeros are never stored, and entries whose
//! magnitude falls below an optional drop threshold may be pruned.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_complex::Complex64;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::math::CompensatedSum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FockIndex {
    pub n_s: usize,
    pub n_i: usize,
}

impl FockIndex {
    pub const fn new(n_s: usize, n_i: usize) -> Self {
        Self { n_s, n_i }
    }

    pub fn get(&self, mode: Mode) -> usize {
        match mode {
            Mode::Signal => self.n_s,
            Mode::Idler => self.n_i,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Signal,
    Idler,
}

impl Mode {
    pub fn other(self) -> Mode {
        match self {
            Mode::Signal => Mode::Idler,
            Mode::Idler => Mode::Signal,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TwoModeState {
    cutoff_s: usize,
    cutoff_i: usize,
    amplitudes: BTreeMap<FockIndex, Complex64>,
}

/// Result of a creation operator: the truncated image plus the probability
/// weight of the input components that were pushed past the cutoff.
#[derive(Debug, Clone, PartialEq)]
pub struct Created {
    pub state: TwoModeState,
    pub dropped_norm: f64,
}

impl Created {
    pub fn exceeds(&self, leakage_bound: f64) -> bool {
        self.dropped_norm > leakage_bound
    }
}

impl TwoModeState {
    /// The zero vector on the given cutoffs.
    pub fn zero(cutoff_s: usize, cutoff_i: usize) -> Self {
        Self {
            cutoff_s,
            cutoff_i,
            amplitudes: BTreeMap::new(),
        }
    }

    /// Builds a state from `(index, amplitude)` pairs. Repeated indices are
    /// summed coherently.
    pub fn from_amplitudes<I>(cutoff_s: usize, cutoff_i: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (FockIndex, Complex64)>,
    {
        let mut state = Self::zero(cutoff_s, cutoff_i);
        for (idx, amp) in entries {
            state.check_index(idx)?;
            *state.amplitudes.entry(idx).or_default() += amp;
        }
        state.amplitudes.retain(|_, a| *a != Complex64::new(0.0, 0.0));
        Ok(state)
    }

    /// Crate-internal constructor for callers that already guarantee the
    /// indices lie within the cutoffs.
    pub(crate) fn from_map_unchecked(
        cutoff_s: usize,
        cutoff_i: usize,
        mut amplitudes: BTreeMap<FockIndex, Complex64>,
    ) -> Self {
        amplitudes.retain(|_, a| *a != Complex64::new(0.0, 0.0));
        debug_assert!(amplitudes
            .keys()
            .all(|k| k.n_s <= cutoff_s && k.n_i <= cutoff_i));
        Self {
            cutoff_s,
            cutoff_i,
            amplitudes,
        }
    }

    fn check_index(&self, idx: FockIndex) -> Result<()> {
        if idx.n_s > self.cutoff_s || idx.n_i > self.cutoff_i {
            return Err(Error::IndexOutOfCutoff {
                n_s: idx.n_s,
                n_i: idx.n_i,
                cutoff_s: self.cutoff_s,
                cutoff_i: self.cutoff_i,
            });
        }
        Ok(())
    }

    pub fn cutoff_s(&self) -> usize {
        self.cutoff_s
    }

    pub fn cutoff_i(&self) -> usize {
        self.cutoff_i
    }

    pub fn cutoff(&self, mode: Mode) -> usize {
        match mode {
            Mode::Signal => self.cutoff_s,
            Mode::Idler => self.cutoff_i,
        }
    }

    /// Amplitude at `(n_s, n_i)`; zero when absent or out of range.
    pub fn amplitude(&self, n_s: usize, n_i: usize) -> Complex64 {
        self.amplitudes
            .get(&FockIndex::new(n_s, n_i))
            .copied()
            .unwrap_or_default()
    }

    /// Stored entries in lexicographic `(n_s, n_i)` order.
    pub fn iter(&self) -> impl Iterator<Item = (FockIndex, Complex64)> + '_ {
        self.amplitudes.iter().map(|(k, v)| (*k, *v))
    }

    /// Number of stored (nonzero) amplitudes.
    pub fn support_len(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes
            .values()
            .map(|a| a.norm_sqr())
            .collect::<CompensatedSum>()
            .value()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        let amplitudes = self
            .amplitudes
            .iter()
            .map(|(k, v)| (*k, v * factor))
            .collect();
        Self::from_map_unchecked(self.cutoff_s, self.cutoff_i, amplitudes)
    }

    /// Copy with all amplitudes of magnitude below `threshold` removed.
    pub fn pruned(&self, threshold: f64) -> Self {
        let amplitudes = self
            .amplitudes
            .iter()
            .filter(|(_, v)| v.norm() >= threshold)
            .map(|(k, v)| (*k, *v))
            .collect();
        Self::from_map_unchecked(self.cutoff_s, self.cutoff_i, amplitudes)
    }

    /// Same amplitudes on larger cutoffs.
    pub fn embed(&self, cutoff_s: usize, cutoff_i: usize) -> Result<Self> {
        if cutoff_s < self.cutoff_s || cutoff_i < self.cutoff_i {
            return Err(Error::InvalidParams(format!(
                "cannot embed cutoffs ({}, {}) into smaller ({cutoff_s}, {cutoff_i})",
                self.cutoff_s, self.cutoff_i
            )));
        }
        Ok(Self {
            cutoff_s,
            cutoff_i,
            amplitudes: self.amplitudes.clone(),
        })
    }

    /// Orthogonal projection onto smaller cutoffs; returns the state and the
    /// discarded probability weight.
    pub fn project(&self, cutoff_s: usize, cutoff_i: usize) -> (Self, f64) {
        let mut lost = CompensatedSum::default();
        let mut kept = BTreeMap::new();
        for (k, v) in &self.amplitudes {
            if k.n_s <= cutoff_s && k.n_i <= cutoff_i {
                kept.insert(*k, *v);
            } else {
                lost.add(v.norm_sqr());
            }
        }
        (
            Self::from_map_unchecked(cutoff_s, cutoff_i, kept),
            lost.value(),
        )
    }

    pub fn to_json(&self) -> String {
        let mut out = String::new();
        write!(
            out,
            "{{\"cutoff_s\":{},\"cutoff_i\":{},\"amplitudes\":[",
            self.cutoff_s, self.cutoff_i
        )
        .unwrap();
        for (n, (k, v)) in self.amplitudes.iter().enumerate() {
            if n > 0 {
                out.push(',');
            }
            write!(
                out,
                "[{},{},{},{}]",
                k.n_s,
                k.n_i,
                format_f17(v.re),
                format_f17(v.im)
            )
            .unwrap();
        }
        out.push_str("]}");
        out
    }

    pub fn from_json(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct Raw {
            cutoff_s: usize,
            cutoff_i: usize,
            amplitudes: Vec<(usize, usize, f64, f64)>,
        }
        let raw: Raw = serde_json::from_str(text)?;
        Self::from_amplitudes(
            raw.cutoff_s,
            raw.cutoff_i,
            raw.amplitudes
                .into_iter()
                .map(|(s, i, re, im)| (FockIndex::new(s, i), Complex64::new(re, im))),
        )
    }
}

/// Float with 17 significant digits, valid as a JSON number.
pub(crate) fn format_f17(x: f64) -> String {
    if x == 0.0 {
        // normalise -0.0 as well
        return "0.0000000000000000e0".to_string();
    }
    format!("{x:.16e}")
}

/// Unit-norm basis state `|n_s, n_i>`.
pub fn basis_state(n_s: usize, n_i: usize, cutoff_s: usize, cutoff_i: usize) -> Result<TwoModeState> {
    TwoModeState::from_amplitudes(
        cutoff_s,
        cutoff_i,
        [(FockIndex::new(n_s, n_i), Complex64::new(1.0, 0.0))],
    )
}

/// `a |n> = sqrt(n) |n-1>` on the chosen mode. The result is unnormalized.
pub fn apply_annihilation(state: &TwoModeState, mode: Mode) -> TwoModeState {
    let mut out = BTreeMap::new();
    for (k, v) in state.iter() {
        let n = k.get(mode);
        if n == 0 {
            continue;
        }
        let target = match mode {
            Mode::Signal => FockIndex::new(n - 1, k.n_i),
            Mode::Idler => FockIndex::new(k.n_s, n - 1),
        };
        out.insert(target, v * (n as f64).sqrt());
    }
    TwoModeState::from_map_unchecked(state.cutoff_s, state.cutoff_i, out)
}

/// `a† |n> = sqrt(n+1) |n+1>` on the chosen mode; components that would
/// leave the cutoff are dropped and their input weight reported.
pub fn apply_creation(state: &TwoModeState, mode: Mode) -> Created {
    let cutoff = state.cutoff(mode);
    let mut dropped = CompensatedSum::default();
    let mut out = BTreeMap::new();
    for (k, v) in state.iter() {
        let n = k.get(mode);
        if n + 1 > cutoff {
            dropped.add(v.norm_sqr());
            continue;
        }
        let target = match mode {
            Mode::Signal => FockIndex::new(n + 1, k.n_i),
            Mode::Idler => FockIndex::new(k.n_s, n + 1),
        };
        out.insert(target, v * ((n + 1) as f64).sqrt());
    }
    Created {
        state: TwoModeState::from_map_unchecked(state.cutoff_s, state.cutoff_i, out),
        dropped_norm: dropped.value(),
    }
}

/// `<a|b>`, conjugate-linear in `a`. Cutoffs may differ.
pub fn inner_product(a: &TwoModeState, b: &TwoModeState) -> Complex64 {
    let (small, large, conj_small) = if a.amplitudes.len() <= b.amplitudes.len() {
        (a, b, true)
    } else {
        (b, a, false)
    };
    let mut re = CompensatedSum::default();
    let mut im = CompensatedSum::default();
    for (k, v) in &small.amplitudes {
        if let Some(w) = large.amplitudes.get(k) {
            let term = if conj_small { v.conj() * w } else { w.conj() * v };
            re.add(term.re);
            im.add(term.im);
        }
    }
    Complex64::new(re.value(), im.value())
}

pub fn normalize(state: &TwoModeState) -> Result<TwoModeState> {
    let norm = state.norm();
    if norm == 0.0 {
        return Err(Error::ZeroNorm);
    }
    Ok(state.scale(Complex64::new(1.0 / norm, 0.0)))
}

/// Normalized fidelity `|<a|b>|^2 / (<a|a><b|b>)`.
pub fn fidelity(a: &TwoModeState, b: &TwoModeState) -> f64 {
    let overlap = inner_product(a, b).norm_sqr();
    overlap / (a.norm_sqr() * b.norm_sqr())
}
