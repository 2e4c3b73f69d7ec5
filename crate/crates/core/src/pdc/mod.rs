//! The down-conversion unitary `exp(tau L+ - tau* L-)` with
//! `L+ = a_s† a_i†`, `L- = a_s a_i`, `tau = r e^{i theta}`.
//!
//! Two independent routes produce the output state:
//! [`evolve_analytic`] assembles the disentangled closed-form expansion,
//! [`evolve_numeric`] exponentiates the generator matrix directly.

mod analytic;
mod numeric;
mod su11;

pub use analytic::{evolve_analytic, evolve_coefficients, AnalyticEvolution};
pub use numeric::{evolve_numeric, generator_matrix, NumericEvolution};
pub use su11::{ladder_matrices, su11_commutator_check, LadderMatrices, Su11Report};

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::math::{binomial, CompensatedSum};

/// Rounding allowance added to every probability-tail bound.
pub const NUMERICAL_NOISE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PdcParams {
    r: f64,
    theta: f64,
}

impl PdcParams {
    /// `theta` is reduced to `[0, 2pi)`.
    pub fn new(r: f64, theta: f64) -> Result<Self> {
        if !r.is_finite() || r < 0.0 {
            return Err(Error::InvalidParams(format!(
                "pump parameter r must be finite and >= 0, got {r}"
            )));
        }
        if !theta.is_finite() {
            return Err(Error::InvalidParams(format!("theta must be finite, got {theta}")));
        }
        let mut theta = theta.rem_euclid(TAU);
        if theta >= TAU {
            theta = 0.0;
        }
        Ok(Self { r, theta })
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn tau(&self) -> Complex64 {
        Complex64::from_polar(self.r, self.theta)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationPolicy {
    /// Largest admissible neglected probability.
    pub tail_tol: f64,
    /// Hard cap on the number of created pairs kept in the expansion.
    pub max_pairs: usize,
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        Self {
            tail_tol: 1e-12,
            max_pairs: 200,
        }
    }
}

impl TruncationPolicy {
    pub fn new(tail_tol: f64, max_pairs: usize) -> Result<Self> {
        if !(tail_tol > 0.0 && tail_tol < 1.0) {
            return Err(Error::InvalidParams(format!(
                "tail_tol must lie in (0, 1), got {tail_tol}"
            )));
        }
        if max_pairs < 1 {
            return Err(Error::InvalidParams("max_pairs must be >= 1".into()));
        }
        Ok(Self {
            tail_tol,
            max_pairs,
        })
    }

    /// Upper bound on the norm deficit accepted from a truncated evolution.
    pub fn leakage_bound(&self) -> f64 {
        self.tail_tol + NUMERICAL_NOISE
    }
}

/// Magnitude of the output amplitude of `U |m, M-m>` at
/// `|m + s, M - m + s>`, without the `e^{i s theta}` phase:
///
/// `sum_q (-1)^q sqrt(C(m,q) C(M-m,q) C(m+s,q+s) C(M-m+s,q+s))
///  tanh(r)^{2q+s} cosh(r)^{-(M-2q+1)}` over `max(0,-s) <= q <= min(m, M-m)`.
pub(crate) fn shifted_amplitude(m: usize, photons: usize, shift: i64, r: f64) -> f64 {
    let idler = photons - m;
    let beta = m.min(idler) as i64;
    let t = r.tanh();
    let inv_ch = 1.0 / r.cosh();
    let mut acc = 0.0;
    for q in (-shift).max(0)..=beta {
        let p = q + shift;
        let (qu, pu) = (q as usize, p as usize);
        let comb = binomial(m, qu)
            * binomial(idler, qu)
            * binomial(m - qu + pu, pu)
            * binomial(idler - qu + pu, pu);
        let sign = if q % 2 == 0 { 1.0 } else { -1.0 };
        acc += sign
            * comb.sqrt()
            * t.powi((p + q) as i32)
            * inv_ch.powi((photons as i64 - 2 * q + 1) as i32);
    }
    acc
}

/// Terms below `tail_tol * QUIET_FACTOR` count as negligible when scanning
/// the pair expansion forward.
const QUIET_FACTOR: f64 = 1e-6;
/// Consecutive negligible terms required before the scan stops, so that an
/// isolated node of an alternating sum cannot end it early.
const QUIET_RUN: usize = 8;

/// Per-mode cutoff `M + P`, with `P` the smallest pair count whose
/// neglected probability, weighted by `(1 + n)^2` with `n` the larger
/// occupation of each neglected output, is below `tail_tol` for every
/// basis input `|m, M-m>`.
///
/// The weight bounds the truncation error of second moments as well as of
/// the norm. The per-shift probabilities are scanned forward until they
/// become negligible and the weighted tail is then summed backwards, which
/// avoids the cancellation of `1 - kept`. Outputs of distinct `m` are
/// orthogonal (they live on distinct `n_s - n_i` diagonals), so the bound
/// holds for any seed on the subspace.
pub fn choose_cutoff(photons: usize, pdc: &PdcParams, policy: &TruncationPolicy) -> Result<usize> {
    if photons < 1 {
        return Err(Error::InvalidParams("M must be >= 1".into()));
    }
    let mut pairs = 0usize;
    for m in 0..=photons {
        let widest = m.max(photons - m);
        let beta = m.min(photons - m) as i64;
        // largest shift admitted by the pair cap
        let cap_shift = (photons + policy.max_pairs - widest) as i64;
        let weight = |shift: i64| (1.0 + (widest as i64 + shift) as f64).powi(2);

        let mut weighted = Vec::new();
        let mut kept = CompensatedSum::default();
        let mut quiet = 0;
        let mut shift = -beta;
        let converged = loop {
            let p = shifted_amplitude(m, photons, shift, pdc.r).powi(2);
            kept.add(p);
            weighted.push(p * weight(shift));
            quiet = if p * weight(shift) < policy.tail_tol * QUIET_FACTOR {
                quiet + 1
            } else {
                0
            };
            if quiet >= QUIET_RUN && 1.0 - kept.value() < 1e-10 {
                break true;
            }
            if shift >= cap_shift {
                break false;
            }
            shift += 1;
        };

        // probability beyond the scan, only relevant when the cap stopped it
        let mut tail = if converged {
            0.0
        } else {
            (1.0 - kept.value()).max(0.0) * weight(shift + 1)
        };
        let mut keep = weighted.len() - 1;
        while keep > 0 && tail + weighted[keep] < policy.tail_tol {
            tail += weighted[keep];
            keep -= 1;
        }
        if tail >= policy.tail_tol {
            return Err(Error::PairCapExceeded {
                max_pairs: policy.max_pairs,
                r: pdc.r,
                tail,
            });
        }
        let last_shift = keep as i64 - beta;
        let needed = (last_shift + widest as i64 - photons as i64).max(0) as usize;
        if needed > policy.max_pairs {
            return Err(Error::PairCapExceeded {
                max_pairs: policy.max_pairs,
                r: pdc.r,
                tail,
            });
        }
        pairs = pairs.max(needed);
    }
    Ok(photons + pairs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_validation() {
        assert!(PdcParams::new(-0.1, 0.0).is_err());
        assert!(PdcParams::new(f64::NAN, 0.0).is_err());
        let p = PdcParams::new(0.5, -std::f64::consts::FRAC_PI_2).unwrap();
        assert!((p.theta() - 1.5 * std::f64::consts::PI).abs() < 1e-15);
        assert_eq!(PdcParams::new(0.5, TAU).unwrap().theta(), 0.0);

        assert!(TruncationPolicy::new(0.0, 10).is_err());
        assert!(TruncationPolicy::new(1.0, 10).is_err());
        assert!(TruncationPolicy::new(1e-6, 0).is_err());
        let d = TruncationPolicy::default();
        assert_eq!((d.tail_tol, d.max_pairs), (1e-12, 200));
    }

    #[test]
    fn identity_needs_no_pairs() {
        let pdc = PdcParams::new(0.0, 0.0).unwrap();
        for m in 1..=6 {
            assert_eq!(choose_cutoff(m, &pdc, &TruncationPolicy::default()).unwrap(), m);
        }
    }

    #[test]
    fn vacuum_like_column_is_squeezed_vacuum() {
        // M = 1, m = 0, shift s: |0,1> -> |s, 1+s>; for q = 0 only
        // amplitude = sqrt(C(1+s, s)) t^s / cosh^2 = sqrt(1+s) t^s / cosh^2
        let r: f64 = 0.7;
        for s in 0..6 {
            let expected = ((1 + s) as f64).sqrt() * r.tanh().powi(s as i32) / r.cosh().powi(2);
            let got = shifted_amplitude(0, 1, s, r);
            assert!((got - expected).abs() < 1e-15, "{s}: {got} vs {expected}");
        }
    }

    #[test]
    fn shifted_amplitudes_are_unit_norm() {
        for &r in &[0.1, 0.5, 1.0] {
            for photons in 1..=5 {
                for m in 0..=photons {
                    let beta = m.min(photons - m) as i64;
                    let total: f64 = (-beta..400)
                        .map(|s| shifted_amplitude(m, photons, s, r).powi(2))
                        .sum();
                    assert!((total - 1.0).abs() < 1e-13, "r={r} M={photons} m={m}: {total}");
                }
            }
        }
    }

    #[test]
    fn cutoff_grows_with_r_and_respects_cap() {
        let policy = TruncationPolicy::default();
        let small = choose_cutoff(4, &PdcParams::new(0.1, 0.0).unwrap(), &policy).unwrap();
        let large = choose_cutoff(4, &PdcParams::new(1.0, 0.0).unwrap(), &policy).unwrap();
        assert!(matches!(
            choose_cutoff(4, &PdcParams::new(1.5, 0.0).unwrap(), &policy),
            Err(Error::PairCapExceeded { max_pairs: 200, .. })
        ));
        let roomy = TruncationPolicy::new(1e-12, 1000).unwrap();
        assert!(choose_cutoff(4, &PdcParams::new(1.5, 0.0).unwrap(), &roomy).unwrap() > large);
        assert!(small - 4 < 10, "P = {}", small - 4);
        assert!(large > small);

        let tight = TruncationPolicy::new(1e-12, 5).unwrap();
        let err = choose_cutoff(4, &PdcParams::new(1.5, 0.0).unwrap(), &tight).unwrap_err();
        assert!(matches!(err, Error::PairCapExceeded { max_pairs: 5, .. }));
        assert_eq!(err.exit_code(), 3);
    }
}
