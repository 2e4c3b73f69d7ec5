//! Two-mode sphere coherent states.
//!
//! `|z; lambda, M> = N^{-1/2} sum_m sqrt(C(M, m)) [g(lambda, m)]! z^m |m, M-m>`
//! with the curvature-dependent deformation `g` and its running product
//! `[g]!`. Signal carries `m` photons, idler `M - m`.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::{FockIndex, TwoModeState};
use crate::math::{binomial, CompensatedSum};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScsParams {
    pub lambda: f64,
    pub photons: usize,
    pub z: Complex64,
}

impl ScsParams {
    pub fn new(lambda: f64, photons: usize, z: Complex64) -> Result<Self> {
        if !lambda.is_finite() || lambda < 0.0 {
            return Err(Error::InvalidParams(format!(
                "curvature must be finite and >= 0, got {lambda}"
            )));
        }
        if photons < 1 {
            return Err(Error::InvalidParams("M must be >= 1".into()));
        }
        if !z.re.is_finite() || !z.im.is_finite() {
            return Err(Error::InvalidParams(format!("z must be finite, got {z}")));
        }
        Ok(Self { lambda, photons, z })
    }

    pub fn real(lambda: f64, photons: usize, z: f64) -> Result<Self> {
        Self::new(lambda, photons, Complex64::new(z, 0.0))
    }
}

/// `g(lambda, m) = sqrt(lambda (M+1-m) + s) sqrt(lambda m + s)` with
/// `s = sqrt(1 + lambda^2 / 4)`.
pub fn g_deform(lambda: f64, m: usize, photons: usize) -> f64 {
    debug_assert!(m <= photons);
    let s = (1.0 + lambda * lambda / 4.0).sqrt();
    (lambda * (photons + 1 - m) as f64 + s).sqrt() * (lambda * m as f64 + s).sqrt()
}

/// `[g(lambda, m)]! = prod_{k=1..m} g(lambda, k)`, equal to 1 for `m = 0`.
pub fn g_factorial(lambda: f64, m: usize, photons: usize) -> f64 {
    (1..=m).map(|k| g_deform(lambda, k, photons)).product()
}

/// Normalization `N = sum_m C(M, m) ([g]!)^2 |z|^{2m}`.
pub fn normalization(p: &ScsParams) -> f64 {
    unnormalized_weights(p, g_deform)
        .into_iter()
        .map(|w| w.norm_sqr())
        .collect::<CompensatedSum>()
        .value()
}

fn unnormalized_weights<G>(p: &ScsParams, g: G) -> Vec<Complex64>
where
    G: Fn(f64, usize, usize) -> f64,
{
    let big_m = p.photons;
    let mut gfact = 1.0;
    let mut zpow = Complex64::new(1.0, 0.0);
    let mut out = Vec::with_capacity(big_m + 1);
    for m in 0..=big_m {
        if m > 0 {
            gfact *= g(p.lambda, m, big_m);
            zpow *= p.z;
        }
        out.push(zpow * (binomial(big_m, m).sqrt() * gfact));
    }
    out
}

/// Normalized expansion coefficients `c_m` on `|m, M-m>`, `m = 0..=M`.
pub fn seed_coefficients(p: &ScsParams) -> Vec<Complex64> {
    seed_coefficients_with(p, g_deform)
}

/// [`seed_coefficients`] with a caller-supplied deformation function.
pub fn seed_coefficients_with<G>(p: &ScsParams, g: G) -> Vec<Complex64>
where
    G: Fn(f64, usize, usize) -> f64,
{
    let weights = unnormalized_weights(p, g);
    let norm: f64 = weights
        .iter()
        .map(|w| w.norm_sqr())
        .collect::<CompensatedSum>()
        .value();
    let inv = 1.0 / norm.sqrt();
    weights.into_iter().map(|w| w * inv).collect()
}

/// Two-mode SCS with both cutoffs equal to `M`.
pub fn build_scs(p: &ScsParams) -> TwoModeState {
    state_from_coefficients(p.photons, &seed_coefficients(p))
}

pub(crate) fn state_from_coefficients(photons: usize, coeffs: &[Complex64]) -> TwoModeState {
    let map: BTreeMap<FockIndex, Complex64> = coeffs
        .iter()
        .enumerate()
        .map(|(m, c)| (FockIndex::new(m, photons - m), *c))
        .collect();
    TwoModeState::from_map_unchecked(photons, photons, map)
}
