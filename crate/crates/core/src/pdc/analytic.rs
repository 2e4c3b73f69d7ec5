use std::collections::BTreeMap;

use num_complex::Complex64;

use super::{choose_cutoff, PdcParams, TruncationPolicy};
use crate::error::{Error, Result};
use crate::fock::{normalize, FockIndex, TwoModeState};
use crate::math::binomial;
use crate::scs::{seed_coefficients, ScsParams};

#[derive(Debug, Clone, PartialEq)]
pub struct AnalyticEvolution {
    /// Normalized output state.
    pub state: TwoModeState,
    pub cutoff: usize,
    /// `1 - <psi|psi>` of the truncated expansion before renormalization.
    pub norm_deficit: f64,
}

/// Output state via the disentangled expansion, with the cutoff chosen by
/// [`choose_cutoff`].
pub fn evolve_analytic(
    seed: &ScsParams,
    pdc: &PdcParams,
    policy: &TruncationPolicy,
) -> Result<AnalyticEvolution> {
    let cutoff = choose_cutoff(seed.photons, pdc, policy)?;
    evolve_coefficients(&seed_coefficients(seed), seed.photons, pdc, cutoff, policy)
}

/// Disentangled expansion of `U sum_m c_m |m, M-m>` on an explicit per-mode
/// cutoff.
///
/// Every `(m, q, p)` term with both output indices inside the cutoff is
/// accumulated coherently into `|m-q+p, M-m-q+p>`, where
/// `q <= min(m, M-m)` counts pairs removed by `L-` and `p` pairs added by
/// `L+`.
pub fn evolve_coefficients(
    coeffs: &[Complex64],
    photons: usize,
    pdc: &PdcParams,
    cutoff: usize,
    policy: &TruncationPolicy,
) -> Result<AnalyticEvolution> {
    if coeffs.len() != photons + 1 {
        return Err(Error::InvalidParams(format!(
            "expected {} seed coefficients, got {}",
            photons + 1,
            coeffs.len()
        )));
    }
    if cutoff < photons {
        return Err(Error::InvalidParams(format!(
            "cutoff {cutoff} below seed photon number {photons}"
        )));
    }
    let t = pdc.r().tanh();
    let inv_ch = 1.0 / pdc.r().cosh();
    let theta = pdc.theta();

    let mut amps: BTreeMap<FockIndex, Complex64> = BTreeMap::new();
    for (m, &c_m) in coeffs.iter().enumerate() {
        if c_m == Complex64::new(0.0, 0.0) {
            continue;
        }
        let idler = photons - m;
        let beta = m.min(idler);
        for q in 0..=beta {
            let sign = if q % 2 == 0 { 1.0 } else { -1.0 };
            let removed = sign
                * (binomial(m, q) * binomial(idler, q)).sqrt()
                * inv_ch.powi((photons - 2 * q + 1) as i32);
            let (base_s, base_i) = (m - q, idler - q);
            let last_p = cutoff - base_s.max(base_i);
            for p in 0..=last_p {
                let weight = t.powi((p + q) as i32);
                if weight == 0.0 && p + q > 0 {
                    break;
                }
                let created = (binomial(base_s + p, p) * binomial(base_i + p, p)).sqrt();
                let phase = Complex64::from_polar(1.0, (p as f64 - q as f64) * theta);
                let term = c_m * phase * (removed * created * weight);
                *amps.entry(FockIndex::new(base_s + p, base_i + p)).or_default() += term;
            }
        }
    }

    let raw = TwoModeState::from_map_unchecked(cutoff, cutoff, amps);
    let norm_deficit = 1.0 - raw.norm_sqr();
    if norm_deficit > policy.leakage_bound() {
        return Err(Error::LeakageExceeded {
            leakage: norm_deficit,
            bound: policy.leakage_bound(),
            cutoff,
        });
    }
    Ok(AnalyticEvolution {
        state: normalize(&raw)?,
        cutoff,
        norm_deficit,
    })
}
