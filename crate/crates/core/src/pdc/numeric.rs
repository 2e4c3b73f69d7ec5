use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::{ladder_matrices, PdcParams, TruncationPolicy};
use crate::error::{Error, Result};
use crate::fock::{FockIndex, TwoModeState};
use crate::math::CompensatedSum;

#[derive(Debug, Clone, PartialEq)]
pub struct NumericEvolution {
    /// Output projected onto the requested cutoff; not renormalized.
    pub state: TwoModeState,
    pub cutoff: usize,
    /// Probability that left the requested cutoff.
    pub leakage: f64,
}

/// Dense generator `tau L+ - tau* L-` on the full truncated two-mode space,
/// flattened as `n_s * (cutoff + 1) + n_i`.
pub fn generator_matrix(cutoff: usize, pdc: &PdcParams) -> DMatrix<Complex64> {
    let l = ladder_matrices(cutoff);
    let tau = pdc.tau();
    l.raise * tau - l.lower * tau.conj()
}

/// Generator restricted to one `n_s - n_i = diff` chain inside a box of
/// side `work`, in the gauge `|j> -> e^{i j theta} |j>` that makes it the
/// real antisymmetric tridiagonal `r (L+ - L-)`. Chain position `j` is
/// `|j + max(diff, 0), j + max(-diff, 0)>`.
fn chain_generator(diff: i64, work: usize, r: f64) -> (DMatrix<f64>, usize, usize) {
    let off_s = diff.max(0) as usize;
    let off_i = (-diff).max(0) as usize;
    let len = work + 1 - off_s.max(off_i);
    let mut g = DMatrix::<f64>::zeros(len, len);
    for j in 0..len - 1 {
        let coupling = r * (((j + off_s + 1) * (j + off_i + 1)) as f64).sqrt();
        g[(j + 1, j)] = coupling;
        g[(j, j + 1)] = -coupling;
    }
    (g, off_s, off_i)
}

/// Applies `exp(tau L+ - tau* L-)` by dense matrix exponentiation.
///
/// The input is embedded in a working box of twice the requested cutoff so
/// that the reflecting boundary of the truncated generator sits far beyond
/// the reported region. The generator conserves `n_s - n_i`, so it is
/// block-diagonal over those chains; each block is conjugated to a real
/// matrix by a diagonal phase and exponentiated separately. The result is projected back onto `cutoff`; the projected-out
/// probability is the reported leakage.
pub fn evolve_numeric(
    input: &TwoModeState,
    pdc: &PdcParams,
    cutoff: usize,
    policy: &TruncationPolicy,
) -> Result<NumericEvolution> {
    let norm_sqr = input.norm_sqr();
    if (norm_sqr - 1.0).abs() > 1e-10 {
        return Err(Error::NotNormalized { norm_sqr });
    }
    if cutoff < input.cutoff_s() || cutoff < input.cutoff_i() {
        return Err(Error::InvalidParams(format!(
            "cutoff {cutoff} below input cutoffs ({}, {})",
            input.cutoff_s(),
            input.cutoff_i()
        )));
    }
    let work = 2 * cutoff.max(1);
    let theta = pdc.theta();

    let mut chains: BTreeMap<i64, Vec<(FockIndex, Complex64)>> = BTreeMap::new();
    for (k, v) in input.iter() {
        chains
            .entry(k.n_s as i64 - k.n_i as i64)
            .or_default()
            .push((k, v));
    }

    let mut out = BTreeMap::new();
    let mut leaked = CompensatedSum::default();
    for (diff, entries) in chains {
        let (g, off_s, off_i) = chain_generator(diff, work, pdc.r());
        let len = g.nrows();
        let mut re = DVector::<f64>::zeros(len);
        let mut im = DVector::<f64>::zeros(len);
        for (k, amp) in entries {
            let j = k.n_s - off_s;
            let u = amp * Complex64::from_polar(1.0, -(j as f64) * theta);
            re[j] = u.re;
            im[j] = u.im;
        }
        let u = g.exp();
        let (re, im) = (&u * re, &u * im);
        for j in 0..len {
            let amp = Complex64::new(re[j], im[j]) * Complex64::from_polar(1.0, j as f64 * theta);
            let (n_s, n_i) = (j + off_s, j + off_i);
            if n_s <= cutoff && n_i <= cutoff {
                out.insert(FockIndex::new(n_s, n_i), amp);
            } else {
                leaked.add(amp.norm_sqr());
            }
        }
    }

    let leakage = leaked.value();
    if leakage > policy.leakage_bound() {
        return Err(Error::LeakageExceeded {
            leakage,
            bound: policy.leakage_bound(),
            cutoff,
        });
    }
    Ok(NumericEvolution {
        state: TwoModeState::from_map_unchecked(cutoff, cutoff, out),
        cutoff,
        leakage,
    })
}
