use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::algebra::{commutator, max_abs};
use crate::fock::{apply_annihilation, apply_creation, basis_state, Mode, TwoModeState};

/// `L+`, `L-`, `L0` on the full truncated space, flattened as
/// `n_s * (cutoff + 1) + n_i`.
#[derive(Debug, Clone)]
pub struct LadderMatrices {
    pub cutoff: usize,
    pub raise: DMatrix<Complex64>,
    pub lower: DMatrix<Complex64>,
    pub zero: DMatrix<Complex64>,
}

/// Builds the pair operators column by column by acting with the Fock-space
/// ladder operators on each basis state.
pub fn ladder_matrices(cutoff: usize) -> LadderMatrices {
    let dim = cutoff + 1;
    let n = dim * dim;
    let flat = |s: usize, i: usize| s * dim + i;
    let mut raise = DMatrix::<Complex64>::zeros(n, n);
    let mut lower = DMatrix::<Complex64>::zeros(n, n);
    let mut zero = DMatrix::<Complex64>::zeros(n, n);
    let scatter = |m: &mut DMatrix<Complex64>, col: usize, image: &TwoModeState| {
        for (k, a) in image.iter() {
            m[(flat(k.n_s, k.n_i), col)] = a;
        }
    };
    for s in 0..dim {
        for i in 0..dim {
            let col = flat(s, i);
            let ket = basis_state(s, i, cutoff, cutoff).expect("index within cutoff");
            let up = apply_creation(&apply_creation(&ket, Mode::Signal).state, Mode::Idler).state;
            let down = apply_annihilation(&apply_annihilation(&ket, Mode::Signal), Mode::Idler);
            scatter(&mut raise, col, &up);
            scatter(&mut lower, col, &down);
            zero[(col, col)] = Complex64::new((s + i + 1) as f64 / 2.0, 0.0);
        }
    }
    LadderMatrices {
        cutoff,
        raise,
        lower,
        zero,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Su11Report {
    pub cutoff: usize,
    /// `max |[L+, L-] + 2 L0|` over rows and columns with both occupations
    /// at least two below the cutoff.
    pub interior_res_pm: f64,
    /// `max |[L0, L+] - L+|` over the same block.
    pub interior_res_0p: f64,
    pub full_res_pm: f64,
    pub full_res_0p: f64,
}

pub fn su11_commutator_check(cutoff: usize) -> Su11Report {
    let l = ladder_matrices(cutoff);
    let pm = commutator(&l.raise, &l.lower) + &l.zero * Complex64::new(2.0, 0.0);
    let zp = commutator(&l.zero, &l.raise) - &l.raise;

    let dim = cutoff + 1;
    let interior: Vec<usize> = (0..dim * dim)
        .filter(|&k| k / dim + 2 <= cutoff && k % dim + 2 <= cutoff)
        .collect();
    let restricted_max = |m: &DMatrix<Complex64>| {
        let mut worst = 0.0f64;
        for &r in &interior {
            for &c in &interior {
                worst = worst.max(m[(r, c)].norm());
            }
        }
        worst
    };
    Su11Report {
        cutoff,
        interior_res_pm: restricted_max(&pm),
        interior_res_0p: restricted_max(&zp),
        full_res_pm: max_abs(&pm),
        full_res_0p: max_abs(&zp),
    }
}
