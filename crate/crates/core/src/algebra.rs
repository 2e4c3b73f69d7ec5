//! Curvature-deformed su(2) generators in the nonlinear two-boson
//! (Schwinger) realization, restricted to the invariant subspace
//! `{|m, M-m> : 0 <= m <= M}`.
//!
//! Matrices are indexed by the signal occupation `m`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlgebraParams {
    pub lambda: f64,
    /// Total photon number `M`; the subspace has dimension `M + 1`.
    pub photons: usize,
    /// Value used for the otherwise unspecified symbol `N` in `h` and `c1`.
    pub n_choice: f64,
}

impl AlgebraParams {
    /// Parameters with the default `N = M`.
    pub fn new(lambda: f64, photons: usize) -> Result<Self> {
        if !lambda.is_finite() || lambda < 0.0 {
            return Err(Error::InvalidParams(format!(
                "curvature must be finite and >= 0, got {lambda}"
            )));
        }
        if photons < 1 {
            return Err(Error::InvalidParams("M must be >= 1".into()));
        }
        Ok(Self {
            lambda,
            photons,
            n_choice: photons as f64,
        })
    }

    pub fn with_n_choice(mut self, n_choice: f64) -> Self {
        self.n_choice = n_choice;
        self
    }
}

pub fn coeff_c1(p: &AlgebraParams) -> f64 {
    let l = p.lambda;
    let m = p.photons as f64;
    1.0 + l * (1.0 + l / 4.0).sqrt() * (m + 1.0) + l * l * (m * (p.n_choice / 2.0 + 1.0) + 0.25)
}

pub fn coeff_c2(p: &AlgebraParams) -> f64 {
    -0.5 * p.lambda * p.lambda
}

/// Deformation function `h(lambda, M, j0)` evaluated at a `J0` eigenvalue.
pub fn deformation_h(p: &AlgebraParams, j0: f64) -> f64 {
    let l = p.lambda;
    let m = p.photons as f64;
    1.0 + l * (1.0 + l / 4.0).sqrt() * (m + 1.0)
        - l * l * (2.0 * j0 * j0 - p.n_choice * (m / 2.0 + 1.0) - 0.25)
}

/// Radicand `c1 + c2 [n1^2 + n2 (n2 + 2)]` of the deformation factor.
pub fn radicand(p: &AlgebraParams, n1: usize, n2: usize) -> f64 {
    let (n1, n2) = (n1 as f64, n2 as f64);
    coeff_c1(p) + coeff_c2(p) * (n1 * n1 + n2 * (n2 + 2.0))
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorMatrices {
    pub j_plus: DMatrix<Complex64>,
    pub j_minus: DMatrix<Complex64>,
    pub j_zero: DMatrix<Complex64>,
}

/// Builds `J+`, `J-`, `J0` on the `(M+1)`-dimensional subspace.
///
/// The square-root factor stands to the left of `a1† a2`, so its number
/// operators see the shifted occupations `(m+1, M-m-1)`.
pub fn build_generators(p: &AlgebraParams) -> Result<GeneratorMatrices> {
    let big_m = p.photons;
    let dim = big_m + 1;
    let mut j_plus = DMatrix::<Complex64>::zeros(dim, dim);
    for m in 0..big_m {
        let rad = radicand(p, m + 1, big_m - m - 1);
        if rad.is_nan() || rad <= 0.0 {
            return Err(Error::NegativeRadicand {
                lambda: p.lambda,
                photons: big_m,
                m,
                value: rad,
            });
        }
        let ladder = (((m + 1) * (big_m - m)) as f64).sqrt();
        j_plus[(m + 1, m)] = Complex64::new(rad.sqrt() * ladder, 0.0);
    }
    let j_minus = j_plus.adjoint();
    let j_zero = DMatrix::from_fn(dim, dim, |i, j| {
        if i == j {
            Complex64::new((2.0 * i as f64 - big_m as f64) / 2.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    Ok(GeneratorMatrices {
        j_plus,
        j_minus,
        j_zero,
    })
}

/// Undeformed Schwinger su(2) generators `a1† a2`, `a1 a2†`, `(n1 - n2)/2`.
pub fn schwinger_generators(photons: usize) -> GeneratorMatrices {
    let dim = photons + 1;
    let j_plus = DMatrix::from_fn(dim, dim, |i, j| {
        if i == j + 1 {
            Complex64::new(((i * (photons + 1 - i)) as f64).sqrt(), 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let j_minus = DMatrix::from_fn(dim, dim, |i, j| j_plus[(j, i)].conj());
    let j_zero = DMatrix::from_fn(dim, dim, |i, j| {
        if i == j {
            Complex64::new(i as f64 - photons as f64 / 2.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    GeneratorMatrices {
        j_plus,
        j_minus,
        j_zero,
    }
}

pub(crate) fn commutator(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    a * b - b * a
}

pub(crate) fn max_abs(m: &DMatrix<Complex64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CommutatorReport {
    pub lambda: f64,
    #[serde(rename = "M")]
    pub photons: usize,
    #[serde(rename = "N_choice")]
    pub n_choice: f64,
    pub res_j0_jplus: f64,
    pub res_j0_jminus: f64,
    pub res_jpm: f64,
}

/// Max-norm residuals of the three deformed su(2) relations. Large values
/// are reported, never raised as errors.
pub fn commutator_report(p: &AlgebraParams) -> Result<CommutatorReport> {
    let g = build_generators(p)?;
    let res_j0_jplus = max_abs(&(commutator(&g.j_zero, &g.j_plus) - &g.j_plus));
    let res_j0_jminus = max_abs(&(commutator(&g.j_zero, &g.j_minus) + &g.j_minus));

    let h = DMatrix::from_fn(g.j_zero.nrows(), g.j_zero.ncols(), |i, j| {
        if i == j {
            Complex64::new(deformation_h(p, g.j_zero[(i, i)].re), 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let rhs = &g.j_zero * h * Complex64::new(2.0, 0.0);
    let res_jpm = max_abs(&(commutator(&g.j_plus, &g.j_minus) - rhs));

    Ok(CommutatorReport {
        lambda: p.lambda,
        photons: p.photons,
        n_choice: p.n_choice,
        res_j0_jplus,
        res_j0_jminus,
        res_jpm,
    })
}
