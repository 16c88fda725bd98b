use num_complex::Complex64;

use super::{
    hermitian_deviation, hermitian_eigen, spectral_map, trace, CMatrix, StateVector, EPS_EIG,
    EPS_VALID,
};
use crate::error::{Error, Result};

/// A validated density matrix: Hermitian, unit trace, positive semidefinite
/// (all within `1e-10`).
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: CMatrix,
}

impl DensityMatrix {
    pub fn new(matrix: CMatrix) -> Result<Self> {
        if !matrix.is_square() || matrix.is_empty() {
            return Err(Error::NotSquare {
                rows: matrix.nrows(),
                cols: matrix.ncols(),
            });
        }
        let deviation = hermitian_deviation(&matrix);
        if !(deviation <= EPS_VALID) {
            return Err(Error::InvalidDensityMatrix(format!(
                "not Hermitian (max deviation {deviation:e})"
            )));
        }
        let tr = trace(&matrix).re;
        if (tr - 1.0).abs() > EPS_VALID {
            return Err(Error::InvalidDensityMatrix(format!(
                "trace is {tr}, expected 1"
            )));
        }
        let (values, _) = hermitian_eigen(&matrix);
        let min = values.iter().copied().fold(f64::INFINITY, f64::min);
        if min < -EPS_VALID {
            return Err(Error::InvalidDensityMatrix(format!(
                "negative eigenvalue {min:e}"
            )));
        }
        Ok(Self { matrix })
    }

    /// `diag(p_0, …, p_{n-1})`.
    pub fn diagonal(populations: &[f64]) -> Result<Self> {
        let diag = populations.iter().map(|&p| Complex64::new(p, 0.0));
        Self::new(CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
            populations.len(),
            diag,
        )))
    }

    /// `|ψ⟩⟨ψ|`.
    pub fn pure(state: &StateVector) -> Self {
        Self {
            matrix: state.projector(),
        }
    }

    pub(crate) fn from_matrix_unchecked(matrix: CMatrix) -> Self {
        Self { matrix }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    /// Eigenvalues sorted descending, with the tiny negative tail clipped to zero.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let (mut values, _) = hermitian_eigen(&self.matrix);
        for v in values.iter_mut() {
            if *v < 0.0 {
                *v = 0.0;
            }
        }
        values.sort_by(|a, b| b.total_cmp(a));
        values
    }

    pub fn diagonal_entries(&self) -> Vec<f64> {
        self.matrix.diagonal().iter().map(|z| z.re).collect()
    }
}

/// `p ln p` with `0 ln 0 ≡ 0` and eigenvalues under `EPS_EIG` treated as zero.
fn p_ln_p(p: f64) -> f64 {
    if p < EPS_EIG {
        0.0
    } else {
        p * p.ln()
    }
}

/// `S(ρ) = −Tr(ρ ln ρ)` in nats.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    let s: f64 = rho.eigenvalues().into_iter().map(p_ln_p).sum();
    // -0.0 for pure states reads badly in output
    (-s).max(0.0)
}

/// `ρ ln ρ` as a matrix.
pub fn hermitian_log_weighted(rho: &DensityMatrix) -> CMatrix {
    spectral_map(rho.matrix(), |p| Complex64::new(p_ln_p(p), 0.0))
}

/// `½ Tr|ρ − σ|`.
pub fn trace_distance(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            got: sigma.dim(),
        });
    }
    let (values, _) = hermitian_eigen(&(rho.matrix() - sigma.matrix()));
    Ok(0.5 * values.iter().map(|v| v.abs()).sum::<f64>())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::LN_2;

    #[test]
    fn validation_rejects_bad_matrices() {
        assert!(DensityMatrix::diagonal(&[0.6, 0.6]).is_err());
        assert!(DensityMatrix::diagonal(&[1.2, -0.2]).is_err());
        // tiny negative eigenvalue is tolerated
        assert!(DensityMatrix::diagonal(&[1.0 + 5e-11, -5e-11]).is_ok());
    }

    #[test]
    fn entropy_examples() {
        let pure = DensityMatrix::diagonal(&[1.0, 0.0]).unwrap();
        assert_eq!(von_neumann_entropy(&pure), 0.0);
        let mixed = DensityMatrix::diagonal(&[0.5, 0.5]).unwrap();
        assert!((von_neumann_entropy(&mixed) - LN_2).abs() < 1e-14);
        let skewed = DensityMatrix::diagonal(&[0.9, 0.1]).unwrap();
        // -0.9 ln 0.9 - 0.1 ln 0.1
        assert!((von_neumann_entropy(&skewed) - 0.325_082_973_391_448_2).abs() < 1e-12);
    }

    #[test]
    fn log_weighted_examples() {
        let mixed = DensityMatrix::diagonal(&[0.5, 0.5]).unwrap();
        let m = hermitian_log_weighted(&mixed);
        assert!((m[(0, 0)].re + 0.5 * LN_2).abs() < 1e-14);
        assert!((m[(1, 1)].re + 0.5 * LN_2).abs() < 1e-14);

        let pure = DensityMatrix::diagonal(&[1.0, 0.0]).unwrap();
        assert!(super::super::max_abs(&hermitian_log_weighted(&pure)) < 1e-15);

        let skewed = DensityMatrix::diagonal(&[0.9, 0.1]).unwrap();
        let m = hermitian_log_weighted(&skewed);
        assert!((m[(0, 0)].re - 0.9 * 0.9f64.ln()).abs() < 1e-14);
        assert!((m[(1, 1)].re - 0.1 * 0.1f64.ln()).abs() < 1e-14);
        assert!((m[(0, 0)].re + 0.094_825).abs() < 1e-6);
        assert!((m[(1, 1)].re + 0.230_259).abs() < 1e-6);
    }

    #[test]
    fn trace_distance_of_orthogonal_pure_states_is_one() {
        let a = DensityMatrix::diagonal(&[1.0, 0.0]).unwrap();
        let b = DensityMatrix::diagonal(&[0.0, 1.0]).unwrap();
        assert!((trace_distance(&a, &b).unwrap() - 1.0).abs() < 1e-14);
        assert_eq!(trace_distance(&a, &a).unwrap(), 0.0);
    }
}
