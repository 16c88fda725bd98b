use num_complex::Complex64;

use super::{
    hermitian_deviation, hermitian_eigen, spectral_map, trace, CMatrix, DensityMatrix, StateVector,
    EPS_VALID,
};
use crate::error::{Error, Result};

/// A Hermitian operator on a `dim`-dimensional space.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianObservable {
    matrix: CMatrix,
}

impl HermitianObservable {
    pub fn new(matrix: CMatrix) -> Result<Self> {
        if !matrix.is_square() || matrix.is_empty() {
            return Err(Error::NotSquare {
                rows: matrix.nrows(),
                cols: matrix.ncols(),
            });
        }
        let deviation = hermitian_deviation(&matrix);
        if !(deviation <= EPS_VALID) {
            return Err(Error::NotHermitian { deviation });
        }
        Ok(Self { matrix })
    }

    /// Real diagonal operator with the given eigenvalues.
    pub fn diagonal(values: &[f64]) -> Self {
        let diag = values.iter().map(|&v| Complex64::new(v, 0.0));
        Self {
            matrix: CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(values.len(), diag)),
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            matrix: CMatrix::identity(dim, dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    /// Eigenvalues (unordered) and eigenvectors as columns.
    pub fn eigen(&self) -> (Vec<f64>, CMatrix) {
        hermitian_eigen(&self.matrix)
    }

    /// `⟨bra|A|ket⟩`.
    pub fn matrix_element(&self, bra: &StateVector, ket: &StateVector) -> Result<Complex64> {
        self.check_dim(bra.dim())?;
        self.check_dim(ket.dim())?;
        Ok(bra.as_vector().dotc(&(&self.matrix * ket.as_vector())))
    }

    fn check_dim(&self, got: usize) -> Result<()> {
        if got != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got,
            });
        }
        Ok(())
    }
}

/// `e^{-iθA}` through the eigendecomposition of `A`.
pub fn hermitian_phase_exponential(a: &HermitianObservable, theta: f64) -> CMatrix {
    spectral_map(&a.matrix, |lambda| {
        Complex64::from_polar(1.0, -theta * lambda)
    })
}

/// `Tr(Aρ)`. The imaginary part vanishes for Hermitian `A` and `ρ` and is dropped.
pub fn expectation(a: &HermitianObservable, rho: &DensityMatrix) -> Result<f64> {
    a.check_dim(rho.dim())?;
    let value = trace(&(&a.matrix * rho.matrix()));
    debug_assert!(value.im.abs() <= EPS_VALID * (1.0 + super::max_abs(&a.matrix)));
    Ok(value.re)
}
