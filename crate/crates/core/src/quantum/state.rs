use num_complex::Complex64;

use super::{CMatrix, CVector, EPS_VALID};
use crate::error::{Error, Result};

/// A normalized pure state on a `dim`-dimensional space.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: CVector,
}

impl StateVector {
    /// Wraps already-normalized amplitudes. Fails if `Σ|a|²` is off by more than `1e-10`.
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::DimensionMismatch {
                expected: 1,
                got: 0,
            });
        }
        let norm_sq: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sq - 1.0).abs() > EPS_VALID {
            return Err(Error::NotNormalized { norm_sq });
        }
        Ok(Self {
            amplitudes: CVector::from_vec(amplitudes),
        })
    }

    /// Rescales arbitrary nonzero amplitudes to unit norm.
    pub fn normalized(amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm_sq: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if amplitudes.is_empty() || !(norm_sq > 0.0) || !norm_sq.is_finite() {
            return Err(Error::NotNormalized { norm_sq });
        }
        let inv = 1.0 / norm_sq.sqrt();
        Ok(Self {
            amplitudes: CVector::from_iterator(
                amplitudes.len(),
                amplitudes.iter().map(|a| a * inv),
            ),
        })
    }

    /// Computational basis vector `|k⟩`.
    pub fn basis(dim: usize, k: usize) -> Self {
        assert!(k < dim, "basis index {k} out of range for dimension {dim}");
        let mut amplitudes = CVector::zeros(dim);
        amplitudes[k] = Complex64::new(1.0, 0.0);
        Self { amplitudes }
    }

    /// Qubit state `cos(θ/2)|0⟩ + e^{iχ} sin(θ/2)|1⟩`.
    pub fn bloch(theta: f64, chi: f64) -> Self {
        let (s, c) = (theta / 2.0).sin_cos();
        Self {
            amplitudes: CVector::from_vec(vec![
                Complex64::new(c, 0.0),
                Complex64::from_polar(s, chi),
            ]),
        }
    }

    pub(crate) fn from_vector_unchecked(amplitudes: CVector) -> Self {
        Self { amplitudes }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        self.amplitudes.as_slice()
    }

    pub fn as_vector(&self) -> &CVector {
        &self.amplitudes
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Complex64 {
        self.amplitudes.dotc(&other.amplitudes)
    }

    /// Multiplies every amplitude by `phase` (assumed unimodular).
    pub fn with_phase(&self, phase: Complex64) -> Self {
        Self {
            amplitudes: &self.amplitudes * phase,
        }
    }

    /// `|self⟩⟨self|`.
    pub fn projector(&self) -> CMatrix {
        &self.amplitudes * self.amplitudes.adjoint()
    }
}

/// A pure state of two subsystems stored as its `d_A × d_B` coefficient matrix,
/// `|ψ⟩ = Σ_ij M_ij |i⟩|j⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct BipartiteState {
    coefficients: CMatrix,
}

impl BipartiteState {
    /// Fails with `NotNormalized` unless the Frobenius norm is 1 within `1e-10`.
    pub fn new(coefficients: CMatrix) -> Result<Self> {
        let norm_sq = coefficients.norm_squared();
        if coefficients.is_empty() || (norm_sq - 1.0).abs() > EPS_VALID {
            return Err(Error::NotNormalized { norm_sq });
        }
        Ok(Self { coefficients })
    }

    /// Product state `|a⟩ ⊗ |b⟩`.
    pub fn product(a: &StateVector, b: &StateVector) -> Self {
        Self {
            coefficients: a.as_vector() * b.as_vector().transpose(),
        }
    }

    pub fn coefficients(&self) -> &CMatrix {
        &self.coefficients
    }

    pub fn dim_a(&self) -> usize {
        self.coefficients.nrows()
    }

    pub fn dim_b(&self) -> usize {
        self.coefficients.ncols()
    }

    /// Flattened amplitudes in `|i⟩|j⟩ → i·d_B + j` order.
    pub fn to_state_vector(&self) -> StateVector {
        let (da, db) = self.coefficients.shape();
        StateVector::from_vector_unchecked(CVector::from_fn(da * db, |idx, _| {
            self.coefficients[(idx / db, idx % db)]
        }))
    }
}
