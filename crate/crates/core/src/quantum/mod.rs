//! Dense pure states, Hermitian operators, density matrices and the Schmidt form.
//!
//! Everything here is a plain value type over `nalgebra` dense matrices of
//! `Complex64`. Dimensions are expected to be small (tens, not thousands).

mod density;
mod observable;
mod schmidt;
mod state;

pub use density::{hermitian_log_weighted, trace_distance, von_neumann_entropy, DensityMatrix};
pub use observable::{expectation, hermitian_phase_exponential, HermitianObservable};
pub use schmidt::{partial_trace, schmidt_decompose, SchmidtForm, Subsystem};
pub use state::{BipartiteState, StateVector};

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

/// Tolerance for normalization, hermiticity and orthonormality checks.
pub const EPS_VALID: f64 = 1e-10;

/// Eigenvalues below this contribute nothing to `p ln p`.
pub const EPS_EIG: f64 = 1e-12;

/// Largest absolute entry of `m`.
pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

pub(crate) fn hermitian_deviation(m: &CMatrix) -> f64 {
    max_abs(&(m - m.adjoint()))
}

/// Eigendecomposition of a Hermitian matrix: real eigenvalues and unitary eigenvectors (columns).
pub(crate) fn hermitian_eigen(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    let eig = SymmetricEigen::new(m.clone());
    (eig.eigenvalues.iter().copied().collect(), eig.eigenvectors)
}

/// `V f(Λ) V†` for a Hermitian matrix with eigendecomposition `V Λ V†`.
pub(crate) fn spectral_map(m: &CMatrix, f: impl Fn(f64) -> Complex64) -> CMatrix {
    let (values, vectors) = hermitian_eigen(m);
    let mut scaled = vectors.clone();
    for (j, &lambda) in values.iter().enumerate() {
        let fj = f(lambda);
        scaled.column_mut(j).iter_mut().for_each(|z| *z *= fj);
    }
    scaled * vectors.adjoint()
}

pub(crate) fn trace(m: &CMatrix) -> Complex64 {
    m.diagonal().iter().sum()
}
