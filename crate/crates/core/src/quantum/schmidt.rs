use nalgebra::SVD;
use num_complex::Complex64;

use super::{BipartiteState, CMatrix, CVector, DensityMatrix, StateVector, EPS_VALID};
use crate::error::{Error, Result};

/// Schmidt coefficients below this are dropped from a decomposition.
pub const EPS_RANK: f64 = 1e-12;

/// Which half of a bipartite system an operation refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    A,
    B,
}

/// `|ψ⟩ = Σ_k s_k |a_k⟩|b_k⟩` with real descending `s_k` and orthonormal bases.
#[derive(Debug, Clone, PartialEq)]
pub struct SchmidtForm {
    coefficients: Vec<f64>,
    basis_a: Vec<StateVector>,
    basis_b: Vec<StateVector>,
}

impl SchmidtForm {
    pub fn new(
        coefficients: Vec<f64>,
        basis_a: Vec<StateVector>,
        basis_b: Vec<StateVector>,
    ) -> Result<Self> {
        let rank = coefficients.len();
        if rank == 0 {
            return Err(Error::InvalidSchmidtForm("no coefficients".into()));
        }
        if basis_a.len() != rank || basis_b.len() != rank {
            return Err(Error::InvalidSchmidtForm(format!(
                "{rank} coefficients but {} / {} basis vectors",
                basis_a.len(),
                basis_b.len()
            )));
        }
        if let Some(s) = coefficients
            .iter()
            .find(|s| !(**s >= 0.0) || !s.is_finite())
        {
            return Err(Error::InvalidSchmidtForm(format!(
                "coefficient {s} is negative"
            )));
        }
        let norm_sq: f64 = coefficients.iter().map(|s| s * s).sum();
        if (norm_sq - 1.0).abs() > EPS_VALID {
            return Err(Error::NotNormalized { norm_sq });
        }
        if coefficients.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidSchmidtForm(
                "coefficients not sorted descending".into(),
            ));
        }
        check_orthonormal(&basis_a, "A")?;
        check_orthonormal(&basis_b, "B")?;
        Ok(Self {
            coefficients,
            basis_a,
            basis_b,
        })
    }

    /// `Σ_k s_k |k⟩|k⟩` in computational bases of dimension `coefficients.len()`.
    pub fn computational(coefficients: Vec<f64>) -> Result<Self> {
        let dim = coefficients.len();
        let basis: Vec<_> = (0..dim).map(|k| StateVector::basis(dim, k)).collect();
        Self::new(coefficients, basis.clone(), basis)
    }

    /// Builds the Schmidt form of `Σ_k c_k |a_k⟩|b_k⟩` for complex branch weights
    /// `c_k`: normalizes, moves each phase onto `|b_k⟩` and re-sorts descending.
    /// The bases must already be orthonormal.
    pub(crate) fn from_branch_amplitudes(
        amplitudes: &[Complex64],
        basis_a: &[StateVector],
        basis_b: &[StateVector],
    ) -> Self {
        let norm = amplitudes.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        let mut branches: Vec<(f64, StateVector, StateVector)> = amplitudes
            .iter()
            .zip(basis_a.iter().zip(basis_b))
            .map(|(c, (a, b))| {
                let magnitude = c.norm();
                let phase = if magnitude > 0.0 {
                    c / magnitude
                } else {
                    Complex64::new(1.0, 0.0)
                };
                (magnitude / norm, a.clone(), b.with_phase(phase))
            })
            .collect();
        branches.sort_by(|x, y| y.0.total_cmp(&x.0));
        let mut coefficients = Vec::with_capacity(branches.len());
        let mut a = Vec::with_capacity(branches.len());
        let mut b = Vec::with_capacity(branches.len());
        for (s, va, vb) in branches {
            coefficients.push(s);
            a.push(va);
            b.push(vb);
        }
        Self {
            coefficients,
            basis_a: a,
            basis_b: b,
        }
    }

    pub fn rank(&self) -> usize {
        self.coefficients.len()
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn basis_a(&self) -> &[StateVector] {
        &self.basis_a
    }

    pub fn basis_b(&self) -> &[StateVector] {
        &self.basis_b
    }

    pub fn dim_a(&self) -> usize {
        self.basis_a[0].dim()
    }

    pub fn dim_b(&self) -> usize {
        self.basis_b[0].dim()
    }

    /// `s_k²`, the spectrum of either reduced state.
    pub fn populations(&self) -> Vec<f64> {
        self.coefficients.iter().map(|s| s * s).collect()
    }

    /// Coefficient matrix of the full state, `Σ_k s_k |a_k⟩ b_kᵀ`.
    pub fn recompose(&self) -> BipartiteState {
        let mut m = CMatrix::zeros(self.dim_a(), self.dim_b());
        for ((s, a), b) in self
            .coefficients
            .iter()
            .zip(&self.basis_a)
            .zip(&self.basis_b)
        {
            m += (a.as_vector() * b.as_vector().transpose()) * Complex64::new(*s, 0.0);
        }
        BipartiteState::new(m).expect("Schmidt form recomposes to a normalized state")
    }

    /// Reduced state obtained by tracing out `traced`, in the original (not Schmidt) basis.
    pub fn reduced_density(&self, traced: Subsystem) -> DensityMatrix {
        let (basis, dim) = match traced {
            Subsystem::A => (&self.basis_b, self.dim_b()),
            Subsystem::B => (&self.basis_a, self.dim_a()),
        };
        let mut m = CMatrix::zeros(dim, dim);
        for (p, v) in self.populations().into_iter().zip(basis) {
            m += v.projector() * Complex64::new(p, 0.0);
        }
        DensityMatrix::from_matrix_unchecked(m)
    }

    /// The reduced state written in the Schmidt basis: `diag(s_k²)`, `rank × rank`.
    pub fn schmidt_diagonal(&self) -> DensityMatrix {
        DensityMatrix::diagonal(&self.populations())
            .expect("Schmidt populations form a valid density matrix")
    }

    /// Entanglement entropy `−Σ s_k² ln s_k²` in nats.
    pub fn entropy(&self) -> f64 {
        super::von_neumann_entropy(&self.schmidt_diagonal())
    }
}

fn check_orthonormal(basis: &[StateVector], side: &str) -> Result<()> {
    let dim = basis[0].dim();
    if let Some(v) = basis.iter().find(|v| v.dim() != dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: v.dim(),
        });
    }
    if basis.len() > dim {
        return Err(Error::InvalidSchmidtForm(format!(
            "{} vectors cannot be orthonormal in dimension {dim}",
            basis.len()
        )));
    }
    for (j, u) in basis.iter().enumerate() {
        for (k, v) in basis.iter().enumerate().skip(j) {
            let expected = if j == k { 1.0 } else { 0.0 };
            let ip = u.inner(v);
            if (ip - Complex64::new(expected, 0.0)).norm() > EPS_VALID {
                return Err(Error::InvalidSchmidtForm(format!(
                    "basis {side} not orthonormal: <{j}|{k}> = {ip}"
                )));
            }
        }
    }
    Ok(())
}

/// Schmidt decomposition of a normalized `d_A × d_B` coefficient matrix via SVD.
///
/// Each pair is rotated so the largest-magnitude entry of `|a_k⟩` is real positive;
/// the compensating phase goes onto `|b_k⟩`. Coefficients below `EPS_RANK` are dropped.
pub fn schmidt_decompose(coefficients: &CMatrix) -> Result<SchmidtForm> {
    let state = BipartiteState::new(coefficients.clone())?;
    let svd = SVD::new(state.coefficients().clone(), true, true);
    let u = svd.u.expect("requested U");
    let v_t = svd.v_t.expect("requested V†");

    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&i, &j| svd.singular_values[j].total_cmp(&svd.singular_values[i]));

    let mut values = Vec::new();
    let mut basis_a = Vec::new();
    let mut basis_b = Vec::new();
    for k in order {
        let s = svd.singular_values[k];
        if s < EPS_RANK {
            continue;
        }
        // M = U Σ V†, so |b_k⟩ has components (V†)_{kj}
        let a: CVector = u.column(k).into_owned();
        let b: CVector = v_t.row(k).transpose();
        let pivot = a
            .iter()
            .enumerate()
            .fold((0, 0.0), |best, (j, z)| {
                if z.norm() > best.1 {
                    (j, z.norm())
                } else {
                    best
                }
            })
            .0;
        let phase = a[pivot] / a[pivot].norm();
        values.push(s);
        basis_a.push(StateVector::from_vector_unchecked(a * phase.conj()));
        basis_b.push(StateVector::from_vector_unchecked(b * phase));
    }

    // Renormalize after dropping the numerically-zero tail.
    let norm = values.iter().map(|s| s * s).sum::<f64>().sqrt();
    values.iter_mut().for_each(|s| *s /= norm);
    SchmidtForm::new(values, basis_a, basis_b)
}

/// Reduced density matrix after tracing out `traced`.
pub fn partial_trace(state: &BipartiteState, traced: Subsystem) -> DensityMatrix {
    let m = state.coefficients();
    let reduced = match traced {
        // ρ_B[j, j'] = Σ_i M_ij conj(M_ij')
        Subsystem::A => m.transpose() * m.conjugate(),
        Subsystem::B => m * m.adjoint(),
    };
    DensityMatrix::from_matrix_unchecked(reduced)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::{max_abs, von_neumann_entropy};
    use std::f64::consts::FRAC_1_SQRT_2;

    fn real_matrix(rows: usize, cols: usize, data: &[f64]) -> CMatrix {
        CMatrix::from_row_slice(
            rows,
            cols,
            &data
                .iter()
                .map(|&x| Complex64::new(x, 0.0))
                .collect::<Vec<_>>(),
        )
    }

    #[test]
    fn product_state_has_rank_one() {
        let form = schmidt_decompose(&real_matrix(2, 2, &[1.0, 0.0, 0.0, 0.0])).unwrap();
        assert_eq!(form.rank(), 1);
        assert!((form.coefficients()[0] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn bell_state_coefficients() {
        let m = real_matrix(2, 2, &[FRAC_1_SQRT_2, 0.0, 0.0, FRAC_1_SQRT_2]);
        let form = schmidt_decompose(&m).unwrap();
        assert_eq!(form.rank(), 2);
        for s in form.coefficients() {
            assert!((s - FRAC_1_SQRT_2).abs() < 1e-14);
        }
        assert!(max_abs(&(form.recompose().coefficients() - &m)) < 1e-14);
    }

    #[test]
    fn rotated_bell_state_recovers_coefficients() {
        // H · diag(√0.9, √0.1)
        let h = FRAC_1_SQRT_2;
        let (a, b) = (0.9f64.sqrt(), 0.1f64.sqrt());
        let m = real_matrix(2, 2, &[h * a, h * b, h * a, -h * b]);
        let form = schmidt_decompose(&m).unwrap();
        assert!((form.coefficients()[0] - a).abs() < 1e-12);
        assert!((form.coefficients()[1] - b).abs() < 1e-12);
        assert!(max_abs(&(form.recompose().coefficients() - &m)) < 1e-12);
    }

    #[test]
    fn phase_convention_makes_a_pivot_real_positive() {
        let i = Complex64::new(0.0, 1.0);
        let m = CMatrix::from_row_slice(
            2,
            2,
            &[
                i * 0.6,
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, 0.0),
                -i * 0.8,
            ],
        );
        let form = schmidt_decompose(&m).unwrap();
        for a in form.basis_a() {
            let pivot = a
                .amplitudes()
                .iter()
                .max_by(|x, y| x.norm().total_cmp(&y.norm()))
                .unwrap();
            assert!(pivot.im.abs() < 1e-14 && pivot.re > 0.0);
        }
        assert!(max_abs(&(form.recompose().coefficients() - &m)) < 1e-14);
    }

    #[test]
    fn unnormalized_input_is_rejected() {
        let m = real_matrix(2, 2, &[1.0, 0.0, 0.0, 1.0]);
        assert!(matches!(
            schmidt_decompose(&m),
            Err(Error::NotNormalized { .. })
        ));
    }

    #[test]
    fn partial_trace_examples() {
        let bell =
            BipartiteState::new(real_matrix(2, 2, &[FRAC_1_SQRT_2, 0.0, 0.0, FRAC_1_SQRT_2]))
                .unwrap();
        for side in [Subsystem::A, Subsystem::B] {
            let rho = partial_trace(&bell, side);
            assert!(
                max_abs(&(rho.matrix() - CMatrix::identity(2, 2) * Complex64::new(0.5, 0.0)))
                    < 1e-14
            );
        }

        let product = BipartiteState::product(&StateVector::basis(2, 0), &StateVector::basis(2, 0));
        let rho = partial_trace(&product, Subsystem::A);
        assert!(max_abs(&(rho.matrix() - StateVector::basis(2, 0).projector())) < 1e-15);

        let probe = SchmidtForm::computational(vec![0.9f64.sqrt(), 0.1f64.sqrt()]).unwrap();
        let rho = partial_trace(&probe.recompose(), Subsystem::A);
        assert!((rho.matrix()[(0, 0)].re - 0.9).abs() < 1e-14);
        assert!((rho.matrix()[(1, 1)].re - 0.1).abs() < 1e-14);
        assert!((von_neumann_entropy(&rho) - probe.entropy()).abs() < 1e-14);
    }

    #[test]
    fn schmidt_form_validation() {
        assert!(SchmidtForm::computational(vec![0.1f64.sqrt(), 0.9f64.sqrt()]).is_err());
        assert!(SchmidtForm::computational(vec![0.9, 0.1]).is_err());
        let e0 = StateVector::basis(2, 0);
        assert!(SchmidtForm::new(
            vec![FRAC_1_SQRT_2, FRAC_1_SQRT_2],
            vec![e0.clone(), e0.clone()],
            vec![e0.clone(), StateVector::basis(2, 1)]
        )
        .is_err());
    }
}
