//! Weak values and post-selected evolution of a bipartite probe.
//!
//! One half of the probe (subsystem B) couples to an ancilla through
//! `H = κ K ⊗ O`. Since `K` is diagonal in the Schmidt basis of the probe, the
//! interaction unitary factorizes branch by branch: Schmidt branch `k` sees the
//! ancilla unitary `e^{-iφλ_k O}`. Both evolutions below work on that
//! factorization and never build the joint `d_B·d_C` space.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quantum::{
    hermitian_phase_exponential, max_abs, trace_distance, HermitianObservable, SchmidtForm,
    StateVector, Subsystem, EPS_VALID,
};

/// Default threshold on `|⟨f|i⟩|` below which post-selection counts as orthogonal.
pub const EPS_OVERLAP: f64 = 1e-10;

/// Exact success probabilities below this mean post-selection never happens.
pub const EPS_SUCCESS: f64 = 1e-20;

/// Pre-selected state `|i⟩`, post-selected state `|f⟩` and ancilla observable `O`.
#[derive(Debug, Clone, PartialEq)]
pub struct AncillaSelection {
    pre: StateVector,
    post: StateVector,
    observable: HermitianObservable,
    overlap: Complex64,
    orthogonal: bool,
}

impl AncillaSelection {
    pub fn new(
        pre: StateVector,
        post: StateVector,
        observable: HermitianObservable,
    ) -> Result<Self> {
        Self::with_eps_overlap(pre, post, observable, EPS_OVERLAP)
    }

    /// As [`AncillaSelection::new`] with a custom orthogonality threshold.
    pub fn with_eps_overlap(
        pre: StateVector,
        post: StateVector,
        observable: HermitianObservable,
        eps_overlap: f64,
    ) -> Result<Self> {
        let dim = pre.dim();
        for got in [post.dim(), observable.dim()] {
            if got != dim {
                return Err(Error::DimensionMismatch { expected: dim, got });
            }
        }
        let overlap = post.inner(&pre);
        Ok(Self {
            orthogonal: overlap.norm() < eps_overlap,
            pre,
            post,
            observable,
            overlap,
        })
    }

    pub fn pre(&self) -> &StateVector {
        &self.pre
    }

    pub fn post(&self) -> &StateVector {
        &self.post
    }

    pub fn observable(&self) -> &HermitianObservable {
        &self.observable
    }

    pub fn dim(&self) -> usize {
        self.pre.dim()
    }

    /// `⟨f|i⟩`.
    pub fn overlap(&self) -> Complex64 {
        self.overlap
    }

    pub fn is_orthogonal(&self) -> bool {
        self.orthogonal
    }
}

/// `O_W = ⟨f|O|i⟩ / ⟨f|i⟩`.
pub fn weak_value(sel: &AncillaSelection) -> Result<Complex64> {
    if sel.orthogonal {
        return Err(Error::PostSelectionOrthogonal {
            overlap: sel.overlap.norm(),
        });
    }
    let numerator = sel.observable.matrix_element(&sel.post, &sel.pre)?;
    Ok(numerator / sel.overlap)
}

/// A full experiment: probe, `K` spectrum in the Schmidt basis, ancilla and coupling `φ = κT`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeakMeasurementSetup {
    probe: SchmidtForm,
    kappa_spectrum: Vec<f64>,
    ancilla: AncillaSelection,
    phi: f64,
}

impl WeakMeasurementSetup {
    /// `kappa_spectrum[k]` is the eigenvalue of `K` on the B-side Schmidt vector `|b_k⟩`.
    pub fn new(
        probe: SchmidtForm,
        kappa_spectrum: Vec<f64>,
        ancilla: AncillaSelection,
        phi: f64,
    ) -> Result<Self> {
        if kappa_spectrum.len() != probe.rank() {
            return Err(Error::DimensionMismatch {
                expected: probe.rank(),
                got: kappa_spectrum.len(),
            });
        }
        if let Some(l) = kappa_spectrum.iter().find(|l| !l.is_finite()) {
            return Err(Error::InvalidSetup(format!(
                "kappa eigenvalue {l} is not finite"
            )));
        }
        if !(phi >= 0.0) || !phi.is_finite() {
            return Err(Error::InvalidSetup(format!(
                "coupling phi must be finite and >= 0, got {phi}"
            )));
        }
        Ok(Self {
            probe,
            kappa_spectrum,
            ancilla,
            phi,
        })
    }

    /// Accepts `K` as a full matrix on subsystem B. It must commute with every
    /// Schmidt projector `|b_k⟩⟨b_k|` within `1e-10`; its spectrum is read off the diagonal.
    pub fn with_kappa_matrix(
        probe: SchmidtForm,
        kappa: &HermitianObservable,
        ancilla: AncillaSelection,
        phi: f64,
    ) -> Result<Self> {
        if kappa.dim() != probe.dim_b() {
            return Err(Error::DimensionMismatch {
                expected: probe.dim_b(),
                got: kappa.dim(),
            });
        }
        let k = kappa.matrix();
        let mut spectrum = Vec::with_capacity(probe.rank());
        for (index, b) in probe.basis_b().iter().enumerate() {
            let p = b.projector();
            let deviation = max_abs(&(k * &p - &p * k));
            if deviation > EPS_VALID {
                return Err(Error::ObservableNotSchmidtDiagonal { index, deviation });
            }
            spectrum.push(kappa.matrix_element(b, b)?.re);
        }
        Self::new(probe, spectrum, ancilla, phi)
    }

    pub fn probe(&self) -> &SchmidtForm {
        &self.probe
    }

    pub fn kappa_spectrum(&self) -> &[f64] {
        &self.kappa_spectrum
    }

    pub fn ancilla(&self) -> &AncillaSelection {
        &self.ancilla
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// Same setup at a different coupling.
    pub fn with_phi(&self, phi: f64) -> Result<Self> {
        Self::new(
            self.probe.clone(),
            self.kappa_spectrum.clone(),
            self.ancilla.clone(),
            phi,
        )
    }

    /// Same probe and coupling with another ancilla selection.
    pub fn with_ancilla(&self, ancilla: AncillaSelection) -> Result<Self> {
        Self::new(
            self.probe.clone(),
            self.kappa_spectrum.clone(),
            ancilla,
            self.phi,
        )
    }

    /// `Tr(K σᵢ) = Σ_k λ_k s_k²`.
    pub fn kappa_expectation(&self) -> f64 {
        self.kappa_spectrum
            .iter()
            .zip(self.probe.populations())
            .map(|(l, p)| l * p)
            .sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvolutionMode {
    Exact,
    WeakLimit,
}

/// Post-selected probe and the probability that post-selection succeeds.
#[derive(Debug, Clone, PartialEq)]
pub struct EvolutionResult {
    pub final_probe: SchmidtForm,
    pub success_probability: f64,
    pub mode: EvolutionMode,
    /// Set when the first-order success probability left `[0, 1]` and was clamped.
    pub clamped: bool,
}

/// Unnormalized branch amplitudes `c_k = s_k ⟨f| e^{-iφλ_k O} |i⟩` in Schmidt order.
pub fn exact_branch_amplitudes(setup: &WeakMeasurementSetup) -> Vec<Complex64> {
    let sel = &setup.ancilla;
    let pre = sel.pre.as_vector();
    let post = sel.post.as_vector();
    setup
        .probe
        .coefficients()
        .iter()
        .zip(&setup.kappa_spectrum)
        .map(|(&s, &lambda)| {
            let u = hermitian_phase_exponential(&sel.observable, setup.phi * lambda);
            post.dotc(&(u * pre)) * s
        })
        .collect()
}

/// Exact unitary interaction followed by projection of the ancilla onto `|f⟩`.
pub fn exact_evolve_postselect(setup: &WeakMeasurementSetup) -> Result<EvolutionResult> {
    let amplitudes = exact_branch_amplitudes(setup);
    let probability: f64 = amplitudes.iter().map(|c| c.norm_sqr()).sum();
    if !(probability >= EPS_SUCCESS) {
        return Err(Error::PostSelectionImpossible { probability });
    }
    Ok(EvolutionResult {
        final_probe: SchmidtForm::from_branch_amplitudes(
            &amplitudes,
            setup.probe.basis_a(),
            setup.probe.basis_b(),
        ),
        success_probability: probability.min(1.0),
        mode: EvolutionMode::Exact,
        clamped: false,
    })
}

/// Branch factors `1 − iφ O_W λ_k` of the linearized evolution.
pub(crate) fn weak_limit_factors(setup: &WeakMeasurementSetup, o_w: Complex64) -> Vec<Complex64> {
    let i = Complex64::new(0.0, 1.0);
    setup
        .kappa_spectrum
        .iter()
        .map(|&lambda| Complex64::new(1.0, 0.0) - i * setup.phi * o_w * lambda)
        .collect()
}

/// First-order evolution `(I − iφ O_W (I⊗K))|ψᵢ⟩`, normalized by its true norm.
pub fn weak_limit_state(setup: &WeakMeasurementSetup) -> Result<EvolutionResult> {
    let o_w = weak_value(&setup.ancilla)?;
    let amplitudes: Vec<Complex64> = weak_limit_factors(setup, o_w)
        .into_iter()
        .zip(setup.probe.coefficients())
        .map(|(factor, &s)| factor * s)
        .collect();
    let first_order = setup.ancilla.overlap.norm_sqr()
        * (1.0 + 2.0 * setup.phi * o_w.im * setup.kappa_expectation());
    let success_probability = first_order.clamp(0.0, 1.0);
    let norm_sq: f64 = amplitudes.iter().map(|c| c.norm_sqr()).sum();
    if !(norm_sq > 0.0) {
        return Err(Error::PostSelectionImpossible {
            probability: norm_sq,
        });
    }
    Ok(EvolutionResult {
        final_probe: SchmidtForm::from_branch_amplitudes(
            &amplitudes,
            setup.probe.basis_a(),
            setup.probe.basis_b(),
        ),
        success_probability,
        mode: EvolutionMode::WeakLimit,
        clamped: success_probability != first_order,
    })
}

/// Discrepancy between the exact and first-order evolutions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ApproximationError {
    /// Trace distance between the two reduced states of subsystem B.
    pub state_distance: f64,
    pub prob_gap: f64,
}

pub fn approximation_error(setup: &WeakMeasurementSetup) -> Result<ApproximationError> {
    let exact = exact_evolve_postselect(setup)?;
    let weak = weak_limit_state(setup)?;
    let state_distance = trace_distance(
        &exact.final_probe.reduced_density(Subsystem::A),
        &weak.final_probe.reduced_density(Subsystem::A),
    )?;
    Ok(ApproximationError {
        state_distance,
        prob_gap: (exact.success_probability - weak.success_probability).abs(),
    })
}
