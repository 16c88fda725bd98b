//! Entropy change of the post-selected probe and the concentration criterion.
//!
//! To first order in `φ`,
//!
//! ```text
//! S_f / S_i = [1 + 2φ Im(O_W) Tr(K ω)] / [1 + 2φ Im(O_W) Tr(K σᵢ)],   ω = σᵢ ln σᵢ / Tr(σᵢ ln σᵢ)
//! ```
//!
//! so entanglement grows iff `Im(O_W) · Tr(K(ω − σᵢ)) > 0`. Because `K` and `σᵢ`
//! share the Schmidt basis, every trace here reduces to a sum over diagonals.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quantum::{hermitian_log_weighted, trace_distance, von_neumann_entropy, DensityMatrix};
use crate::weak::{exact_evolve_postselect, weak_limit_factors, weak_value, WeakMeasurementSetup};

/// Probes with entropy below this are treated as separable.
pub const EPS_ENTROPY: f64 = 1e-9;

/// `|first_order_gain|` at or below this yields [`Verdict::Unchanged`].
pub const EPS_GAIN: f64 = 1e-12;

/// `ω = σ ln σ / Tr(σ ln σ)`.
pub fn omega_state(sigma: &DensityMatrix) -> Result<DensityMatrix> {
    let entropy = von_neumann_entropy(sigma);
    if entropy < EPS_ENTROPY {
        return Err(Error::DegenerateProbe { entropy });
    }
    // Tr(σ ln σ) = −S(σ)
    let omega = hermitian_log_weighted(sigma) / Complex64::new(-entropy, 0.0);
    DensityMatrix::new(omega)
}

/// `Tr(K(ω − σ))` with `σ` and `K = diag(kappa_spectrum)` both written in the Schmidt basis.
pub fn witness_gap(kappa_spectrum: &[f64], sigma: &DensityMatrix) -> Result<f64> {
    if kappa_spectrum.len() != sigma.dim() {
        return Err(Error::DimensionMismatch {
            expected: sigma.dim(),
            got: kappa_spectrum.len(),
        });
    }
    let omega = omega_state(sigma)?;
    Ok(kappa_spectrum
        .iter()
        .zip(omega.diagonal_entries())
        .zip(sigma.diagonal_entries())
        .map(|((l, w), s)| l * (w - s))
        .sum())
}

/// The two traces entering the first-order ratio.
struct SchmidtTraces {
    kappa_sigma: f64,
    kappa_omega: f64,
}

fn schmidt_traces(setup: &WeakMeasurementSetup) -> Result<SchmidtTraces> {
    let sigma = setup.probe().schmidt_diagonal();
    let omega = omega_state(&sigma)?;
    let kappa = setup.kappa_spectrum();
    let dot = |d: Vec<f64>| kappa.iter().zip(d).map(|(l, x)| l * x).sum::<f64>();
    Ok(SchmidtTraces {
        kappa_sigma: dot(sigma.diagonal_entries()),
        kappa_omega: dot(omega.diagonal_entries()),
    })
}

/// `S_f / S_i` from the first-order formula, evaluated without further truncation.
///
/// Errors with `OutsideWeakRegime` when either bracket is not positive, which
/// happens once `φ |Im O_W|` is of order one.
pub fn entropy_ratio_first_order(setup: &WeakMeasurementSetup) -> Result<f64> {
    let o_w = weak_value(setup.ancilla())?;
    let traces = schmidt_traces(setup)?;
    let scale = 2.0 * setup.phi() * o_w.im;
    let numerator = 1.0 + scale * traces.kappa_omega;
    let denominator = 1.0 + scale * traces.kappa_sigma;
    for value in [numerator, denominator] {
        if !(value > 0.0) {
            return Err(Error::OutsideWeakRegime { value });
        }
    }
    Ok(numerator / denominator)
}

/// `S_f / S_i` with `S_f` the entanglement entropy after exact evolution and post-selection.
pub fn entropy_ratio_exact(setup: &WeakMeasurementSetup) -> Result<f64> {
    let initial = setup.probe().entropy();
    if initial < EPS_ENTROPY {
        return Err(Error::DegenerateProbe { entropy: initial });
    }
    let result = exact_evolve_postselect(setup)?;
    Ok(result.final_probe.entropy() / initial)
}

/// First-order reduced state `[σᵢ + 2φ Im(O_W) K σᵢ] / [1 + 2φ Im(O_W) Tr(K σᵢ)]`
/// in the Schmidt basis, returned as its diagonal.
pub fn first_order_reduced_populations(setup: &WeakMeasurementSetup) -> Result<Vec<f64>> {
    let o_w = weak_value(setup.ancilla())?;
    let scale = 2.0 * setup.phi() * o_w.im;
    let denominator = 1.0 + scale * setup.kappa_expectation();
    Ok(setup
        .probe()
        .populations()
        .into_iter()
        .zip(setup.kappa_spectrum())
        .map(|(p, l)| (p + scale * l * p) / denominator)
        .collect())
}

/// Filtered Schmidt coefficients `t_k ∝ s_k |1 − iφ O_W λ_k|`, in the probe's Schmidt order.
pub fn procrustean_coefficients(setup: &WeakMeasurementSetup) -> Result<Vec<f64>> {
    let o_w = weak_value(setup.ancilla())?;
    let weights: Vec<f64> = weak_limit_factors(setup, o_w)
        .into_iter()
        .zip(setup.probe().coefficients())
        .map(|(factor, s)| s * factor.norm())
        .collect();
    let norm = weights.iter().map(|w| w * w).sum::<f64>().sqrt();
    Ok(weights.into_iter().map(|w| w / norm).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Concentrated,
    Diluted,
    Unchanged,
}

impl Verdict {
    pub fn from_gain(gain: f64) -> Self {
        if gain > EPS_GAIN {
            Verdict::Concentrated
        } else if gain < -EPS_GAIN {
            Verdict::Diluted
        } else {
            Verdict::Unchanged
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConcentrationReport {
    /// Serialized as `[re, im]`.
    pub weak_value: Complex64,
    /// `Tr(K(ω − σᵢ))`.
    pub witness_gap: f64,
    /// `Im(O_W) · witness_gap`; its sign decides the verdict.
    pub first_order_gain: f64,
    pub ratio_first_order: f64,
    pub ratio_exact: f64,
    pub success_probability_exact: f64,
    pub verdict: Verdict,
}

pub fn concentration_report(setup: &WeakMeasurementSetup) -> Result<ConcentrationReport> {
    let weak_value = weak_value(setup.ancilla())?;
    let witness_gap = witness_gap(setup.kappa_spectrum(), &setup.probe().schmidt_diagonal())?;
    let first_order_gain = weak_value.im * witness_gap;
    let ratio_first_order = entropy_ratio_first_order(setup)?;
    let exact = exact_evolve_postselect(setup)?;
    let ratio_exact = exact.final_probe.entropy() / setup.probe().entropy();
    Ok(ConcentrationReport {
        weak_value,
        witness_gap,
        first_order_gain,
        ratio_first_order,
        ratio_exact,
        success_probability_exact: exact.success_probability,
        verdict: Verdict::from_gain(first_order_gain),
    })
}

/// Trace distance between the exact reduced state and the first-order one, both in the Schmidt basis.
pub fn first_order_state_error(setup: &WeakMeasurementSetup) -> Result<f64> {
    let predicted = DensityMatrix::diagonal(&first_order_reduced_populations(setup)?)?;
    // exact branch populations in the original Schmidt order
    let amplitudes = crate::weak::exact_branch_amplitudes(setup);
    let total: f64 = amplitudes.iter().map(|c| c.norm_sqr()).sum();
    let exact: Vec<f64> = amplitudes.iter().map(|c| c.norm_sqr() / total).collect();
    trace_distance(&DensityMatrix::diagonal(&exact)?, &predicted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenarios;
    use crate::weak::weak_limit_state;

    // Scalar oracle: p ln p for p = 0.9, 0.1 and their sum
    const PLNP_09: f64 = -0.094_824_464_092_043_66;
    const PLNP_01: f64 = -0.230_258_509_299_404_55;
    const S_09: f64 = 0.325_082_973_391_448_2;

    #[test]
    fn oracle_constants() {
        assert!((0.9f64 * 0.9f64.ln() - PLNP_09).abs() < 1e-16);
        assert!((0.1f64 * 0.1f64.ln() - PLNP_01).abs() < 1e-16);
        assert!((-(PLNP_09 + PLNP_01) - S_09).abs() < 1e-16);
    }

    #[test]
    fn omega_examples() {
        let mixed = DensityMatrix::diagonal(&[0.5, 0.5]).unwrap();
        let omega = omega_state(&mixed).unwrap();
        assert!((omega.diagonal_entries()[0] - 0.5).abs() < 1e-14);

        let skewed = DensityMatrix::diagonal(&[0.9, 0.1]).unwrap();
        let omega = omega_state(&skewed).unwrap().diagonal_entries();
        assert!((omega[0] - PLNP_09 / -S_09).abs() < 1e-14);
        assert!((omega[1] - PLNP_01 / -S_09).abs() < 1e-14);
        assert!((omega[0] - 0.291693).abs() < 1e-6);
        assert!((omega[1] - 0.708307).abs() < 1e-6);

        let pure = DensityMatrix::diagonal(&[1.0, 0.0]).unwrap();
        assert!(matches!(
            omega_state(&pure),
            Err(Error::DegenerateProbe { .. })
        ));
    }

    #[test]
    fn witness_gap_examples() {
        let skewed = DensityMatrix::diagonal(&[0.9, 0.1]).unwrap();
        let gap = witness_gap(&[0.0, 1.0], &skewed).unwrap();
        assert!((gap - (PLNP_01 / -S_09 - 0.1)).abs() < 1e-14);
        assert!((gap - 0.608307).abs() < 1e-6);
        assert!(witness_gap(&[1.0, 1.0], &skewed).unwrap().abs() < 1e-14);
        let mixed = DensityMatrix::diagonal(&[0.5, 0.5]).unwrap();
        assert!(witness_gap(&[0.3, -2.0], &mixed).unwrap().abs() < 1e-14);
        assert!(witness_gap(&[1.0], &skewed).is_err());
    }

    #[test]
    fn first_order_ratio_r1() {
        let expected = (1.0 + 0.2 * PLNP_01 / -S_09) / (1.0 + 0.2 * 0.1);
        let ratio = entropy_ratio_first_order(&scenarios::r1()).unwrap();
        assert!((ratio - expected).abs() < 1e-14);
        assert!((ratio - 1.119276).abs() < 1e-6);
    }

    #[test]
    fn first_order_ratio_null_cases() {
        assert_eq!(
            entropy_ratio_first_order(&scenarios::r1_no_postselection_shift()).unwrap(),
            1.0
        );
        let ratio = entropy_ratio_first_order(&scenarios::maximally_entangled()).unwrap();
        assert!((ratio - 1.0).abs() < 1e-15);
    }

    #[test]
    fn first_order_ratio_breaks_down_for_strong_coupling() {
        let setup = scenarios::r1_dilution().with_phi(10.0).unwrap();
        assert!(matches!(
            entropy_ratio_first_order(&setup),
            Err(Error::OutsideWeakRegime { .. })
        ));
    }

    #[test]
    fn exact_ratio_examples() {
        let r1 = scenarios::r1();
        assert!((entropy_ratio_exact(&r1.with_phi(0.0).unwrap()).unwrap() - 1.0).abs() < 1e-14);
        // populations 0.45 : 0.05 (1 + sin 0.2), normalized
        let p2 = 0.05 * (1.0 + 0.2f64.sin()) / (0.45 + 0.05 * (1.0 + 0.2f64.sin()));
        let expected = -(p2 * p2.ln() + (1.0 - p2) * (1.0 - p2).ln()) / S_09;
        let ratio = entropy_ratio_exact(&r1).unwrap();
        assert!((ratio - expected).abs() < 1e-12);
        assert!((ratio - 1.113503).abs() < 1e-4);
    }

    #[test]
    fn separable_probe_is_degenerate() {
        let r1 = scenarios::r1();
        let probe = crate::quantum::SchmidtForm::computational(vec![1.0, 0.0]).unwrap();
        let setup =
            WeakMeasurementSetup::new(probe, vec![0.0, 1.0], r1.ancilla().clone(), 0.1).unwrap();
        assert!(matches!(
            entropy_ratio_exact(&setup),
            Err(Error::DegenerateProbe { .. })
        ));
        assert!(matches!(
            concentration_report(&setup),
            Err(Error::DegenerateProbe { .. })
        ));
    }

    #[test]
    fn procrustean_examples() {
        let r1 = scenarios::r1();
        let t = procrustean_coefficients(&r1).unwrap();
        let norm = 1.021f64.sqrt();
        assert!((t[0] - 0.9f64.sqrt() / norm).abs() < 1e-14);
        assert!((t[1] - 0.1f64.sqrt() * 1.1 / norm).abs() < 1e-14);
        assert!((t[0] - 0.938877).abs() < 1e-6 && (t[1] - 0.344255).abs() < 1e-6);

        let t0 = procrustean_coefficients(&r1.with_phi(0.0).unwrap()).unwrap();
        for (a, b) in t0.iter().zip(r1.probe().coefficients()) {
            assert!((a - b).abs() < 1e-15);
        }

        let flat = WeakMeasurementSetup::new(
            r1.probe().clone(),
            vec![2.0, 2.0],
            r1.ancilla().clone(),
            0.1,
        )
        .unwrap();
        let t = procrustean_coefficients(&flat).unwrap();
        for (a, b) in t.iter().zip(r1.probe().coefficients()) {
            assert!((a - b).abs() < 1e-15);
        }

        let weak = weak_limit_state(&r1).unwrap();
        let mut sorted = t.clone();
        sorted.sort_by(|a, b| b.total_cmp(a));
        for (a, b) in procrustean_coefficients(&r1)
            .unwrap()
            .iter()
            .zip(weak.final_probe.coefficients())
        {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn report_verdicts() {
        let report = concentration_report(&scenarios::r1()).unwrap();
        assert_eq!(report.verdict, Verdict::Concentrated);
        assert!((report.first_order_gain - 0.608307).abs() < 1e-6);
        assert!((report.success_probability_exact - 0.509_933_466_5).abs() < 1e-9);

        let report = concentration_report(&scenarios::r1_dilution()).unwrap();
        assert_eq!(report.verdict, Verdict::Diluted);
        assert!((report.first_order_gain + 0.608307).abs() < 1e-6);
        assert!(report.ratio_exact < 1.0 && report.ratio_first_order < 1.0);

        let report = concentration_report(&scenarios::r1_no_postselection_shift()).unwrap();
        assert_eq!(report.verdict, Verdict::Unchanged);
    }

    #[test]
    fn report_serializes_weak_value_as_pair() {
        let report = concentration_report(&scenarios::r1()).unwrap();
        let json = serde_json::to_value(&report).unwrap();
        assert_eq!(json["verdict"], "concentrated");
        assert!(json["weak_value"].is_array());
    }

    #[test]
    fn first_order_state_error_is_at_least_quadratic() {
        let a = first_order_state_error(&scenarios::r1()).unwrap();
        let b = first_order_state_error(&scenarios::r1().with_phi(0.05).unwrap()).unwrap();
        // order ≥ 1.8 per halving; R1 happens to be third order
        assert!(a / b >= 2f64.powf(1.8), "{}", a / b);
    }
}
