//! Search over ancilla ingredients `{|i⟩, O, |f⟩}` for concentrating setups.
//!
//! The probe, `K` spectrum and coupling stay fixed for a whole run, so the
//! witness gap is fixed too and the sign of the gain is the sign of `Im(O_W)`.

use std::cmp::Ordering;
use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::concentration::{concentration_report, witness_gap, EPS_ENTROPY};
use crate::error::{Error, Result};
use crate::quantum::{HermitianObservable, SchmidtForm, StateVector};
use crate::weak::{AncillaSelection, WeakMeasurementSetup, EPS_OVERLAP};

/// Everything held fixed during a search, plus the pool of ancilla observables.
#[derive(Debug, Clone)]
pub struct CandidateSpace {
    probe: SchmidtForm,
    kappa_spectrum: Vec<f64>,
    observable_pool: Vec<HermitianObservable>,
    phi: f64,
    eps_overlap: f64,
    witness_gap: f64,
}

impl CandidateSpace {
    pub fn new(
        probe: SchmidtForm,
        kappa_spectrum: Vec<f64>,
        observable_pool: Vec<HermitianObservable>,
        phi: f64,
    ) -> Result<Self> {
        let Some(first) = observable_pool.first() else {
            return Err(Error::InvalidSearchConfig(
                "observable pool is empty".into(),
            ));
        };
        let dim = first.dim();
        if let Some(o) = observable_pool.iter().find(|o| o.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: o.dim(),
            });
        }
        if kappa_spectrum.len() != probe.rank() {
            return Err(Error::DimensionMismatch {
                expected: probe.rank(),
                got: kappa_spectrum.len(),
            });
        }
        if !(phi >= 0.0) || !phi.is_finite() {
            return Err(Error::InvalidSetup(format!(
                "coupling phi must be finite and >= 0, got {phi}"
            )));
        }
        let entropy = probe.entropy();
        if probe.rank() < 2 || entropy < EPS_ENTROPY {
            return Err(Error::DegenerateProbe { entropy });
        }
        let witness_gap = witness_gap(&kappa_spectrum, &probe.schmidt_diagonal())?;
        Ok(Self {
            probe,
            kappa_spectrum,
            observable_pool,
            phi,
            eps_overlap: EPS_OVERLAP,
            witness_gap,
        })
    }

    /// Overrides the post-selection orthogonality threshold used for every candidate.
    pub fn with_eps_overlap(mut self, eps_overlap: f64) -> Self {
        self.eps_overlap = eps_overlap;
        self
    }

    pub fn ancilla_dim(&self) -> usize {
        self.observable_pool[0].dim()
    }

    pub fn probe(&self) -> &SchmidtForm {
        &self.probe
    }

    pub fn kappa_spectrum(&self) -> &[f64] {
        &self.kappa_spectrum
    }

    pub fn observable_pool(&self) -> &[HermitianObservable] {
        &self.observable_pool
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// `Tr(K(ω − σᵢ))`, shared by every candidate.
    pub fn witness_gap(&self) -> f64 {
        self.witness_gap
    }

    /// The full setup for one choice of ingredients.
    pub fn setup(&self, ingredients: &Ingredients) -> Result<WeakMeasurementSetup> {
        let observable = self
            .observable_pool
            .get(ingredients.observable)
            .ok_or_else(|| {
                Error::InvalidSearchConfig(format!(
                    "observable index {} outside pool of {}",
                    ingredients.observable,
                    self.observable_pool.len()
                ))
            })?
            .clone();
        let ancilla = AncillaSelection::with_eps_overlap(
            StateVector::new(ingredients.pre.clone())?,
            StateVector::new(ingredients.post.clone())?,
            observable,
            self.eps_overlap,
        )?;
        WeakMeasurementSetup::new(
            self.probe.clone(),
            self.kappa_spectrum.clone(),
            ancilla,
            self.phi,
        )
    }
}

/// One point of the search space: pre- and post-selected amplitudes and an index into the observable pool.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Ingredients {
    pub pre: Vec<Complex64>,
    pub post: Vec<Complex64>,
    pub observable: usize,
}

impl Ingredients {
    /// Lexicographic order: observable index, then pre, then post amplitudes `(re, im)`.
    pub fn lexicographic_cmp(&self, other: &Self) -> Ordering {
        fn amps(v: &[Complex64]) -> impl Iterator<Item = f64> + '_ {
            v.iter().flat_map(|z| [z.re, z.im])
        }
        self.observable.cmp(&other.observable).then_with(|| {
            amps(&self.pre)
                .chain(amps(&self.post))
                .zip(amps(&other.pre).chain(amps(&other.post)))
                .map(|(a, b)| a.total_cmp(&b))
                .find(|o| o.is_ne())
                .unwrap_or_else(|| {
                    (self.pre.len() + self.post.len()).cmp(&(other.pre.len() + other.post.len()))
                })
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CandidateResult {
    pub ingredients: Ingredients,
    /// `[re, im]`; zero when infeasible.
    pub weak_value: Complex64,
    pub first_order_gain: f64,
    pub success_probability_exact: f64,
    /// False when the report could not be formed (orthogonal or impossible
    /// post-selection, coupling outside the weak regime, bad ingredients).
    pub feasible: bool,
}

pub fn evaluate_candidate(space: &CandidateSpace, ingredients: &Ingredients) -> CandidateResult {
    let report = space
        .setup(ingredients)
        .and_then(|setup| concentration_report(&setup));
    match report {
        Ok(report) => CandidateResult {
            ingredients: ingredients.clone(),
            weak_value: report.weak_value,
            first_order_gain: report.first_order_gain,
            success_probability_exact: report.success_probability_exact,
            feasible: true,
        },
        Err(_) => CandidateResult {
            ingredients: ingredients.clone(),
            weak_value: Complex64::new(0.0, 0.0),
            first_order_gain: 0.0,
            success_probability_exact: 0.0,
            feasible: false,
        },
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    Random,
    /// `resolution` lattice points per Bloch angle; qubit ancillas only.
    Grid {
        resolution: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub seed: u64,
    pub samples: usize,
    pub min_success: f64,
    pub strategy: Strategy,
}

impl SearchConfig {
    pub fn random(seed: u64, samples: usize, min_success: f64) -> Result<Self> {
        let config = Self {
            seed,
            samples,
            min_success,
            strategy: Strategy::Random,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn grid(resolution: usize, min_success: f64) -> Result<Self> {
        let config = Self {
            seed: 0,
            samples: 1,
            min_success,
            strategy: Strategy::Grid { resolution },
        };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if self.samples == 0 {
            return Err(Error::InvalidSearchConfig(
                "samples must be at least 1".into(),
            ));
        }
        if !(0.0..=1.0).contains(&self.min_success) {
            return Err(Error::InvalidSearchConfig(format!(
                "min_success must lie in [0, 1], got {}",
                self.min_success
            )));
        }
        if let Strategy::Grid { resolution } = self.strategy {
            if resolution < 2 {
                return Err(Error::InvalidSearchConfig(
                    "grid resolution must be at least 2".into(),
                ));
            }
        }
        Ok(())
    }
}

/// Haar-random pure state: for qubits, a uniformly distributed point on the Bloch sphere.
fn sample_state(rng: &mut ChaCha8Rng, dim: usize) -> Vec<Complex64> {
    if dim == 2 {
        let theta = (1.0 - 2.0 * rng.random::<f64>()).acos();
        let chi = 2.0 * PI * rng.random::<f64>();
        return StateVector::bloch(theta, chi).amplitudes().to_vec();
    }
    let raw: Vec<Complex64> = (0..dim)
        .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect();
    StateVector::normalized(raw)
        .expect("gaussian vector is nonzero")
        .amplitudes()
        .to_vec()
}

/// Ingredients for candidate `index`, drawn from its own stream seeded with `seed ^ index`.
pub fn sample_ingredients(space: &CandidateSpace, seed: u64, index: u64) -> Ingredients {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ index);
    let observable = rng.random_range(0..space.observable_pool.len());
    let dim = space.ancilla_dim();
    let pre = sample_state(&mut rng, dim);
    let post = sample_state(&mut rng, dim);
    Ingredients {
        pre,
        post,
        observable,
    }
}

fn keep(result: &CandidateResult, min_success: f64) -> bool {
    result.feasible && result.success_probability_exact >= min_success
}

/// Evaluates exactly `config.samples` random candidates and returns the feasible
/// ones reaching `min_success`, in sample order.
pub fn random_search(
    space: &CandidateSpace,
    config: &SearchConfig,
) -> Result<Vec<CandidateResult>> {
    config.validate()?;
    Ok((0..config.samples as u64)
        .into_par_iter()
        .map(|index| evaluate_candidate(space, &sample_ingredients(space, config.seed, index)))
        .collect::<Vec<_>>()
        .into_iter()
        .filter(|r| keep(r, config.min_success))
        .collect())
}

/// Exhaustive sweep over `(θ_pre, χ_pre, θ_post, χ_post, observable)` with
/// `θ_j = π j/(n−1)` and `χ_m = 2π m/n`, in lexicographic lattice order.
pub fn grid_search(space: &CandidateSpace, config: &SearchConfig) -> Result<Vec<CandidateResult>> {
    config.validate()?;
    let Strategy::Grid { resolution: n } = config.strategy else {
        return Err(Error::InvalidSearchConfig(
            "grid_search needs a grid strategy".into(),
        ));
    };
    if space.ancilla_dim() != 2 {
        return Err(Error::InvalidSearchConfig(format!(
            "grid search needs a qubit ancilla, got dimension {}",
            space.ancilla_dim()
        )));
    }
    let states: Vec<Vec<Complex64>> = (0..n)
        .flat_map(|j| (0..n).map(move |m| (j, m)))
        .map(|(j, m)| {
            let theta = PI * j as f64 / (n - 1) as f64;
            let chi = 2.0 * PI * m as f64 / n as f64;
            StateVector::bloch(theta, chi).amplitudes().to_vec()
        })
        .collect();
    let pool = space.observable_pool.len();
    let lattice: Vec<Ingredients> = states
        .iter()
        .flat_map(|pre| {
            states.iter().flat_map(move |post| {
                (0..pool).map(move |observable| Ingredients {
                    pre: pre.clone(),
                    post: post.clone(),
                    observable,
                })
            })
        })
        .collect();
    Ok(lattice
        .par_iter()
        .map(|ingredients| evaluate_candidate(space, ingredients))
        .collect::<Vec<_>>()
        .into_iter()
        .filter(|r| keep(r, config.min_success))
        .collect())
}

/// Dispatches on `config.strategy`.
pub fn search(space: &CandidateSpace, config: &SearchConfig) -> Result<Vec<CandidateResult>> {
    match config.strategy {
        Strategy::Random => random_search(space, config),
        Strategy::Grid { .. } => grid_search(space, config),
    }
}

/// Non-dominated subset maximizing `(first_order_gain, success_probability_exact)`,
/// sorted by descending gain. Of several candidates at the same point only the
/// lexicographically first ingredients survive.
pub fn pareto_filter(results: &[CandidateResult]) -> Vec<CandidateResult> {
    let mut sorted: Vec<&CandidateResult> = results.iter().collect();
    sorted.sort_by(|a, b| {
        b.first_order_gain
            .total_cmp(&a.first_order_gain)
            .then_with(|| {
                b.success_probability_exact
                    .total_cmp(&a.success_probability_exact)
            })
            .then_with(|| a.ingredients.lexicographic_cmp(&b.ingredients))
    });
    let mut front: Vec<CandidateResult> = Vec::new();
    let mut best_success = f64::NEG_INFINITY;
    for candidate in sorted {
        if candidate.success_probability_exact > best_success {
            best_success = candidate.success_probability_exact;
            front.push(candidate.clone());
        }
    }
    front
}
