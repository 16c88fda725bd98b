//! JSON file schemas. Complex numbers are `[re, im]` pairs.
//!
//! Probes are given by their Schmidt coefficients in the computational basis;
//! `kappa_spectrum[k]` is the eigenvalue of `K` on `|k⟩`. Coefficients need not
//! be sorted: they are reordered together with their basis vectors and `K`
//! eigenvalues, which leaves the state unchanged.

use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quantum::{CMatrix, HermitianObservable, SchmidtForm, StateVector, EPS_VALID};
use crate::search::{CandidateSpace, Ingredients};
use crate::weak::{AncillaSelection, WeakMeasurementSetup};

pub type ComplexPair = [f64; 2];

/// One complete experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SetupConfig {
    pub schmidt_coefficients: Vec<f64>,
    pub kappa_spectrum: Vec<f64>,
    pub ancilla_pre: Vec<ComplexPair>,
    pub ancilla_post: Vec<ComplexPair>,
    /// Row-major.
    pub observable: Vec<Vec<ComplexPair>>,
    pub phi: f64,
}

/// The fixed part of an ingredient search plus the observable pool.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceConfig {
    pub schmidt_coefficients: Vec<f64>,
    pub kappa_spectrum: Vec<f64>,
    pub observable_pool: Vec<Vec<Vec<ComplexPair>>>,
    pub phi: f64,
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("cannot read {}: {e}", path.display())))
}

fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::config("<document>", e.to_string()))
}

impl SetupConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        parse(text)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&read(path.as_ref())?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes") + "\n"
    }

    pub fn to_setup(&self) -> Result<WeakMeasurementSetup> {
        self.to_setup_with_eps(crate::weak::EPS_OVERLAP)
    }

    /// Validates every field and builds the setup, using `eps_overlap` for the orthogonality flag.
    pub fn to_setup_with_eps(&self, eps_overlap: f64) -> Result<WeakMeasurementSetup> {
        let (probe, kappa) = probe_from_fields(&self.schmidt_coefficients, &self.kappa_spectrum)?;
        let observable = observable_from_field(&self.observable, "observable")?;
        let pre = state_from_field(&self.ancilla_pre, "ancilla_pre")?;
        let post = state_from_field(&self.ancilla_post, "ancilla_post")?;
        for (name, dim) in [("ancilla_pre", pre.dim()), ("ancilla_post", post.dim())] {
            if dim != observable.dim() {
                return Err(Error::config(
                    name,
                    format!(
                        "dimension {dim} does not match observable dimension {}",
                        observable.dim()
                    ),
                ));
            }
        }
        check_phi(self.phi)?;
        let ancilla = AncillaSelection::with_eps_overlap(pre, post, observable, eps_overlap)?;
        WeakMeasurementSetup::new(probe, kappa, ancilla, self.phi)
    }
}

impl SpaceConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        parse(text)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&read(path.as_ref())?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes") + "\n"
    }

    pub fn to_space(&self) -> Result<CandidateSpace> {
        self.to_space_with_eps(crate::weak::EPS_OVERLAP)
    }

    pub fn to_space_with_eps(&self, eps_overlap: f64) -> Result<CandidateSpace> {
        let (probe, kappa) = probe_from_fields(&self.schmidt_coefficients, &self.kappa_spectrum)?;
        if self.observable_pool.is_empty() {
            return Err(Error::config(
                "observable_pool",
                "must contain at least one observable",
            ));
        }
        let pool = self
            .observable_pool
            .iter()
            .enumerate()
            .map(|(i, o)| observable_from_field(o, &format!("observable_pool[{i}]")))
            .collect::<Result<Vec<_>>>()?;
        check_phi(self.phi)?;
        Ok(CandidateSpace::new(probe, kappa, pool, self.phi)?.with_eps_overlap(eps_overlap))
    }

    /// A standalone setup file reproducing one search candidate.
    pub fn replay_setup(&self, ingredients: &Ingredients) -> SetupConfig {
        let pairs = |v: &[Complex64]| v.iter().map(|z| [z.re, z.im]).collect();
        SetupConfig {
            schmidt_coefficients: self.schmidt_coefficients.clone(),
            kappa_spectrum: self.kappa_spectrum.clone(),
            ancilla_pre: pairs(&ingredients.pre),
            ancilla_post: pairs(&ingredients.post),
            observable: self.observable_pool[ingredients.observable].clone(),
            phi: self.phi,
        }
    }
}

fn check_phi(phi: f64) -> Result<()> {
    if !(phi >= 0.0) || !phi.is_finite() {
        return Err(Error::config(
            "phi",
            format!("must be finite and >= 0, got {phi}"),
        ));
    }
    Ok(())
}

/// Sorts `(s_k, λ_k, |k⟩)` by descending `s_k` and builds the Schmidt form.
fn probe_from_fields(coefficients: &[f64], kappa: &[f64]) -> Result<(SchmidtForm, Vec<f64>)> {
    const FIELD: &str = "schmidt_coefficients";
    if coefficients.is_empty() {
        return Err(Error::config(FIELD, "must not be empty"));
    }
    if let Some((k, s)) = coefficients
        .iter()
        .enumerate()
        .find(|(_, s)| !(**s >= 0.0) || !s.is_finite())
    {
        return Err(Error::config(
            FIELD,
            format!("entry {k} = {s} must be finite and >= 0"),
        ));
    }
    let norm_sq: f64 = coefficients.iter().map(|s| s * s).sum();
    if (norm_sq - 1.0).abs() > EPS_VALID {
        return Err(Error::config(
            FIELD,
            format!("squares must sum to 1, got {norm_sq}"),
        ));
    }
    if kappa.len() != coefficients.len() {
        return Err(Error::config(
            "kappa_spectrum",
            format!(
                "has {} entries, expected {}",
                kappa.len(),
                coefficients.len()
            ),
        ));
    }
    if let Some((k, l)) = kappa.iter().enumerate().find(|(_, l)| !l.is_finite()) {
        return Err(Error::config(
            "kappa_spectrum",
            format!("entry {k} = {l} is not finite"),
        ));
    }
    let dim = coefficients.len();
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&a, &b| coefficients[b].total_cmp(&coefficients[a]));
    let basis: Vec<StateVector> = order.iter().map(|&k| StateVector::basis(dim, k)).collect();
    let probe = SchmidtForm::new(
        order.iter().map(|&k| coefficients[k]).collect(),
        basis.clone(),
        basis,
    )?;
    Ok((probe, order.iter().map(|&k| kappa[k]).collect()))
}

fn state_from_field(pairs: &[ComplexPair], field: &str) -> Result<StateVector> {
    if pairs.is_empty() {
        return Err(Error::config(field, "must not be empty"));
    }
    let amplitudes: Vec<Complex64> = pairs
        .iter()
        .map(|[re, im]| Complex64::new(*re, *im))
        .collect();
    StateVector::new(amplitudes).map_err(|e| Error::config(field, e.to_string()))
}

fn observable_from_field(rows: &[Vec<ComplexPair>], field: &str) -> Result<HermitianObservable> {
    let dim = rows.len();
    if dim == 0 {
        return Err(Error::config(field, "must not be empty"));
    }
    if let Some((r, row)) = rows.iter().enumerate().find(|(_, row)| row.len() != dim) {
        return Err(Error::config(
            field,
            format!("row {r} has {} entries, expected {dim}", row.len()),
        ));
    }
    let matrix = CMatrix::from_fn(dim, dim, |r, c| {
        Complex64::new(rows[r][c][0], rows[r][c][1])
    });
    HermitianObservable::new(matrix).map_err(|e| Error::config(field, e.to_string()))
}
