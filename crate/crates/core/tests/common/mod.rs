#![allow(dead_code)]

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use weakprobe::quantum::{schmidt_decompose, CMatrix};
use weakprobe::{
    AncillaSelection, HermitianObservable, SchmidtForm, StateVector, WeakMeasurementSetup,
};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

pub fn gaussian_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> CMatrix {
    DMatrix::from_fn(rows, cols, |_, _| gaussian(rng))
}

/// Random coefficient matrix with unit Frobenius norm.
pub fn random_bipartite(rng: &mut ChaCha8Rng, da: usize, db: usize) -> CMatrix {
    let m = gaussian_matrix(rng, da, db);
    let norm = m.norm();
    m / Complex64::new(norm, 0.0)
}

pub fn random_state(rng: &mut ChaCha8Rng, dim: usize) -> StateVector {
    StateVector::normalized((0..dim).map(|_| gaussian(rng)).collect()).unwrap()
}

pub fn random_hermitian(rng: &mut ChaCha8Rng, dim: usize) -> HermitianObservable {
    let g = gaussian_matrix(rng, dim, dim);
    HermitianObservable::new((&g + g.adjoint()) * Complex64::new(0.5, 0.0)).unwrap()
}

/// Haar-ish random unitary from the QR factorization of a Gaussian matrix.
pub fn random_unitary(rng: &mut ChaCha8Rng, dim: usize) -> CMatrix {
    gaussian_matrix(rng, dim, dim).qr().q()
}

/// Probe with generic (non-computational) Schmidt bases and full rank `rank`.
pub fn random_probe(rng: &mut ChaCha8Rng, rank: usize) -> SchmidtForm {
    let db = rank + rng.random_range(0..2);
    schmidt_decompose(&random_bipartite(rng, rank, db)).unwrap()
}

/// Random probe of rank 2–8, `K` spectrum in [-1, 1], ancilla of dimension 2–4.
pub fn random_setup(rng: &mut ChaCha8Rng, phi: f64) -> WeakMeasurementSetup {
    let rank = rng.random_range(2..=8);
    let probe = random_probe(rng, rank);
    let kappa = (0..probe.rank())
        .map(|_| rng.random_range(-1.0..1.0))
        .collect();
    let dc = rng.random_range(2..=4);
    let ancilla = loop {
        let sel = AncillaSelection::new(
            random_state(rng, dc),
            random_state(rng, dc),
            random_hermitian(rng, dc),
        )
        .unwrap();
        if !sel.is_orthogonal() {
            break sel;
        }
    };
    WeakMeasurementSetup::new(probe, kappa, ancilla, phi).unwrap()
}

/// Two-level probe and qubit ancilla, everything random.
pub fn random_qubit_setup(rng: &mut ChaCha8Rng, phi: f64) -> WeakMeasurementSetup {
    let probe = random_probe(rng, 2);
    let kappa = vec![rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)];
    let ancilla = AncillaSelection::new(
        random_state(rng, 2),
        random_state(rng, 2),
        random_hermitian(rng, 2),
    )
    .unwrap();
    WeakMeasurementSetup::new(probe, kappa, ancilla, phi).unwrap()
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let cov: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let var: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    cov / var
}

pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}
