#![allow(dead_code)]

use conclusive::ensemble::{ClassifiedEnsemble, PureState};
use conclusive::numerics::{self, ComplexMatrix};
use num_complex::Complex64;
use rand::Rng;

pub fn random_vector(rng: &mut impl Rng, dim: usize) -> Vec<Complex64> {
    (0..dim)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect()
}

pub fn random_state(rng: &mut impl Rng, dim: usize) -> PureState {
    loop {
        let v = random_vector(rng, dim);
        if numerics::norm(&v) > 1e-3 {
            return PureState::normalized(v).unwrap();
        }
    }
}

pub fn random_priors(rng: &mut impl Rng, n: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..n).map(|_| rng.gen_range(0.05..1.0)).collect();
    let total: f64 = raw.iter().sum();
    raw.iter().map(|p| p / total).collect()
}

/// Random ensemble with `2 ≤ d ≤ max_dim`, `2 ≤ N ≤ max_states`. With
/// probability `degenerate`, each state after the second is a random
/// combination of two earlier ones, which produces linear dependences.
pub fn random_ensemble(
    rng: &mut impl Rng,
    max_dim: usize,
    max_states: usize,
    degenerate: f64,
) -> ClassifiedEnsemble {
    let dim = rng.gen_range(2..=max_dim);
    let len = rng.gen_range(2..=max_states);
    let classes = rng.gen_range(2..=len);
    let priors = random_priors(rng, len);
    let mut states: Vec<PureState> = Vec::with_capacity(len);
    for i in 0..len {
        let state = if i >= 2 && rng.gen_bool(degenerate) {
            let a = rng.gen_range(0..i);
            let b = rng.gen_range(0..i);
            let (ca, cb) = (random_vector(rng, 1)[0], random_vector(rng, 1)[0]);
            let v: Vec<Complex64> = states[a]
                .amplitudes()
                .iter()
                .zip(states[b].amplitudes())
                .map(|(x, y)| ca * x + cb * y)
                .collect();
            if numerics::norm(&v) > 1e-3 {
                PureState::normalized(v).unwrap()
            } else {
                random_state(rng, dim)
            }
        } else {
            random_state(rng, dim)
        };
        states.push(state);
    }
    let parts = states
        .into_iter()
        .zip(priors)
        .enumerate()
        .map(|(i, (s, p))| {
            let class = if i < classes {
                i + 1
            } else {
                rng.gen_range(1..=classes)
            };
            (s, p, class)
        })
        .collect();
    ClassifiedEnsemble::from_parts(classes, parts).unwrap()
}

/// Every state in its own class.
/// Every state in its own class. With probability `degenerate`, each state
/// after the second is a positive combination of the first two.
pub fn random_singletons(
    rng: &mut impl Rng,
    dim: usize,
    len: usize,
    degenerate: f64,
) -> ClassifiedEnsemble {
    let priors = random_priors(rng, len);
    let mut states: Vec<PureState> = Vec::new();
    for i in 0..len {
        let s = if i >= 2 && rng.gen_bool(degenerate) {
            let v: Vec<Complex64> = states[0]
                .amplitudes()
                .iter()
                .zip(states[1].amplitudes())
                .map(|(x, y)| x * rng.gen_range(0.2..1.0) + y * rng.gen_range(0.2..1.0))
                .collect();
            PureState::normalized(v).unwrap()
        } else {
            random_state(rng, dim)
        };
        states.push(s);
    }
    let parts = states
        .into_iter()
        .zip(priors)
        .enumerate()
        .map(|(i, (s, p))| (s, p, i + 1))
        .collect();
    ClassifiedEnsemble::from_parts(len, parts).unwrap()
}

pub fn random_unitary(rng: &mut impl Rng, dim: usize) -> ComplexMatrix {
    loop {
        let vs: Vec<Vec<Complex64>> = (0..dim).map(|_| random_vector(rng, dim)).collect();
        let basis = numerics::orthonormal_basis(&vs, 1e-6);
        if basis.len() == dim {
            return ComplexMatrix::from_columns(&basis).unwrap();
        }
    }
}
