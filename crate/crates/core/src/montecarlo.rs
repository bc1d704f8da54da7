//! Sampled preparation-and-measurement runs, checked against Born-rule
//! predictions.
//!
//! Random numbers come from ChaCha8 (`rand_chacha` 0.3). Shard `k` of a run
//! with seed `s` draws from stream `k` of `ChaCha8Rng::seed_from_u64(s)`, so a
//! given `(seed, shards)` schedule reproduces bit-for-bit on every platform
//! and regardless of how shards are scheduled onto threads.

use rand::distributions::{Distribution, WeightedIndex};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::ensemble::ClassifiedEnsemble;
use crate::error::{Error, Result};
use crate::strategy::{validate_strategy_with, ClassificationStrategy, ValidationTolerances};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimulationResult {
    pub trials: u64,
    /// `counts[member][outcome]`; outcomes `0..n` are classes `1..=n`,
    /// outcome `n` is failure.
    pub counts: Vec<Vec<u64>>,
    pub empirical_success: f64,
    pub predicted_success: f64,
    /// Binomial standard deviation of the empirical success rate.
    pub success_sigma: f64,
    /// Largest per-cell deviation from prediction in units of binomial σ.
    /// Cells predicted exactly 0 or 1 must match exactly, else this is ∞.
    pub max_deviation_sigma: f64,
    /// Total counts in wrong-class cells.
    pub cross_class_counts: u64,
}

/// Single-stream simulation of `trials` rounds.
pub fn simulate(
    e: &ClassifiedEnsemble,
    s: &ClassificationStrategy,
    trials: u64,
    seed: u64,
) -> Result<SimulationResult> {
    simulate_sharded(e, s, trials, seed, 1)
}

/// Simulation split into `shards` independent streams, run in parallel and
/// summed. Shard `k` runs `trials / shards` rounds, plus one if
/// `k < trials % shards`.
pub fn simulate_sharded(
    e: &ClassifiedEnsemble,
    s: &ClassificationStrategy,
    trials: u64,
    seed: u64,
    shards: u64,
) -> Result<SimulationResult> {
    simulate_with(e, s, trials, seed, shards, ValidationTolerances::default())
}

/// [`simulate_sharded`] with explicit validation tolerances. Outcome
/// probabilities below `tol.leakage` are sampled as exactly zero.
pub fn simulate_with(
    e: &ClassifiedEnsemble,
    s: &ClassificationStrategy,
    trials: u64,
    seed: u64,
    shards: u64,
    tol: ValidationTolerances,
) -> Result<SimulationResult> {
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    if shards == 0 {
        return Err(Error::InvalidArgument("shards must be at least 1".into()));
    }
    let v = validate_strategy_with(e, s, tol)?;
    if !v.passes() {
        return Err(Error::StrategyFailedValidation(format!(
            "completeness defect {:e}, cross-class probability {:e}",
            v.max_completeness_defect, v.max_cross_class_probability
        )));
    }
    let table = sampling_table(&v.outcome_probabilities, tol.leakage);
    let n_out = e.classes() + 1;

    let member_dist = WeightedIndex::new(e.members().iter().map(|m| m.prior))
        .map_err(|err| Error::InvalidArgument(err.to_string()))?;
    let outcome_dists = table
        .iter()
        .map(|row| WeightedIndex::new(row.iter().copied()))
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|err| Error::InvalidArgument(err.to_string()))?;

    let shard_counts: Vec<Vec<Vec<u64>>> = (0..shards)
        .into_par_iter()
        .map(|k| {
            let n = trials / shards + u64::from(k < trials % shards);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(k);
            let mut counts = vec![vec![0u64; n_out]; e.len()];
            for _ in 0..n {
                let member = member_dist.sample(&mut rng);
                let outcome = outcome_dists[member].sample(&mut rng);
                counts[member][outcome] += 1;
            }
            counts
        })
        .collect();

    let mut counts = vec![vec![0u64; n_out]; e.len()];
    for shard in &shard_counts {
        for (row, srow) in counts.iter_mut().zip(shard) {
            for (c, sc) in row.iter_mut().zip(srow) {
                *c += sc;
            }
        }
    }

    let successes: u64 = e
        .members()
        .iter()
        .zip(&counts)
        .map(|(m, row)| row[m.class - 1])
        .sum();
    let cross_class_counts: u64 = e
        .members()
        .iter()
        .zip(&counts)
        .map(|(m, row)| {
            row[..n_out - 1]
                .iter()
                .enumerate()
                .filter(|(k, _)| k + 1 != m.class)
                .map(|(_, c)| c)
                .sum::<u64>()
        })
        .sum();
    let predicted = v.average_success;

    Ok(SimulationResult {
        trials,
        empirical_success: successes as f64 / trials as f64,
        predicted_success: predicted,
        success_sigma: (predicted * (1.0 - predicted) / trials as f64)
            .max(0.0)
            .sqrt(),
        max_deviation_sigma: max_deviation_sigma(&counts, &table),
        cross_class_counts,
        counts,
    })
}

/// Outcome probabilities with sub-tolerance entries set to zero and each row
/// renormalized.
fn sampling_table(probabilities: &[Vec<f64>], cutoff: f64) -> Vec<Vec<f64>> {
    probabilities
        .iter()
        .map(|row| {
            let cleaned: Vec<f64> = row
                .iter()
                .map(|&p| if p < cutoff { 0.0 } else { p })
                .collect();
            let total: f64 = cleaned.iter().sum();
            cleaned.iter().map(|p| p / total).collect()
        })
        .collect()
}

fn max_deviation_sigma(counts: &[Vec<u64>], table: &[Vec<f64>]) -> f64 {
    let mut worst = 0.0_f64;
    for (row, probs) in counts.iter().zip(table) {
        let n: u64 = row.iter().sum();
        if n == 0 {
            continue;
        }
        for (&c, &p) in row.iter().zip(probs) {
            let expected = n as f64 * p;
            let dev = if p <= 0.0 || p >= 1.0 {
                if c as f64 == expected {
                    0.0
                } else {
                    f64::INFINITY
                }
            } else {
                (c as f64 - expected).abs() / (expected * (1.0 - p)).sqrt()
            };
            worst = worst.max(dev);
        }
    }
    worst
}
