//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

mod common;

use std::time::{Duration, Instant};

use conclusive::bounds::{bound_report, jaeger_shimony, success_upper_bound};
use conclusive::cli;
use conclusive::ensemble::{gram_matrix, presets, ClassifiedEnsemble};
use conclusive::feasibility::{classifiable_states, decompose, is_conclusively_classifiable};
use conclusive::montecarlo::simulate;
use conclusive::numerics::{ComplexMatrix, RANK_TOL};
use conclusive::optimizer::{optimize_classification, OptimizationConfig};
use conclusive::strategy::{
    construct_projective_strategy, construct_single_state_strategy, neumark_dilation,
    validate_strategy, ClassificationStrategy,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = fn() -> Check;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn quick() -> OptimizationConfig {
    OptimizationConfig {
        restarts: 4,
        ..Default::default()
    }
}

/// Every validated strategy this suite exercises for an ensemble.
fn strategies(e: &ClassifiedEnsemble, cfg: &OptimizationConfig) -> Vec<ClassificationStrategy> {
    let mut out = Vec::new();
    for idx in classifiable_states(e).classifiable_indices() {
        out.push(construct_single_state_strategy(e, idx).unwrap());
    }
    if let Ok(s) = construct_projective_strategy(e) {
        out.push(s);
    }
    out.push(optimize_classification(e, cfg).strategy);
    out
}

fn bb84_infeasible() -> Check {
    let start = Instant::now();
    let outcome = cli::run([
        "check",
        "--input",
        concat!(env!("CARGO_MANIFEST_DIR"), "/data/bb84.json"),
        "--format",
        "json",
    ]);
    ensure(outcome.exit_code == 0, || {
        format!("check exited {}", outcome.exit_code)
    })?;
    let report: serde_json::Value = serde_json::from_str(&outcome.report).unwrap();
    ensure(report["feasible"] == false, || "feasible != false".into())?;
    let e = presets::bb84();
    let mut worst = 0.0_f64;
    for idx in 0..e.len() {
        let d = decompose(&e, idx).unwrap();
        worst = worst.max(d.residual_norm);
        ensure(!d.is_classifiable(), || {
            format!("member {idx} classifiable")
        })?;
    }
    ensure(worst <= 1e-9, || format!("residual norm {worst:e}"))?;
    let p = optimize_classification(&e, &OptimizationConfig::default()).success_lower_bound;
    ensure(p <= 1e-6, || format!("P_lower = {p:e}"))?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(1), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "max residual {worst:.1e}, P_lower {p:.1e}, {elapsed:.2?}"
    ))
}

fn idp_limit() -> Check {
    let start = Instant::now();
    let mut worst_gap = 0.0_f64;
    for s in [0.1, 0.3, 0.5, 0.7, 0.9] {
        let e = presets::two_states(0.5, s).unwrap();
        let ub = success_upper_bound(&e);
        ensure((ub - (1.0 - s)).abs() <= 1e-12, || {
            format!("s = {s}: bound {ub}")
        })?;
        let p = optimize_classification(&e, &OptimizationConfig::default()).success_lower_bound;
        ensure(p >= 1.0 - s - 1e-3, || format!("s = {s}: P_lower {p}"))?;
        worst_gap = worst_gap.max(1.0 - s - p);
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(10), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "max (1 - s) - P_lower = {worst_gap:.1e}, {elapsed:.2?}"
    ))
}

fn two_state_tightness() -> Check {
    let mut worst = 0.0_f64;
    for (p, q) in [(0.7, 0.3), (0.6, 0.4)] {
        for s in [0.2, 0.4, 0.6] {
            assert!(s <= f64::sqrt(q / p));
            let e = presets::two_states(p, s).unwrap();
            let expected = 1.0 - 2.0 * f64::sqrt(p * q) * s;
            let ub = success_upper_bound(&e);
            ensure((ub - expected).abs() <= 1e-12, || {
                format!("p = {p}, s = {s}: bound {ub} vs {expected}")
            })?;
            ensure(
                (jaeger_shimony(p, q, s).unwrap() - expected).abs() <= 1e-12,
                || "closed form".into(),
            )?;
            let found =
                optimize_classification(&e, &OptimizationConfig::default()).success_lower_bound;
            ensure((found - expected).abs() <= 1e-3, || {
                format!("p = {p}, s = {s}: optimizer {found} vs {expected}")
            })?;
            worst = worst.max((found - expected).abs());
        }
    }
    Ok(format!("max |optimizer - bound| = {worst:.1e}"))
}

/// The chosen member contributes exactly `η|d|²`. Other members of its class
/// add `η_k |⟨ψ⊥|ψ_k⟩|²` each, so the total equals `η|d|²` precisely when
/// those overlaps vanish (always for singleton classes).
fn single_state_identity() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (mut ensembles, mut checked, mut exact, mut worst) = (0, 0, 0, 0.0_f64);
    while ensembles < 50 {
        let e = common::random_ensemble(&mut rng, 4, 5, 0.3);
        if !is_conclusively_classifiable(&e) {
            continue;
        }
        ensembles += 1;
        for idx in classifiable_states(&e).classifiable_indices() {
            let s = construct_single_state_strategy(&e, idx).unwrap();
            let v = validate_strategy(&e, &s).unwrap();
            ensure(v.passes(), || {
                format!("strategy from member {idx} fails validation")
            })?;
            let d = decompose(&e, idx).unwrap();
            let eta = e.members()[idx].prior;
            let predicted = eta * d.residual_weight_sq();
            let own = eta * v.per_state_success[idx];
            let dir = d.residual_direction.as_ref().unwrap();
            let class = e.members()[idx].class;
            let others: f64 = e
                .class_indices(class)
                .filter(|&k| k != idx)
                .map(|k| e.members()[k].prior * dir.overlap(&e.members()[k].state).norm_sqr())
                .sum();
            let err = (own - predicted)
                .abs()
                .max((v.average_success - predicted - others).abs());
            ensure(err <= 1e-9, || {
                format!(
                    "member {idx}: own term {own}, total {}, eta|d|^2 {predicted}",
                    v.average_success
                )
            })?;
            if others <= 1e-12 {
                ensure((v.average_success - predicted).abs() <= 1e-9, || {
                    "total".into()
                })?;
                exact += 1;
            }
            worst = worst.max(err);
            checked += 1;
        }
    }
    Ok(format!(
        "{checked} strategies on 50 ensembles, max error {worst:.1e}; total = eta|d|^2 in {exact} cases without same-class overlap"
    ))
}

fn bound_dominance() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let cfg = quick();
    let (mut count, mut slack) = (0, f64::INFINITY);
    for _ in 0..200 {
        let e = common::random_ensemble(&mut rng, 4, 5, 0.3);
        let r = bound_report(&e);
        ensure((0.0..=1.0).contains(&r.failure_lower_bound), || {
            format!("Q_min = {}", r.failure_lower_bound)
        })?;
        for s in strategies(&e, &cfg) {
            let v = validate_strategy(&e, &s).unwrap();
            if !v.passes() {
                continue;
            }
            ensure(v.average_success <= r.success_upper_bound + 1e-8, || {
                format!(
                    "P = {} above bound {}",
                    v.average_success, r.success_upper_bound
                )
            })?;
            slack = slack.min(r.success_upper_bound - v.average_success);
            count += 1;
        }
    }
    Ok(format!(
        "{count} validated strategies on 200 ensembles, min slack {slack:.1e}"
    ))
}

fn dilation_equivalence() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let cfg = quick();
    let (mut done, mut prob_err, mut unit_err, mut overlap_err) = (0, 0.0_f64, 0.0_f64, 0.0_f64);
    while done < 50 {
        let e = common::random_ensemble(&mut rng, 3, 4, 0.2);
        if !is_conclusively_classifiable(&e) {
            continue;
        }
        let candidates = strategies(&e, &cfg);
        let s = &candidates[done % candidates.len()];
        ensure(validate_strategy(&e, s).unwrap().passes(), || {
            "unvalidated strategy".into()
        })?;
        let d = neumark_dilation(s).unwrap();
        let u = &d.unitary;
        let id = ComplexMatrix::identity(u.rows());
        unit_err = unit_err.max((&u.adjoint() * u).max_abs_diff(&id));
        for m in e.members() {
            let direct = s.outcome_probabilities(m.state.amplitudes());
            let dilated = d.outcome_probabilities(m.state.amplitudes());
            for (a, b) in direct.iter().zip(&dilated) {
                prob_err = prob_err.max((a - b).abs());
            }
        }
        overlap_err = overlap_err.max(d.failure_overlap_defect(&e));
        done += 1;
    }
    ensure(prob_err <= 1e-8, || {
        format!("probability mismatch {prob_err:e}")
    })?;
    ensure(unit_err <= 1e-8, || {
        format!("unitarity defect {unit_err:e}")
    })?;
    ensure(overlap_err <= 1e-8, || {
        format!("failure-overlap defect {overlap_err:e}")
    })?;
    Ok(format!(
        "probabilities {prob_err:.1e}, unitarity {unit_err:.1e}, overlaps {overlap_err:.1e}"
    ))
}

fn theorem_oracle() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let cfg = quick();
    let mut feasible = 0;
    for i in 0..100 {
        let e = common::random_ensemble(&mut rng, 3, 5, 0.4);
        let theorem = is_conclusively_classifiable(&e);
        let p = optimize_classification(&e, &cfg).success_lower_bound;
        ensure(theorem == (p > 1e-6), || {
            format!("ensemble {i}: theorem {theorem}, P_lower {p:e}")
        })?;
        feasible += usize::from(theorem);
    }
    let mut independent = 0;
    for i in 0..100 {
        let dim = 2 + i % 3;
        let len = 2 + (i / 3) % 4;
        let e = common::random_singletons(&mut rng, dim, len, 0.3);
        let all = classifiable_states(&e)
            .per_state
            .iter()
            .all(|s| s.classifiable);
        let full_rank = gram_matrix(&e).rank(RANK_TOL) == e.len();
        ensure(all == full_rank, || {
            format!("singletons {i}: all classifiable {all}, full rank {full_rank}")
        })?;
        independent += usize::from(full_rank);
    }
    Ok(format!(
        "{feasible}/100 feasible, all agree; singleton sets {independent}/100 independent, all agree"
    ))
}

fn monte_carlo() -> Check {
    let e = presets::plus_vs_zero();
    let s = construct_single_state_strategy(&e, 0).unwrap();
    let r = simulate(&e, &s, 100_000, 2024).unwrap();
    let z = (r.empirical_success - 0.25) / r.success_sigma;
    ensure(z.abs() <= 3.0, || {
        format!("{} is {z:.2} sigma from 0.25", r.empirical_success)
    })?;
    ensure(r.cross_class_counts == 0, || {
        format!("{} wrong-class counts", r.cross_class_counts)
    })?;
    Ok(format!(
        "empirical {:.5} ({z:+.2} sigma), 0 wrong-class counts",
        r.empirical_success
    ))
}

fn main() {
    let criteria: [(&str, Criterion); 8] = [
        ("BB84 infeasibility", bb84_infeasible),
        ("IDP limit", idp_limit),
        ("two-state bound tightness", two_state_tightness),
        ("single-detector success = eta|d|^2", single_state_identity),
        ("bound dominance", bound_dominance),
        ("dilation equivalence", dilation_equivalence),
        ("feasibility theorem vs optimizer", theorem_oracle),
        ("Monte Carlo consistency", monte_carlo),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        match result {
            Ok(detail) => println!(
                "criterion {}: PASS  {name}: {detail} [{:.2?}]",
                i + 1,
                start.elapsed()
            ),
            Err(detail) => {
                failed += 1;
                println!(
                    "criterion {}: FAIL  {name}: {detail} [{:.2?}]",
                    i + 1,
                    start.elapsed()
                );
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
