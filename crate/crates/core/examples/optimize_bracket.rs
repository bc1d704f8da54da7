//! Bracket the optimal success probability between a numerically found
//! strategy and the closed-form upper bound.

use conclusive::ensemble::parse_ensemble;
use conclusive::optimizer::{optimize_classification, OptimizationConfig};

const QUTRIT: &str = include_str!("../data/three_class_qutrit.json");

fn main() -> conclusive::Result<()> {
    let e = parse_ensemble(QUTRIT.as_bytes())?;
    let cfg = OptimizationConfig {
        restarts: 8,
        seed: 7,
        ..Default::default()
    };
    let o = optimize_classification(&e, &cfg);
    println!(
        "optimum in [{:.9}, {:.9}] (restart {}, {} iterations, converged: {})",
        o.success_lower_bound, o.upper_bound_reference, o.best_restart, o.iterations, o.converged
    );
    for (m, a) in o.strategy.detection_povm().iter().enumerate() {
        println!("tr Pi_{} = {:.6}", m + 1, a.trace().re);
    }
    Ok(())
}
