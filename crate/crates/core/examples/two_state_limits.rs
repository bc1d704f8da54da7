//! Optimizer against the known two-state optima, in both regimes of
//! unequal priors.

use conclusive::bounds::{jaeger_shimony, success_upper_bound};
use conclusive::ensemble::presets;
use conclusive::optimizer::{optimize_classification, OptimizationConfig};

fn main() -> conclusive::Result<()> {
    let cfg = OptimizationConfig {
        restarts: 4,
        ..Default::default()
    };
    println!("  p     s    optimum   found     bound");
    for (p, s) in [(0.5, 0.5), (0.7, 0.3), (0.7, 0.8), (0.9, 0.8)] {
        let e = presets::two_states(p, s)?;
        let found = optimize_classification(&e, &cfg).success_lower_bound;
        println!(
            "{p:.1}  {s:.1}  {:.6}  {found:.6}  {:.6}",
            jaeger_shimony(p, 1.0 - p, s)?,
            success_upper_bound(&e)
        );
    }
    Ok(())
}
