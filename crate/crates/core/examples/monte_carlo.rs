//! Sample many preparation and measurement rounds and compare with the
//! Born-rule prediction.

use conclusive::ensemble::presets;
use conclusive::montecarlo::simulate_sharded;
use conclusive::strategy::construct_single_state_strategy;

fn main() -> conclusive::Result<()> {
    let e = presets::plus_vs_zero();
    let s = construct_single_state_strategy(&e, 0)?;
    let r = simulate_sharded(&e, &s, 1_000_000, 2024, 8)?;

    println!("outcome columns: class 1, class 2, failure");
    for (i, row) in r.counts.iter().enumerate() {
        println!("member {i}: {row:?}");
    }
    println!(
        "success {:.5} vs predicted {:.5} ({:+.2} sigma)",
        r.empirical_success,
        r.predicted_success,
        (r.empirical_success - r.predicted_success) / r.success_sigma
    );
    println!("wrong answers: {}", r.cross_class_counts);
    Ok(())
}
