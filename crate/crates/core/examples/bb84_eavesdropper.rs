//! Can an eavesdropper learn the BB84 bit conclusively from a single copy?

use conclusive::cli::run_bb84_demo;
use conclusive::ensemble::presets;
use conclusive::strategy::construct_projective_strategy;

fn main() {
    let outcome = run_bb84_demo();
    println!("{}", outcome.report);

    // No error-free detector exists, so construction is refused.
    match construct_projective_strategy(&presets::bb84()) {
        Ok(_) => println!("unexpected: found a strategy"),
        Err(err) => println!("{err}"),
    }
}
