//! Which states of an ensemble can be classified without error?
//!
//! Run with `cargo run --example feasibility_check [ensemble.json]`.

use conclusive::ensemble::{parse_ensemble, presets};
use conclusive::feasibility::{classifiable_states, decompose};

fn main() -> conclusive::Result<()> {
    let e = match std::env::args().nth(1) {
        Some(path) => parse_ensemble(&std::fs::read(path).expect("readable file"))?,
        None => presets::plus_vs_zero(),
    };

    for idx in 0..e.len() {
        let d = decompose(&e, idx)?;
        println!("member {idx} (class {}):", e.members()[idx].class);
        for (j, c) in &d.coefficients {
            println!("  C[{j}] = {:.6} {:+.6}i", c.re, c.im);
        }
        println!("  |d|^2 = {:.6}", d.residual_weight_sq());
    }

    let report = classifiable_states(&e);
    let ok: Vec<usize> = report.classifiable_indices().collect();
    println!("classifiable members: {ok:?}");
    println!("conclusive classification possible: {}", report.feasible);
    Ok(())
}
