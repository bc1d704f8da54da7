//! Single-detector strategy: project onto the part of one state that is
//! orthogonal to every other class.

use conclusive::ensemble::presets;
use conclusive::feasibility::decompose;
use conclusive::strategy::{construct_single_state_strategy, validate_strategy};

fn main() -> conclusive::Result<()> {
    let e = presets::plus_vs_zero();
    let idx = 0;
    let s = construct_single_state_strategy(&e, idx)?;
    let v = validate_strategy(&e, &s)?;

    let d = decompose(&e, idx)?;
    let predicted = e.members()[idx].prior * d.residual_weight_sq();

    println!("{}", s.to_json());
    println!("complete: {}, error-free: {}", v.complete, v.no_error);
    println!("success  {:.12}", v.average_success);
    println!("eta*|d|^2 {:.12}", predicted);
    Ok(())
}
