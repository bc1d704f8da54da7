//! One projective detector per class, scaled to fit under the identity.

use conclusive::ensemble::parse_ensemble;
use conclusive::strategy::{construct_projective_strategy, validate_strategy};

const QUTRIT: &str = include_str!("../data/three_class_qutrit.json");

fn main() -> conclusive::Result<()> {
    let e = parse_ensemble(QUTRIT.as_bytes())?;
    let s = construct_projective_strategy(&e)?;
    let v = validate_strategy(&e, &s)?;

    println!(
        "completeness defect       {:.3e}",
        v.max_completeness_defect
    );
    println!(
        "max wrong-class prob      {:.3e}",
        v.max_cross_class_probability
    );
    for (i, (p, m)) in v.per_state_success.iter().zip(e.members()).enumerate() {
        println!(
            "member {i} class {} success {p:.6} failure {:.6}",
            m.class, v.per_state_failure[i]
        );
    }
    println!("average success {:.6}", v.average_success);
    Ok(())
}
