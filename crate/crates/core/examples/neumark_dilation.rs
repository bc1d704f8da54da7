//! Realize a generalized measurement as a unitary on system ⊗ ancilla
//! followed by a projective measurement of the ancilla.

use conclusive::ensemble::presets;
use conclusive::strategy::{construct_projective_strategy, neumark_dilation};

fn main() -> conclusive::Result<()> {
    let e = presets::two_states(0.5, 0.6)?;
    let s = construct_projective_strategy(&e)?;
    let d = neumark_dilation(&s)?;
    println!(
        "system {} x ancilla {}, unitarity defect {:.2e}",
        d.system_dim,
        d.ancilla_dim,
        d.unitary.isometry_defect()
    );

    for (i, m) in e.members().iter().enumerate() {
        let psi = m.state.amplitudes();
        let direct = s.outcome_probabilities(psi);
        let dilated = d.outcome_probabilities(psi);
        println!("member {i}: POVM {direct:.6?}");
        println!("          ancilla {dilated:.6?}");
    }

    // Failure branches of different classes keep the original overlap,
    // rescaled by the failure amplitudes.
    println!(
        "failure-overlap relation defect {:.2e}",
        d.failure_overlap_defect(&e)
    );
    Ok(())
}
