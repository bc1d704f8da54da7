//! Closed-form limits: the pairwise failure bound, the IDP limit and the
//! two-state optimum for unequal priors.

use conclusive::bounds::{bound_report, idp_limit, jaeger_shimony};
use conclusive::ensemble::presets;

fn main() -> conclusive::Result<()> {
    let r = bound_report(&presets::bb84());
    for p in &r.pairwise_min_failure_products {
        println!(
            "members {} and {}: sqrt(gamma gamma) >= {:.6}",
            p.a, p.b, p.overlap
        );
    }
    println!("BB84 failure >= {:.12}", r.failure_lower_bound);
    println!("BB84 success <= {:.12}", r.success_upper_bound);

    println!("\n  s    IDP     p=0.7   bound(p=0.7)");
    for s in [0.1, 0.3, 0.5, 0.7, 0.9] {
        let e = presets::two_states(0.7, s)?;
        println!(
            "{s:.1}  {:.4}  {:.4}  {:.4}",
            idp_limit(s)?,
            jaeger_shimony(0.7, 0.3, s)?,
            bound_report(&e).success_upper_bound
        );
    }
    Ok(())
}
