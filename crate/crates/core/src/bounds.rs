//! Closed-form limits on conclusive classification.
//!
//! For any error-free strategy, states `a`, `b` from different classes obey
//! `√(γ_a γ_b) ≥ |⟨ψ_a|ψ_b⟩|`. Weighting these pairwise constraints by
//! AM–GM with weights `η/(N − m)` yields a lower bound on the average failure
//! probability:
//!
//! ```text
//! Q ≥ Σ_{a,b in different classes} √(η_a η_b / ((N − m_a)(N − m_b))) |⟨ψ_a|ψ_b⟩|
//! ```
//!
//! The double sum runs over *ordered* pairs, so each unordered pair of states
//! contributes twice; this matches the factor 2 produced by AM–GM on each
//! pair. The success upper bound is `1 − Q_min`.

use serde::Serialize;

use crate::ensemble::{gram_matrix, ClassifiedEnsemble};
use crate::error::{Error, Result};

/// Lower bound on `√(γ_a γ_b)` for one cross-class pair (`a < b`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PairBound {
    pub a: usize,
    pub b: usize,
    pub overlap: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub pairwise_min_failure_products: Vec<PairBound>,
    pub failure_lower_bound: f64,
    pub success_upper_bound: f64,
    /// `1 − Q_min` before clamping into `[0, 1]`.
    pub success_upper_bound_unclamped: f64,
}

/// `|⟨ψ_a|ψ_b⟩|` for every unordered pair of states in different classes.
pub fn pairwise_failure_bound(e: &ClassifiedEnsemble) -> Vec<PairBound> {
    let g = gram_matrix(e);
    let members = e.members();
    let mut out = Vec::new();
    for a in 0..members.len() {
        for b in a + 1..members.len() {
            if members[a].class != members[b].class {
                out.push(PairBound {
                    a,
                    b,
                    overlap: g.magnitude(a, b),
                });
            }
        }
    }
    out
}

/// `Q_min`, the prior-weighted cross-class overlap sum (ordered pairs).
pub fn average_failure_lower_bound(e: &ClassifiedEnsemble) -> f64 {
    let n_total = e.len() as f64;
    let class_sizes: Vec<f64> = (1..=e.classes()).map(|c| e.class_size(c) as f64).collect();
    let weight = |idx: usize| {
        let m = &e.members()[idx];
        m.prior / (n_total - class_sizes[m.class - 1])
    };
    pairwise_failure_bound(e)
        .iter()
        .map(|p| 2.0 * (weight(p.a) * weight(p.b)).sqrt() * p.overlap)
        .sum()
}

/// `P_max = 1 − Q_min`, clamped into `[0, 1]`.
pub fn success_upper_bound(e: &ClassifiedEnsemble) -> f64 {
    (1.0 - average_failure_lower_bound(e)).clamp(0.0, 1.0)
}

pub fn bound_report(e: &ClassifiedEnsemble) -> BoundReport {
    let q = average_failure_lower_bound(e);
    BoundReport {
        pairwise_min_failure_products: pairwise_failure_bound(e),
        failure_lower_bound: q,
        success_upper_bound: (1.0 - q).clamp(0.0, 1.0),
        success_upper_bound_unclamped: 1.0 - q,
    }
}

fn check_overlap(overlap: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&overlap) {
        return Err(Error::InvalidArgument(format!(
            "overlap {overlap} outside [0, 1]"
        )));
    }
    Ok(())
}

/// Optimal conclusive discrimination of two equiprobable pure states with
/// overlap modulus `overlap`: `1 − s`.
pub fn idp_limit(overlap: f64) -> Result<f64> {
    check_overlap(overlap)?;
    Ok(1.0 - overlap)
}

/// Optimal conclusive discrimination of two pure states with priors `p ≥ q`.
///
/// * `s ≤ √(q/p)`: both states are sometimes identified, `1 − 2√(pq)·s`.
/// * `s > √(q/p)`: the optimum is the projective measurement that only ever
///   identifies the likelier state, `p(1 − s²)`.
///
/// The two branches agree at `s = √(q/p)`.
pub fn jaeger_shimony(p: f64, q: f64, overlap: f64) -> Result<f64> {
    check_overlap(overlap)?;
    if (p + q - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidArgument(format!(
            "priors {p} + {q} do not sum to 1"
        )));
    }
    if !(q > 0.0 && p >= q) {
        return Err(Error::InvalidArgument(format!(
            "priors must satisfy p ≥ q > 0 (got p = {p}, q = {q})"
        )));
    }
    if overlap <= (q / p).sqrt() {
        Ok(1.0 - 2.0 * (p * q).sqrt() * overlap)
    } else {
        Ok(p * (1.0 - overlap * overlap))
    }
}
