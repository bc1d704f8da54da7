//! Which states can be assigned to their class without ever erring.
//!
//! A state supports a conclusive answer exactly when it does not lie in the
//! span of the states of all other classes. [`decompose`] splits each state
//! into that span plus an orthogonal remainder `d|ψ⊥⟩`; the state is
//! classifiable iff `d ≠ 0`.

use num_complex::Complex64;
use serde::Serialize;

use crate::ensemble::{ClassifiedEnsemble, PureState};
use crate::error::Result;
use crate::numerics::{self, ComplexMatrix, RANK_TOL};

/// `|ψ⟩ = Σ C_jl |ψ_jl⟩ + d|ψ⊥⟩` with `ψ_jl` ranging over the other classes.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub state_index: usize,
    /// `(member index, C)` for every member outside the state's class.
    pub coefficients: Vec<(usize, Complex64)>,
    /// `d`; zero when the state is inside the complement span.
    pub residual_weight: Complex64,
    /// `|ψ⊥⟩`, present iff `d ≠ 0`.
    pub residual_direction: Option<PureState>,
    /// Untruncated norm of the orthogonal remainder.
    pub residual_norm: f64,
}

impl Decomposition {
    /// `|d|²`
    pub fn residual_weight_sq(&self) -> f64 {
        self.residual_weight.norm_sqr()
    }

    pub fn is_classifiable(&self) -> bool {
        self.residual_direction.is_some()
    }

    /// `Σ C_jl|ψ_jl⟩ + d|ψ⊥⟩`
    pub fn reconstruct(&self, e: &ClassifiedEnsemble) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); e.dim()];
        for &(j, c) in &self.coefficients {
            for (o, a) in out.iter_mut().zip(e.members()[j].state.amplitudes()) {
                *o += c * a;
            }
        }
        if let Some(dir) = &self.residual_direction {
            for (o, a) in out.iter_mut().zip(dir.amplitudes()) {
                *o += self.residual_weight * a;
            }
        }
        out
    }
}

/// Splits member `idx` against the span of every member outside its class.
///
/// When the complement states are linearly dependent the expansion
/// coefficients are not unique; the minimum-norm solution is returned.
pub fn decompose(e: &ClassifiedEnsemble, idx: usize) -> Result<Decomposition> {
    let member = e.member(idx)?;
    let target = member.state.amplitudes();
    let others: Vec<usize> = e.complement_indices(member.class).collect();
    let vectors = e.complement_vectors(member.class);

    let (_, residual) = numerics::project_onto_span(&vectors, target)?;
    let residual_norm = numerics::norm(&residual);
    let coefficients = others
        .iter()
        .copied()
        .zip(min_norm_coefficients(&vectors, target))
        .collect();

    let (residual_weight, residual_direction) = if residual_norm > RANK_TOL {
        let dir = residual.iter().map(|r| r / residual_norm).collect();
        (
            Complex64::new(residual_norm, 0.0),
            Some(PureState::normalized(dir)?),
        )
    } else {
        (Complex64::new(0.0, 0.0), None)
    };

    Ok(Decomposition {
        state_index: idx,
        coefficients,
        residual_weight,
        residual_direction,
        residual_norm,
    })
}

/// Minimum-norm `c` with `Σ c_j v_j = P target`, where `P` projects onto
/// `span(v)`. With `Q` an orthonormal basis of the span and `R = Q†V`, this is
/// `c = R†(RR†)⁻¹ Q†target`.
fn min_norm_coefficients(vectors: &[Vec<Complex64>], target: &[Complex64]) -> Vec<Complex64> {
    let zero = Complex64::new(0.0, 0.0);
    let q = numerics::orthonormal_basis(vectors, RANK_TOL);
    if q.is_empty() {
        return vec![zero; vectors.len()];
    }
    let r = ComplexMatrix::from_fn(q.len(), vectors.len(), |i, j| {
        numerics::inner(&q[i], &vectors[j])
    });
    let y: Vec<Complex64> = q.iter().map(|qi| numerics::inner(qi, target)).collect();
    let rrh = (&r * &r.adjoint()).hermitian_part();
    let eig = numerics::hermitian_eig(&rrh).expect("RR† is Hermitian");
    let cutoff = 1e-14 * eig.max_eigenvalue();
    let inverse = eig.map_spectrum(|l| if l > cutoff { 1.0 / l } else { 0.0 });
    r.adjoint().apply(&inverse.apply(&y))
}

#[derive(Debug, Clone, Serialize)]
pub struct StateFeasibility {
    pub state_index: usize,
    pub class: usize,
    pub classifiable: bool,
    /// Raw `‖residual‖²`, reported before thresholding.
    pub residual_weight_sq: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct FeasibilityReport {
    pub per_state: Vec<StateFeasibility>,
    pub feasible: bool,
}

impl FeasibilityReport {
    pub fn classifiable_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.per_state
            .iter()
            .filter(|s| s.classifiable)
            .map(|s| s.state_index)
    }
}

pub fn classifiable_states(e: &ClassifiedEnsemble) -> FeasibilityReport {
    let per_state: Vec<StateFeasibility> = (0..e.len())
        .map(|idx| {
            let d = decompose(e, idx).expect("index in range");
            let raw_sq = d.residual_norm * d.residual_norm;
            StateFeasibility {
                state_index: idx,
                class: e.members()[idx].class,
                classifiable: raw_sq > RANK_TOL * RANK_TOL,
                residual_weight_sq: raw_sq,
            }
        })
        .collect();
    let feasible = per_state.iter().any(|s| s.classifiable);
    FeasibilityReport {
        per_state,
        feasible,
    }
}

/// True iff some state lies outside the span of the other classes.
pub fn is_conclusively_classifiable(e: &ClassifiedEnsemble) -> bool {
    classifiable_states(e).feasible
}
