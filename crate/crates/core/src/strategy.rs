//! Conclusive classification measurements.
//!
//! A strategy is a set of detection operators `A_1..A_n` (outcome `m` asserts
//! "the state is in `S_m`") plus a failure operator `A_I`, satisfying
//! `A_I†A_I + Σ A_m†A_m = I`. It is error-free when no state outside `S_m`
//! ever triggers outcome `m`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::ensemble::{ClassifiedEnsemble, PureState};
use crate::error::{Error, Result};
use crate::feasibility::{classifiable_states, decompose};
use crate::numerics::{self, ComplexMatrix, RANK_TOL};

/// Maximum `‖A_I†A_I + Σ A_m†A_m − I‖_max` for a valid measurement.
pub const COMPLETENESS_TOL: f64 = 1e-8;

/// Largest probability of a wrong class answer still counted as zero.
pub const LEAKAGE_TOL: f64 = 1e-8;

/// Failure branches with `γ` at or below this carry no direction.
const BRANCH_EPS: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidationTolerances {
    pub completeness: f64,
    pub leakage: f64,
}

impl Default for ValidationTolerances {
    fn default() -> Self {
        Self {
            completeness: COMPLETENESS_TOL,
            leakage: LEAKAGE_TOL,
        }
    }
}

impl ValidationTolerances {
    /// Same tolerance for completeness and leakage.
    pub fn uniform(tol: f64) -> Self {
        Self {
            completeness: tol,
            leakage: tol,
        }
    }
}

/// Detection operators in Kraus form. POVM elements are `A†A`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassificationStrategy {
    pub dim: usize,
    pub class_operators: Vec<ComplexMatrix>,
    pub failure_operator: ComplexMatrix,
}

impl ClassificationStrategy {
    /// Always answers "don't know": `A_I = I`, `A_m = 0`.
    pub fn trivial(dim: usize, classes: usize) -> Self {
        Self {
            dim,
            class_operators: vec![ComplexMatrix::zeros(dim, dim); classes],
            failure_operator: ComplexMatrix::identity(dim),
        }
    }

    /// Builds `A_m = √Π_m` and `A_I = √(I − Σ Π_m)` from detection POVM
    /// elements `Π_m`.
    pub fn from_detection_povm(dim: usize, elements: &[ComplexMatrix]) -> Result<Self> {
        let mut total = ComplexMatrix::zeros(dim, dim);
        let mut class_operators = Vec::with_capacity(elements.len());
        for e in elements {
            check_square(e, dim)?;
            total = &total + e;
            class_operators.push(numerics::psd_sqrt(e)?);
        }
        let rest = (&ComplexMatrix::identity(dim) - &total).hermitian_part();
        Ok(Self {
            dim,
            class_operators,
            failure_operator: numerics::psd_sqrt(&rest)?,
        })
    }

    pub fn classes(&self) -> usize {
        self.class_operators.len()
    }

    /// `A_m†A_m` for each class.
    pub fn detection_povm(&self) -> Vec<ComplexMatrix> {
        self.class_operators
            .iter()
            .map(|a| (&a.adjoint() * a).hermitian_part())
            .collect()
    }

    pub fn failure_povm(&self) -> ComplexMatrix {
        (&self.failure_operator.adjoint() * &self.failure_operator).hermitian_part()
    }

    /// `‖A_I†A_I + Σ A_m†A_m − I‖_max`
    pub fn completeness_defect(&self) -> f64 {
        let total = self
            .detection_povm()
            .iter()
            .fold(self.failure_povm(), |acc, p| &acc + p);
        total.max_abs_diff(&ComplexMatrix::identity(self.dim))
    }

    /// Outcome probabilities `‖A_1ψ‖², …, ‖A_nψ‖², ‖A_Iψ‖²`.
    pub fn outcome_probabilities(&self, state: &[Complex64]) -> Vec<f64> {
        self.class_operators
            .iter()
            .chain(std::iter::once(&self.failure_operator))
            .map(|a| numerics::norm_sqr(&a.apply(state)))
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("strategy serializes")
    }

    /// Parses the strategy JSON document and checks operator shapes.
    pub fn from_json(text: &[u8]) -> Result<Self> {
        let s: Self = serde_json::from_slice(text).map_err(|e| Error::Parse {
            line: e.line(),
            message: e.to_string(),
        })?;
        for a in s.class_operators.iter().chain([&s.failure_operator]) {
            check_square(a, s.dim)?;
        }
        Ok(s)
    }
}

fn check_square(m: &ComplexMatrix, dim: usize) -> Result<()> {
    if m.rows() != dim || m.cols() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: if m.rows() != dim { m.rows() } else { m.cols() },
        });
    }
    Ok(())
}

/// Outcome of [`validate_strategy`].
#[derive(Debug, Clone, Serialize)]
pub struct StrategyValidation {
    pub complete: bool,
    pub no_error: bool,
    pub max_completeness_defect: f64,
    pub max_cross_class_probability: f64,
    /// `P_ik`, probability that member `ik` is assigned to its own class.
    pub per_state_success: Vec<f64>,
    /// `γ_ik = ⟨ψ_ik|A_I†A_I|ψ_ik⟩`.
    pub per_state_failure: Vec<f64>,
    /// Row per member: probabilities of outcomes `1..n` then failure.
    pub outcome_probabilities: Vec<Vec<f64>>,
    pub average_success: f64,
    pub average_failure: f64,
}

impl StrategyValidation {
    /// Complete and error-free.
    pub fn passes(&self) -> bool {
        self.complete && self.no_error
    }
}

pub fn validate_strategy(
    e: &ClassifiedEnsemble,
    s: &ClassificationStrategy,
) -> Result<StrategyValidation> {
    validate_strategy_with(e, s, ValidationTolerances::default())
}

pub fn validate_strategy_with(
    e: &ClassifiedEnsemble,
    s: &ClassificationStrategy,
    tol: ValidationTolerances,
) -> Result<StrategyValidation> {
    if s.dim != e.dim() {
        return Err(Error::DimensionMismatch {
            expected: e.dim(),
            found: s.dim,
        });
    }
    if s.classes() != e.classes() {
        return Err(Error::DimensionMismatch {
            expected: e.classes(),
            found: s.classes(),
        });
    }
    for a in s.class_operators.iter().chain([&s.failure_operator]) {
        check_square(a, s.dim)?;
    }

    let max_completeness_defect = s.completeness_defect();
    let n = e.classes();
    let mut outcome_probabilities = Vec::with_capacity(e.len());
    let mut per_state_success = Vec::with_capacity(e.len());
    let mut per_state_failure = Vec::with_capacity(e.len());
    let mut max_cross = 0.0_f64;
    let (mut average_success, mut average_failure) = (0.0, 0.0);

    for m in e.members() {
        let probs = s.outcome_probabilities(m.state.amplitudes());
        for (k, &p) in probs[..n].iter().enumerate() {
            if k + 1 != m.class {
                max_cross = max_cross.max(p);
            }
        }
        let success = probs[m.class - 1];
        let failure = probs[n];
        average_success += m.prior * success;
        average_failure += m.prior * failure;
        per_state_success.push(success);
        per_state_failure.push(failure);
        outcome_probabilities.push(probs);
    }

    Ok(StrategyValidation {
        complete: max_completeness_defect <= tol.completeness,
        no_error: max_cross <= tol.leakage,
        max_completeness_defect,
        max_cross_class_probability: max_cross,
        per_state_success,
        per_state_failure,
        outcome_probabilities,
        average_success,
        average_failure,
    })
}

/// Single-detector measurement built from one classifiable state: project onto
/// the part of the state orthogonal to every other class.
///
/// `A_{i0} = |ψ⊥⟩⟨ψ⊥|`, all other `A_i = 0`, `A_I = √(I − A_{i0}†A_{i0})`.
/// Member `idx` is identified with probability `|d|²`, contributing
/// `η·|d|²` to the average success. Other members of the same class add
/// `η_k |⟨ψ⊥|ψ_k⟩|²`.
pub fn construct_single_state_strategy(
    e: &ClassifiedEnsemble,
    idx: usize,
) -> Result<ClassificationStrategy> {
    let decomposition = decompose(e, idx)?;
    let direction = decomposition
        .residual_direction
        .ok_or(Error::StateInComplementSpan(idx))?;
    let class = e.members()[idx].class;
    let detector = ComplexMatrix::projector(direction.amplitudes());
    let mut class_operators = vec![ComplexMatrix::zeros(e.dim(), e.dim()); e.classes()];
    let povm = (&detector.adjoint() * &detector).hermitian_part();
    class_operators[class - 1] = detector;
    let rest = (&ComplexMatrix::identity(e.dim()) - &povm).hermitian_part();
    Ok(ClassificationStrategy {
        dim: e.dim(),
        class_operators,
        failure_operator: numerics::psd_sqrt(&rest)?,
    })
}

/// Orthonormal basis of `K_class`, the orthogonal complement of the span of
/// all states outside `class`. Any error-free detector for `class` is
/// supported on it.
pub fn support_basis(e: &ClassifiedEnsemble, class: usize) -> Vec<Vec<Complex64>> {
    let span = numerics::orthonormal_basis(&e.complement_vectors(class), RANK_TOL);
    if span.is_empty() {
        return (0..e.dim())
            .map(|i| numerics::basis_vector(e.dim(), i))
            .collect();
    }
    if span.len() == e.dim() {
        return Vec::new();
    }
    let iso = ComplexMatrix::from_columns(&span).expect("columns share a dimension");
    let u = numerics::complete_to_unitary(&iso).expect("orthonormalized span is an isometry");
    (span.len()..e.dim()).map(|k| u.column(k)).collect()
}

/// Projector onto `span(basis)` for orthonormal `basis`.
pub(crate) fn projector_onto(dim: usize, basis: &[Vec<Complex64>]) -> ComplexMatrix {
    basis.iter().fold(ComplexMatrix::zeros(dim, dim), |acc, v| {
        &acc + &ComplexMatrix::projector(v)
    })
}

/// One detector per class, each the projector `Π_m` onto `K_m`, jointly scaled
/// by `c = 1 / max(1, λ_max(Σ Π_m))` so the detection operators fit under
/// the identity.
pub fn construct_projective_strategy(e: &ClassifiedEnsemble) -> Result<ClassificationStrategy> {
    if !classifiable_states(e).feasible {
        return Err(Error::InfeasibleEnsemble);
    }
    let dim = e.dim();
    let projectors: Vec<ComplexMatrix> = (1..=e.classes())
        .map(|m| projector_onto(dim, &support_basis(e, m)))
        .collect();
    let total = projectors
        .iter()
        .fold(ComplexMatrix::zeros(dim, dim), |acc, p| &acc + p)
        .hermitian_part();
    let lambda_max = numerics::hermitian_eig(&total)?.max_eigenvalue();
    let c = 1.0 / lambda_max.max(1.0);
    let rest = (&ComplexMatrix::identity(dim) - &total.scale(c)).hermitian_part();
    Ok(ClassificationStrategy {
        dim,
        class_operators: projectors.iter().map(|p| p.scale(c.sqrt())).collect(),
        failure_operator: numerics::psd_sqrt(&rest)?,
    })
}

/// Unitary realization of a strategy on system ⊗ ancilla, with an
/// `(n+1)`-dimensional ancilla measured projectively afterwards.
///
/// Basis ordering of the joint space is `system ⊗ ancilla`: joint index
/// `s·(n+1) + a`. Ancilla index `m < n` is outcome `P_{m+1}` (class `m+1`),
/// index `n` is the failure outcome.
#[derive(Debug, Clone)]
pub struct Dilation {
    pub system_dim: usize,
    pub ancilla_dim: usize,
    pub unitary: ComplexMatrix,
    /// Ancilla basis index of the initial ancilla state `|P⟩`.
    pub ancilla_ready_index: usize,
    /// Ancilla basis indices of `|P_1⟩..|P_{n+1}⟩`.
    pub outcome_basis: Vec<usize>,
}

/// One branch of the post-unitary state.
#[derive(Debug, Clone)]
pub struct FailureBranch {
    /// `γ`, the failure probability.
    pub probability: f64,
    /// Normalized `|φ⟩`; absent when `γ = 0`.
    pub direction: Option<PureState>,
}

impl Dilation {
    pub fn classes(&self) -> usize {
        self.ancilla_dim - 1
    }

    /// `|ψ⟩ ⊗ |P⟩`
    pub fn input_vector(&self, state: &[Complex64]) -> Vec<Complex64> {
        let mut v = vec![Complex64::new(0.0, 0.0); self.system_dim * self.ancilla_dim];
        for (s, a) in state.iter().enumerate() {
            v[s * self.ancilla_dim + self.ancilla_ready_index] = *a;
        }
        v
    }

    /// `U(|ψ⟩ ⊗ |P⟩)`
    pub fn evolve(&self, state: &[Complex64]) -> Vec<Complex64> {
        self.unitary.apply(&self.input_vector(state))
    }

    /// Unnormalized system state paired with ancilla outcome `outcome`
    /// (0-based: `n` is failure).
    pub fn branch(&self, state: &[Complex64], outcome: usize) -> Vec<Complex64> {
        let out = self.evolve(state);
        let a = self.outcome_basis[outcome];
        (0..self.system_dim)
            .map(|s| out[s * self.ancilla_dim + a])
            .collect()
    }

    /// Probabilities of each ancilla outcome after the unitary.
    pub fn outcome_probabilities(&self, state: &[Complex64]) -> Vec<f64> {
        let out = self.evolve(state);
        self.outcome_basis
            .iter()
            .map(|&a| {
                (0..self.system_dim)
                    .map(|s| out[s * self.ancilla_dim + a].norm_sqr())
                    .sum()
            })
            .collect()
    }

    /// `√γ|φ⟩`, split into `γ` and `|φ⟩`.
    pub fn failure_branch(&self, state: &[Complex64]) -> FailureBranch {
        let b = self.branch(state, self.classes());
        let gamma = numerics::norm_sqr(&b);
        let direction = if gamma > BRANCH_EPS {
            PureState::normalized(b).ok()
        } else {
            None
        };
        FailureBranch {
            probability: gamma,
            direction,
        }
    }

    /// Largest violation of `|⟨ψ_a|ψ_b⟩| = √(γ_a γ_b)|⟨φ_a|φ_b⟩|` over pairs
    /// from different classes whose failure branches are both nonzero.
    pub fn failure_overlap_defect(&self, e: &ClassifiedEnsemble) -> f64 {
        let branches: Vec<FailureBranch> = e
            .members()
            .iter()
            .map(|m| self.failure_branch(m.state.amplitudes()))
            .collect();
        let mut worst = 0.0_f64;
        for (a, ma) in e.members().iter().enumerate() {
            for (b, mb) in e.members().iter().enumerate().skip(a + 1) {
                if ma.class == mb.class {
                    continue;
                }
                let (Some(pa), Some(pb)) = (&branches[a].direction, &branches[b].direction) else {
                    continue;
                };
                let lhs = ma.state.overlap(&mb.state).norm();
                let rhs = (branches[a].probability * branches[b].probability).sqrt()
                    * pa.overlap(pb).norm();
                worst = worst.max((lhs - rhs).abs());
            }
        }
        worst
    }
}

/// Realizes `s` as a unitary on system ⊗ `(n+1)`-level ancilla.
///
/// The isometry `V|χ⟩ = Σ_m A_m|χ⟩|P_m⟩ + A_I|χ⟩|P_{n+1}⟩` is polished to
/// exact orthonormality (absorbing the ≤ 1e-8 completeness defect), completed
/// to a unitary, and placed so that `U(|χ⟩|P⟩) = V|χ⟩`.
pub fn neumark_dilation(s: &ClassificationStrategy) -> Result<Dilation> {
    let defect = s.completeness_defect();
    if defect > COMPLETENESS_TOL {
        return Err(Error::NotAMeasurement(defect));
    }
    let d = s.dim;
    let n = s.classes();
    let anc = n + 1;
    let ops: Vec<&ComplexMatrix> = s
        .class_operators
        .iter()
        .chain(std::iter::once(&s.failure_operator))
        .collect();
    let v = ComplexMatrix::from_fn(d * anc, d, |row, j| {
        let (sys, a) = (row / anc, row % anc);
        ops[a][(sys, j)]
    });
    let gram = (&v.adjoint() * &v).hermitian_part();
    let inv_sqrt = numerics::hermitian_eig(&gram)?.map_spectrum(|l| 1.0 / l.sqrt());
    let v = &v * &inv_sqrt;
    let w = numerics::complete_to_unitary(&v)?;

    let ready = 0;
    let mut column_of = vec![usize::MAX; d * anc];
    for j in 0..d {
        column_of[j * anc + ready] = j;
    }
    for (next, slot) in (d..).zip(column_of.iter_mut().filter(|c| **c == usize::MAX)) {
        *slot = next;
    }
    let unitary = ComplexMatrix::from_fn(d * anc, d * anc, |i, c| w[(i, column_of[c])]);
    Ok(Dilation {
        system_dim: d,
        ancilla_dim: anc,
        unitary,
        ancilla_ready_index: ready,
        outcome_basis: (0..anc).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensemble::presets;

    const H: f64 = std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn single_state_strategy_for_plus_vs_zero() {
        let e = presets::plus_vs_zero();
        let s = construct_single_state_strategy(&e, 0).unwrap();
        let one = ComplexMatrix::projector(&numerics::basis_vector(2, 1));
        assert!(s.class_operators[0].max_abs_diff(&one) < 1e-15);
        assert_eq!(s.class_operators[1].max_abs(), 0.0);
        let v = validate_strategy(&e, &s).unwrap();
        assert!(v.passes());
        assert!((v.average_success - 0.25).abs() < 1e-15);
        assert!((v.average_success + v.average_failure - 1.0).abs() < 1e-12);
    }

    #[test]
    fn single_state_strategy_for_orthogonal_pair() {
        let e = presets::orthonormal_singletons(2);
        let s = construct_single_state_strategy(&e, 0).unwrap();
        let v = validate_strategy(&e, &s).unwrap();
        assert!(v.passes());
        assert!((v.average_success - 0.5).abs() < 1e-15);
    }

    #[test]
    fn single_state_strategy_rejects_bb84() {
        for idx in 0..4 {
            let err = construct_single_state_strategy(&presets::bb84(), idx).unwrap_err();
            assert!(err.to_string().starts_with("state lies in complement span"));
        }
    }

    #[test]
    fn projective_strategy_examples() {
        let e = presets::orthonormal_singletons(3);
        let v = validate_strategy(&e, &construct_projective_strategy(&e).unwrap()).unwrap();
        assert!(v.passes());
        assert!((v.average_success - 1.0).abs() < 1e-12);

        let err = construct_projective_strategy(&presets::bb84()).unwrap_err();
        assert_eq!(err, Error::InfeasibleEnsemble);
    }

    #[test]
    fn projective_strategy_zero_vs_one_plus() {
        // S_1 = {|0⟩}: K_1 = (span{|1⟩,|+⟩})⊥ = {0}.
        // S_2 = {|1⟩,|+⟩}: K_2 = |0⟩⊥ = span{|1⟩}.
        // Π_1 = 0, Π_2 = |1⟩⟨1|, c = 1; P = η_|1⟩·1 + η_|+⟩·½ = ⅓ + ⅙ = ½.
        let e = ClassifiedEnsemble::from_parts(
            2,
            vec![
                (PureState::basis(2, 0), 1.0 / 3.0, 1),
                (PureState::basis(2, 1), 1.0 / 3.0, 2),
                (PureState::from_real(&[H, H]).unwrap(), 1.0 / 3.0, 2),
            ],
        )
        .unwrap();
        let s = construct_projective_strategy(&e).unwrap();
        assert!(s.class_operators[0].max_abs() < 1e-15);
        let v = validate_strategy(&e, &s).unwrap();
        assert!(v.passes());
        assert!((v.average_success - 0.5).abs() < 1e-12);
    }

    #[test]
    fn trivial_strategy_always_fails() {
        let e = presets::bb84();
        let v = validate_strategy(&e, &ClassificationStrategy::trivial(2, 2)).unwrap();
        assert!(v.passes());
        assert_eq!(v.average_success, 0.0);
        assert!((v.average_failure - 1.0).abs() < 1e-15);
    }

    #[test]
    fn corrupted_strategy_leaks() {
        let e = presets::two_states(0.5, 0.5).unwrap();
        let s = ClassificationStrategy {
            dim: 2,
            class_operators: vec![ComplexMatrix::identity(2), ComplexMatrix::zeros(2, 2)],
            failure_operator: ComplexMatrix::zeros(2, 2),
        };
        let v = validate_strategy(&e, &s).unwrap();
        assert!(v.complete);
        assert!(!v.no_error);
        assert!((v.max_cross_class_probability - 1.0).abs() < 1e-15);
    }

    #[test]
    fn validation_rejects_mismatched_dimensions() {
        let e = presets::bb84();
        assert!(validate_strategy(&e, &ClassificationStrategy::trivial(3, 2)).is_err());
        assert!(validate_strategy(&e, &ClassificationStrategy::trivial(2, 3)).is_err());
    }

    #[test]
    fn dilation_of_projective_measurement() {
        // One class plus failure on a qubit: A_1 = |0⟩⟨0|, A_I = |1⟩⟨1|.
        let s = ClassificationStrategy {
            dim: 2,
            class_operators: vec![ComplexMatrix::projector(&numerics::basis_vector(2, 0))],
            failure_operator: ComplexMatrix::projector(&numerics::basis_vector(2, 1)),
        };
        let dil = neumark_dilation(&s).unwrap();
        assert_eq!(dil.unitary.rows(), 4);
        assert!(dil.unitary.isometry_defect() < 1e-12);
        let psi = PureState::from_real(&[0.6, 0.8]).unwrap();
        let p = dil.outcome_probabilities(psi.amplitudes());
        assert!((p[0] - 0.36).abs() < 1e-12);
        assert!((p[1] - 0.64).abs() < 1e-12);
    }

    #[test]
    fn dilation_of_two_class_projective_measurement_is_6x6() {
        let s = ClassificationStrategy {
            dim: 2,
            class_operators: vec![
                ComplexMatrix::projector(&numerics::basis_vector(2, 0)),
                ComplexMatrix::projector(&numerics::basis_vector(2, 1)),
            ],
            failure_operator: ComplexMatrix::zeros(2, 2),
        };
        let dil = neumark_dilation(&s).unwrap();
        assert_eq!((dil.unitary.rows(), dil.ancilla_dim), (6, 3));
        let p = dil.outcome_probabilities(PureState::from_real(&[0.6, 0.8]).unwrap().amplitudes());
        assert!((p[0] - 0.36).abs() < 1e-12 && (p[1] - 0.64).abs() < 1e-12 && p[2] < 1e-24);
    }

    #[test]
    fn dilation_of_plus_vs_zero_strategy() {
        let e = presets::plus_vs_zero();
        let s = construct_single_state_strategy(&e, 0).unwrap();
        let dil = neumark_dilation(&s).unwrap();
        let p = dil.outcome_probabilities(e.members()[0].state.amplitudes());
        assert!((p[0] - 0.5).abs() < 1e-12);
        assert!(p[1].abs() < 1e-12);
        assert!((p[2] - 0.5).abs() < 1e-12);
        assert!(dil.failure_overlap_defect(&e) < 1e-12);
    }

    #[test]
    fn dilation_of_trivial_strategy() {
        let e = presets::bb84();
        let dil = neumark_dilation(&ClassificationStrategy::trivial(2, 2)).unwrap();
        for m in e.members() {
            let p = dil.outcome_probabilities(m.state.amplitudes());
            assert!((p[2] - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn dilation_rejects_incomplete_operators() {
        let s = ClassificationStrategy {
            dim: 2,
            class_operators: vec![ComplexMatrix::zeros(2, 2), ComplexMatrix::zeros(2, 2)],
            failure_operator: ComplexMatrix::zeros(2, 2),
        };
        assert!(matches!(
            neumark_dilation(&s),
            Err(Error::NotAMeasurement(_))
        ));
    }

    #[test]
    fn strategy_json_round_trip() {
        let e = presets::plus_vs_zero();
        let s = construct_single_state_strategy(&e, 0).unwrap();
        let back = ClassificationStrategy::from_json(s.to_json().as_bytes()).unwrap();
        assert_eq!(back, s);
        assert!(ClassificationStrategy::from_json(
            br#"{"dim": 3, "class_operators": [], "failure_operator": [[[1,0]]]}"#
        )
        .is_err());
    }
}
