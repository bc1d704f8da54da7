//! Numerical search for a good error-free classification measurement.
//!
//! An error-free detector `Π_m = A_m†A_m` must satisfy `⟨ψ|Π_m|ψ⟩ = 0` for
//! every `ψ` outside `S_m`. Since `Π_m ⪰ 0`, `⟨ψ|Π_m|ψ⟩ = ‖Π_m^{1/2}ψ‖²`, so
//! `Π_m ψ = 0`: `Π_m` vanishes on `span(S \ S_m)` and, being Hermitian, is
//! supported on its orthogonal complement `K_m`. The search therefore runs
//! over
//!
//! ```text
//! F = { (Π_1..Π_n) : Π_m ⪰ 0, supp Π_m ⊆ K_m, Σ Π_m ⪯ I }
//! ```
//!
//! maximizing the linear objective `Σ_m tr(Π_m G_m)` with
//! `G_m = Σ_{ψ ∈ S_m} η |ψ⟩⟨ψ|`. Each step moves along the gradient and
//! returns to `F` by Euclidean projection, computed with Dykstra's algorithm
//! alternating between the per-block cone (compress to `K_m`, clip negative
//! eigenvalues) and `{Σ Π_m ⪯ I}` (clip the eigenvalues of `Σ Π_m` above 1 and
//! spread the excess evenly over the blocks).
//!
//! The result is a feasible strategy, hence a certified lower bound on the
//! optimum; it is not a certificate of optimality.

use std::collections::VecDeque;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::success_upper_bound;
use crate::ensemble::ClassifiedEnsemble;
use crate::feasibility::is_conclusively_classifiable;
use crate::numerics::{self, ComplexMatrix};
use crate::strategy::{
    construct_projective_strategy, projector_onto, support_basis, validate_strategy,
    ClassificationStrategy,
};

use num_complex::Complex64;

const DYKSTRA_MAX_ITERS: usize = 400;
const DYKSTRA_TOL: f64 = 1e-11;
/// Step growth per iteration and cap relative to the configured step.
const STEP_GROWTH: f64 = 1.25;
const MAX_STEP_FACTOR: f64 = 20.0;
/// Iterations over which the objective gain is measured for the stall test.
const STALL_WINDOW: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OptimizationConfig {
    pub restarts: usize,
    pub max_iterations: usize,
    /// Length of the first gradient step, in Frobenius norm. Steps grow
    /// geometrically, up to 20× this value.
    pub step_size: f64,
    pub seed: u64,
    /// Convergence threshold: a run stops once the projected step is shorter
    /// than this, or the objective gains less than a tenth of it over
    /// ten iterations.
    pub tolerance: f64,
}

impl Default for OptimizationConfig {
    fn default() -> Self {
        Self {
            restarts: 16,
            max_iterations: 2000,
            step_size: 0.05,
            seed: 0,
            tolerance: 1e-7,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct OptimizedStrategy {
    pub strategy: ClassificationStrategy,
    /// Validated average success of `strategy`.
    pub success_lower_bound: f64,
    /// Closed-form success upper bound of the ensemble.
    pub upper_bound_reference: f64,
    pub converged: bool,
    /// Restart that produced `strategy`.
    pub best_restart: usize,
    pub iterations: usize,
}

/// Lower and upper ends of the optimal success probability.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Bracket {
    pub lower: f64,
    pub upper: f64,
}

/// Feasible-set geometry and objective for one ensemble.
struct Problem {
    dim: usize,
    /// Class index (0-based) and orthonormal basis of `K_m` for each class
    /// with nontrivial support.
    blocks: Vec<(usize, Vec<Vec<Complex64>>)>,
    /// `G_m` restricted to `K_m`, per active block.
    gradients: Vec<ComplexMatrix>,
    classes: usize,
}

impl Problem {
    fn new(e: &ClassifiedEnsemble) -> Self {
        let dim = e.dim();
        let mut blocks = Vec::new();
        let mut gradients = Vec::new();
        for class in 1..=e.classes() {
            let basis = support_basis(e, class);
            if basis.is_empty() {
                continue;
            }
            let full = e
                .class_indices(class)
                .fold(ComplexMatrix::zeros(dim, dim), |acc, i| {
                    let m = &e.members()[i];
                    &acc + &ComplexMatrix::projector(m.state.amplitudes()).scale(m.prior)
                });
            let p = projector_onto(dim, &basis);
            gradients.push((&(&p * &full) * &p).hermitian_part());
            blocks.push((class - 1, basis));
        }
        Self {
            dim,
            blocks,
            gradients,
            classes: e.classes(),
        }
    }

    fn objective(&self, x: &[ComplexMatrix]) -> f64 {
        x.iter()
            .zip(&self.gradients)
            .map(|(a, g)| a.real_inner(g))
            .sum()
    }

    /// Nearest point with each block PSD and supported on its `K_m`.
    fn project_cone(&self, x: &[ComplexMatrix]) -> Vec<ComplexMatrix> {
        x.iter()
            .zip(&self.blocks)
            .map(|(m, (_, basis))| {
                let k = basis.len();
                let compressed = ComplexMatrix::from_fn(k, k, |i, j| {
                    numerics::inner(&basis[i], &m.apply(&basis[j]))
                })
                .hermitian_part();
                let clipped = numerics::hermitian_eig(&compressed)
                    .expect("compressed block is Hermitian")
                    .map_spectrum(|l| l.max(0.0));
                ComplexMatrix::from_fn(self.dim, self.dim, |r, c| {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for i in 0..k {
                        for j in 0..k {
                            acc += basis[i][r] * clipped[(i, j)] * basis[j][c].conj();
                        }
                    }
                    acc
                })
            })
            .collect()
    }

    /// Nearest point with `Σ Π_m ⪯ I`.
    fn project_sum(&self, x: &[ComplexMatrix]) -> Vec<ComplexMatrix> {
        let total = self.sum(x).hermitian_part();
        let eig = numerics::hermitian_eig(&total).expect("sum is Hermitian");
        if eig.max_eigenvalue() <= 1.0 {
            return x.to_vec();
        }
        let excess = eig
            .map_spectrum(|l| (l - 1.0).max(0.0))
            .scale(1.0 / x.len() as f64);
        x.iter().map(|m| m - &excess).collect()
    }

    fn sum(&self, x: &[ComplexMatrix]) -> ComplexMatrix {
        x.iter()
            .fold(ComplexMatrix::zeros(self.dim, self.dim), |acc, m| &acc + m)
    }

    /// Euclidean projection onto the feasible set by Dykstra's algorithm.
    ///
    /// `increments` carries Dykstra's correction terms `(p, q)` between calls.
    /// The iteration keeps `y = x − p − q` invariant, so starting from the
    /// corrections of a nearby previous projection is valid and usually
    /// converges in a few sweeps.
    fn project(&self, x: &[ComplexMatrix], increments: &mut Increments) -> Vec<ComplexMatrix> {
        let Increments { p, q } = increments;
        let mut y: Vec<ComplexMatrix> = x
            .iter()
            .zip(p.iter().zip(q.iter()))
            .map(|(a, (b, c))| &(a - b) - c)
            .collect();
        for _ in 0..DYKSTRA_MAX_ITERS {
            let z: Vec<ComplexMatrix> = y.iter().zip(p.iter()).map(|(a, b)| a + b).collect();
            let yd = self.project_cone(&z);
            *p = z.iter().zip(&yd).map(|(a, b)| a - b).collect();
            let w: Vec<ComplexMatrix> = yd.iter().zip(q.iter()).map(|(a, b)| a + b).collect();
            let yc = self.project_sum(&w);
            *q = w.iter().zip(&yc).map(|(a, b)| a - b).collect();
            let change = distance(&yc, &y);
            let gap = distance(&yc, &yd);
            y = yc;
            if change < DYKSTRA_TOL && gap < DYKSTRA_TOL {
                break;
            }
        }
        y
    }

    /// Exactly feasible detection POVM elements close to `x`: cone projection
    /// followed by uniform scaling under the identity.
    fn finalize(&self, x: &[ComplexMatrix]) -> Vec<ComplexMatrix> {
        let cone = self.project_cone(x);
        let lambda = numerics::hermitian_eig(&self.sum(&cone).hermitian_part())
            .expect("sum is Hermitian")
            .max_eigenvalue();
        let c = 1.0 / lambda.max(1.0);
        let mut elements = vec![ComplexMatrix::zeros(self.dim, self.dim); self.classes];
        for (m, (class, _)) in cone.iter().zip(&self.blocks) {
            elements[*class] = m.scale(c);
        }
        elements
    }

    fn random_start(&self, rng: &mut ChaCha8Rng) -> Vec<ComplexMatrix> {
        let x: Vec<ComplexMatrix> = self
            .blocks
            .iter()
            .map(|(_, basis)| {
                let k = basis.len();
                let g = ComplexMatrix::from_fn(k, k, |_, _| {
                    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
                });
                let small = (&g.adjoint() * &g).hermitian_part();
                ComplexMatrix::from_fn(self.dim, self.dim, |r, c| {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for i in 0..k {
                        for j in 0..k {
                            acc += basis[i][r] * small[(i, j)] * basis[j][c].conj();
                        }
                    }
                    acc
                })
            })
            .collect();
        let lambda = numerics::hermitian_eig(&self.sum(&x).hermitian_part())
            .expect("sum is Hermitian")
            .max_eigenvalue();
        let scale = rng.gen_range(0.1..1.0) / lambda.max(f64::MIN_POSITIVE);
        x.iter().map(|m| m.scale(scale)).collect()
    }

    fn start_from(&self, s: &ClassificationStrategy) -> Vec<ComplexMatrix> {
        let povm = s.detection_povm();
        self.blocks
            .iter()
            .map(|(class, _)| povm[*class].clone())
            .collect()
    }
}

/// Dykstra correction terms for the cone and the sum constraint.
struct Increments {
    p: Vec<ComplexMatrix>,
    q: Vec<ComplexMatrix>,
}

impl Increments {
    fn zero(problem: &Problem) -> Self {
        let z = vec![ComplexMatrix::zeros(problem.dim, problem.dim); problem.blocks.len()];
        Self { p: z.clone(), q: z }
    }
}

fn distance(a: &[ComplexMatrix], b: &[ComplexMatrix]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).frobenius_norm().powi(2))
        .sum::<f64>()
        .sqrt()
}

struct RestartOutcome {
    elements: Vec<ComplexMatrix>,
    converged: bool,
    iterations: usize,
}

fn run_restart(
    problem: &Problem,
    start: Vec<ComplexMatrix>,
    cfg: &OptimizationConfig,
) -> RestartOutcome {
    let grad_norm = problem
        .gradients
        .iter()
        .map(|g| g.frobenius_norm().powi(2))
        .sum::<f64>()
        .sqrt();
    if grad_norm == 0.0 {
        return RestartOutcome {
            elements: problem.finalize(&start),
            converged: true,
            iterations: 0,
        };
    }
    let base = cfg.step_size / grad_norm;
    let mut alpha = base;
    let mut increments = Increments::zero(problem);
    let mut x = problem.project(&start, &mut increments);
    let mut converged = false;
    let mut iterations = 0;
    let mut history = VecDeque::with_capacity(STALL_WINDOW + 1);
    history.push_back(problem.objective(&x));
    for it in 0..cfg.max_iterations {
        iterations = it + 1;
        let moved: Vec<ComplexMatrix> = x
            .iter()
            .zip(&problem.gradients)
            .map(|(a, g)| a + &g.scale(alpha))
            .collect();
        let next = problem.project(&moved, &mut increments);
        let step = distance(&next, &x);
        x = next;
        alpha = (alpha * STEP_GROWTH).min(base * MAX_STEP_FACTOR);
        history.push_back(problem.objective(&x));
        if history.len() > STALL_WINDOW + 1 {
            history.pop_front();
        }
        let stalled = history.len() == STALL_WINDOW + 1
            && history[STALL_WINDOW] - history[0] <= 0.1 * cfg.tolerance;
        if step < cfg.tolerance || stalled {
            converged = true;
            break;
        }
    }
    RestartOutcome {
        elements: problem.finalize(&x),
        converged,
        iterations,
    }
}

/// Best error-free strategy found by projected gradient ascent over
/// `cfg.restarts` starting points.
///
/// Restart 0 starts from the projective construction; restart `r ≥ 1` starts
/// from a random feasible point drawn from ChaCha8 stream `r` of `cfg.seed`.
/// Only strategies that pass validation are eligible; ties go to the lower
/// restart index.
pub fn optimize_classification(
    e: &ClassifiedEnsemble,
    cfg: &OptimizationConfig,
) -> OptimizedStrategy {
    let upper = success_upper_bound(e);
    let trivial = || OptimizedStrategy {
        strategy: ClassificationStrategy::trivial(e.dim(), e.classes()),
        success_lower_bound: 0.0,
        upper_bound_reference: upper,
        converged: true,
        best_restart: 0,
        iterations: 0,
    };
    if !is_conclusively_classifiable(e) {
        return trivial();
    }
    let problem = Problem::new(e);
    let projective = construct_projective_strategy(e).ok();

    let outcomes: Vec<Option<(ClassificationStrategy, f64, bool, usize)>> =
        (0..cfg.restarts.max(1))
            .into_par_iter()
            .map(|r| {
                let start = match (&projective, r) {
                    (Some(s), 0) => problem.start_from(s),
                    _ => {
                        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
                        rng.set_stream(r as u64);
                        problem.random_start(&mut rng)
                    }
                };
                let outcome = run_restart(&problem, start, cfg);
                let strategy =
                    ClassificationStrategy::from_detection_povm(e.dim(), &outcome.elements).ok()?;
                let v = validate_strategy(e, &strategy).ok()?;
                v.passes().then_some((
                    strategy,
                    v.average_success,
                    outcome.converged,
                    outcome.iterations,
                ))
            })
            .collect();

    let mut best: Option<(usize, (ClassificationStrategy, f64, bool, usize))> = None;
    for (r, o) in outcomes.into_iter().enumerate() {
        if let Some(o) = o {
            if best.as_ref().is_none_or(|(_, b)| o.1 > b.1) {
                best = Some((r, o));
            }
        }
    }
    match best {
        Some((r, (strategy, p, converged, iterations))) => OptimizedStrategy {
            strategy,
            success_lower_bound: p,
            upper_bound_reference: upper,
            converged,
            best_restart: r,
            iterations,
        },
        None => trivial(),
    }
}

/// `(optimized P_lower, closed-form P_upper)`.
pub fn bracket_optimum(e: &ClassifiedEnsemble, cfg: &OptimizationConfig) -> Bracket {
    let o = optimize_classification(e, cfg);
    Bracket {
        lower: o.success_lower_bound,
        upper: o.upper_bound_reference,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::jaeger_shimony;
    use crate::ensemble::presets;

    #[test]
    fn bb84_has_nothing_to_optimize() {
        let o = optimize_classification(&presets::bb84(), &OptimizationConfig::default());
        assert!(o.success_lower_bound.abs() < 1e-6);
        let b = bracket_optimum(&presets::bb84(), &OptimizationConfig::default());
        assert!((b.upper - (1.0 - 2f64.sqrt() / 4.0)).abs() < 1e-12);
    }

    #[test]
    fn reaches_idp_limit() {
        let o = optimize_classification(
            &presets::two_states(0.5, 0.5).unwrap(),
            &OptimizationConfig::default(),
        );
        assert!(
            (o.success_lower_bound - 0.5).abs() < 1e-3,
            "{}",
            o.success_lower_bound
        );
        assert!(o.success_lower_bound <= o.upper_bound_reference + 1e-8);
    }

    #[test]
    fn orthonormal_singletons_are_perfect() {
        let o = optimize_classification(
            &presets::orthonormal_singletons(3),
            &OptimizationConfig::default(),
        );
        assert!((o.success_lower_bound - 1.0).abs() < 1e-6);
    }

    #[test]
    fn unequal_priors_second_regime() {
        // s = 0.8 > √(0.1/0.9): the optimum only ever identifies the likelier state.
        let e = presets::two_states(0.9, 0.8).unwrap();
        let o = optimize_classification(&e, &OptimizationConfig::default());
        let js = jaeger_shimony(0.9, 0.1, 0.8).unwrap();
        assert!(
            (o.success_lower_bound - js).abs() < 1e-3,
            "{} vs {js}",
            o.success_lower_bound
        );
    }

    #[test]
    fn deterministic_for_fixed_seed() {
        let e = presets::two_states(0.7, 0.4).unwrap();
        let cfg = OptimizationConfig {
            seed: 42,
            restarts: 4,
            ..Default::default()
        };
        let a = optimize_classification(&e, &cfg);
        let b = optimize_classification(&e, &cfg);
        assert_eq!(
            a.success_lower_bound.to_bits(),
            b.success_lower_bound.to_bits()
        );
        assert_eq!(a.strategy, b.strategy);
    }
}
