//! Command-line front end.
//!
//! [`run`] takes the arguments after the program name and returns a
//! [`CommandOutcome`] instead of printing, so every subcommand can be driven
//! from tests. Exit codes: 0 success, 1 domain error (for example an
//! infeasible ensemble where a strategy is required), 2 input error.
//!
//! JSON output is deterministic for fixed input bytes, flags and seed. Floats
//! are printed in shortest round-trip form, so they parse back to the same
//! `f64`.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::bounds::{bound_report, BoundReport};
use crate::ensemble::{parse_ensemble, presets, ClassifiedEnsemble};
use crate::error::Error;
use crate::feasibility::{classifiable_states, FeasibilityReport};
use crate::montecarlo::{simulate_with, SimulationResult};
use crate::optimizer::{optimize_classification, Bracket, OptimizationConfig, OptimizedStrategy};
use crate::strategy::{
    construct_projective_strategy, construct_single_state_strategy, validate_strategy_with,
    ClassificationStrategy, ValidationTolerances,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutcome {
    pub exit_code: i32,
    /// JSON document, explanatory text, or an error message.
    pub report: String,
}

impl CommandOutcome {
    fn ok(report: String) -> Self {
        Self {
            exit_code: 0,
            report,
        }
    }

    fn from_error(err: &Error) -> Self {
        Self {
            exit_code: if err.is_input_error() { 2 } else { 1 },
            report: format!("error: {err}"),
        }
    }

    fn input_error(message: impl Into<String>) -> Self {
        Self {
            exit_code: 2,
            report: format!("error: {}", message.into()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(
    name = "conclusive",
    version,
    about = "Conclusive classification of pure quantum states"
)]
struct Cli {
    /// Ensemble file (JSON).
    #[arg(long, global = true, value_name = "PATH")]
    input: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Completeness and leakage tolerance used when validating strategies.
    #[arg(long, global = true)]
    tolerance: Option<f64>,

    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Report which states can be classified without error.
    Check,
    /// Build an explicit error-free strategy (projective by default).
    Construct {
        /// Single-detector strategy from this member (0-based).
        #[arg(long, conflicts_with = "projective")]
        state_index: Option<usize>,
        /// One projective detector per class.
        #[arg(long)]
        projective: bool,
    },
    /// Closed-form upper bound on the average success probability.
    Bound,
    /// Numerical search for a good strategy.
    Optimize {
        #[arg(long)]
        restarts: Option<usize>,
        #[arg(long)]
        max_iters: Option<usize>,
    },
    /// Sample preparation and measurement rounds.
    Simulate {
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        /// Strategy file; the projective strategy is used when omitted.
        #[arg(long, value_name = "PATH")]
        strategy: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        shards: u64,
    },
    /// Eavesdropping on BB84 with a conclusive measurement.
    Bb84 {
        #[arg(long)]
        restarts: Option<usize>,
    },
}

/// Parses `args` (without the program name) and runs the subcommand.
pub fn run<I, S>(args: I) -> CommandOutcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let argv = std::iter::once(std::ffi::OsString::from("conclusive"))
        .chain(args.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(err) => {
            let exit_code = if err.use_stderr() { 2 } else { 0 };
            return CommandOutcome {
                exit_code,
                report: err.render().to_string(),
            };
        }
    };
    let tolerances = match cli.tolerance {
        None => ValidationTolerances::default(),
        Some(t) if t.is_finite() && t > 0.0 => ValidationTolerances::uniform(t),
        Some(t) => {
            return CommandOutcome::input_error(format!("tolerance must be positive, got {t}"))
        }
    };
    let ctx = Context {
        input: cli.input.as_deref(),
        format: cli.format,
        tolerances,
        seed: cli.seed,
    };
    let result = match cli.command {
        Command::Check => ctx.check(),
        Command::Construct { state_index, .. } => ctx.construct(state_index),
        Command::Bound => ctx.bound(),
        Command::Optimize {
            restarts,
            max_iters,
        } => ctx.optimize(restarts, max_iters),
        Command::Simulate {
            trials,
            strategy,
            shards,
        } => ctx.simulate(trials, strategy.as_deref(), shards),
        Command::Bb84 { restarts } => Ok(run_bb84_demo_with(ctx.format, ctx.seed, restarts)),
    };
    result.unwrap_or_else(|outcome| outcome)
}

/// The BB84 demonstration with default settings, as JSON.
pub fn run_bb84_demo() -> CommandOutcome {
    run_bb84_demo_with(Format::Json, 0, None)
}

type Outcome = std::result::Result<CommandOutcome, CommandOutcome>;

struct Context<'a> {
    input: Option<&'a Path>,
    format: Format,
    tolerances: ValidationTolerances,
    seed: u64,
}

fn read_file(path: &Path) -> std::result::Result<Vec<u8>, CommandOutcome> {
    std::fs::read(path).map_err(|err| match err.kind() {
        std::io::ErrorKind::NotFound => {
            CommandOutcome::input_error(format!("file not found: {}", path.display()))
        }
        _ => CommandOutcome::input_error(format!("cannot read {}: {err}", path.display())),
    })
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report serializes")
}

impl Context<'_> {
    fn ensemble(&self) -> std::result::Result<ClassifiedEnsemble, CommandOutcome> {
        let path = self
            .input
            .ok_or_else(|| CommandOutcome::input_error("--input PATH is required"))?;
        parse_ensemble(&read_file(path)?).map_err(|e| CommandOutcome::from_error(&e))
    }

    fn emit<T: Serialize>(&self, value: &T, text: impl FnOnce() -> String) -> CommandOutcome {
        CommandOutcome::ok(match self.format {
            Format::Json => to_json(value),
            Format::Text => text(),
        })
    }

    fn check(&self) -> Outcome {
        let e = self.ensemble()?;
        let report = classifiable_states(&e);
        Ok(self.emit(&report, || feasibility_text(&report)))
    }

    fn construct(&self, state_index: Option<usize>) -> Outcome {
        let e = self.ensemble()?;
        let strategy = match state_index {
            Some(k) => construct_single_state_strategy(&e, k),
            None => construct_projective_strategy(&e),
        }
        .map_err(|err| CommandOutcome::from_error(&err))?;
        let v = validate_strategy_with(&e, &strategy, self.tolerances)
            .map_err(|err| CommandOutcome::from_error(&err))?;
        if !v.passes() {
            return Err(CommandOutcome::from_error(
                &Error::StrategyFailedValidation(format!(
                    "completeness defect {:e}, cross-class probability {:e}",
                    v.max_completeness_defect, v.max_cross_class_probability
                )),
            ));
        }
        Ok(self.emit(&strategy, || {
            let mut out = String::new();
            let kind = match state_index {
                Some(k) => format!("single-detector strategy from member {k}"),
                None => "projective strategy".to_string(),
            };
            let _ = writeln!(
                out,
                "{kind} for {} classes in dimension {}",
                e.classes(),
                e.dim()
            );
            let _ = writeln!(out, "average success   {:.12}", v.average_success);
            let _ = writeln!(out, "average failure   {:.12}", v.average_failure);
            let _ = writeln!(out, "completeness defect {:.3e}", v.max_completeness_defect);
            let _ = writeln!(
                out,
                "max wrong-class probability {:.3e}",
                v.max_cross_class_probability
            );
            for (i, (p, m)) in v.per_state_success.iter().zip(e.members()).enumerate() {
                let _ = writeln!(out, "  member {i} (class {}): success {p:.12}", m.class);
            }
            out
        }))
    }

    fn bound(&self) -> Outcome {
        let e = self.ensemble()?;
        let report = bound_report(&e);
        Ok(self.emit(&report, || bound_text(&report)))
    }

    fn optimize(&self, restarts: Option<usize>, max_iters: Option<usize>) -> Outcome {
        let e = self.ensemble()?;
        let defaults = OptimizationConfig::default();
        let cfg = OptimizationConfig {
            restarts: restarts.unwrap_or(defaults.restarts),
            max_iterations: max_iters.unwrap_or(defaults.max_iterations),
            seed: self.seed,
            ..defaults
        };
        if cfg.restarts == 0 {
            return Err(CommandOutcome::input_error("--restarts must be at least 1"));
        }
        let o = optimize_classification(&e, &cfg);
        Ok(self.emit(&o, || optimized_text(&o)))
    }

    fn simulate(&self, trials: u64, strategy: Option<&Path>, shards: u64) -> Outcome {
        let e = self.ensemble()?;
        let s = match strategy {
            Some(path) => ClassificationStrategy::from_json(&read_file(path)?),
            None => construct_projective_strategy(&e),
        }
        .map_err(|err| CommandOutcome::from_error(&err))?;
        let r = simulate_with(&e, &s, trials, self.seed, shards, self.tolerances)
            .map_err(|err| CommandOutcome::from_error(&err))?;
        Ok(self.emit(&r, || simulation_text(&r)))
    }
}

fn feasibility_text(r: &FeasibilityReport) -> String {
    let mut out = String::new();
    for s in &r.per_state {
        let _ = writeln!(
            out,
            "member {} (class {}): {} (|d|^2 = {:.3e})",
            s.state_index,
            s.class,
            if s.classifiable {
                "classifiable"
            } else {
                "in span of other classes"
            },
            s.residual_weight_sq
        );
    }
    let _ = writeln!(out, "feasible: {}", if r.feasible { "yes" } else { "no" });
    out
}

fn bound_text(r: &BoundReport) -> String {
    let mut out = String::new();
    for p in &r.pairwise_min_failure_products {
        let _ = writeln!(
            out,
            "sqrt(gamma_{} gamma_{}) >= {:.12}",
            p.a, p.b, p.overlap
        );
    }
    let _ = writeln!(out, "average failure   >= {:.12}", r.failure_lower_bound);
    let _ = writeln!(out, "average success   <= {:.12}", r.success_upper_bound);
    out
}

fn optimized_text(o: &OptimizedStrategy) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "best success found  {:.12}", o.success_lower_bound);
    let _ = writeln!(out, "upper bound         {:.12}", o.upper_bound_reference);
    let _ = writeln!(
        out,
        "restart {} after {} iterations ({})",
        o.best_restart,
        o.iterations,
        if o.converged {
            "converged"
        } else {
            "iteration limit"
        }
    );
    out
}

fn simulation_text(r: &SimulationResult) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "trials            {}", r.trials);
    let _ = writeln!(
        out,
        "empirical success {:.6} (predicted {:.6}, sigma {:.2e})",
        r.empirical_success, r.predicted_success, r.success_sigma
    );
    let _ = writeln!(out, "max cell deviation {:.3} sigma", r.max_deviation_sigma);
    let _ = writeln!(out, "wrong-class counts {}", r.cross_class_counts);
    for (i, row) in r.counts.iter().enumerate() {
        let _ = writeln!(out, "  member {i}: {row:?}");
    }
    out
}

#[derive(Debug, Serialize)]
struct Bb84Report {
    feasibility: FeasibilityReport,
    bound: BoundReport,
    bracket: Bracket,
    conclusion: String,
}

fn run_bb84_demo_with(format: Format, seed: u64, restarts: Option<usize>) -> CommandOutcome {
    let e = presets::bb84();
    let cfg = OptimizationConfig {
        seed,
        restarts: restarts
            .unwrap_or(OptimizationConfig::default().restarts)
            .max(1),
        ..Default::default()
    };
    let o = optimize_classification(&e, &cfg);
    let feasibility = classifiable_states(&e);
    let conclusion = if feasibility.feasible {
        "Some BB84 state lies outside the span of the other bit value; Eve can gain conclusive information."
    } else {
        "Every BB84 state lies in the span of the states encoding the other bit value, so Eve can not obtain any conclusive information about the bit."
    };
    let report = Bb84Report {
        bound: bound_report(&e),
        bracket: Bracket {
            lower: o.success_lower_bound,
            upper: o.upper_bound_reference,
        },
        feasibility,
        conclusion: conclusion.to_string(),
    };
    CommandOutcome::ok(match format {
        Format::Json => to_json(&report),
        Format::Text => {
            let mut out =
                String::from("BB84: bit 0 as |0> or |+>, bit 1 as |1> or |->, priors 1/4\n\n");
            out += &feasibility_text(&report.feasibility);
            out.push('\n');
            out += &bound_text(&report.bound);
            let _ = writeln!(
                out,
                "\noptimal success lies in [{:.12}, {:.12}]\n\n{}",
                report.bracket.lower, report.bracket.upper, report.conclusion
            );
            out
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn help_exits_zero() {
        let o = run(["--help"]);
        assert_eq!(o.exit_code, 0);
        assert!(o.report.contains("Usage"));
    }

    #[test]
    fn unknown_subcommand_is_input_error() {
        let o = run(["frobnicate"]);
        assert_eq!(o.exit_code, 2);
        assert!(o.report.contains("Usage"));
        assert_eq!(run(["check", "--bogus"]).exit_code, 2);
    }

    #[test]
    fn missing_input_flag() {
        let o = run(["bound"]);
        assert_eq!(o.exit_code, 2);
        assert!(o.report.contains("--input"));
    }

    #[test]
    fn bad_tolerance() {
        assert_eq!(run(["bb84", "--tolerance", "-1"]).exit_code, 2);
    }

    #[test]
    fn demo_json() {
        let o = run_bb84_demo();
        assert_eq!(o.exit_code, 0);
        let v: serde_json::Value = serde_json::from_str(&o.report).unwrap();
        assert_eq!(v["feasibility"]["feasible"], false);
        assert!(v["bracket"]["lower"].as_f64().unwrap().abs() < 1e-6);
        let upper = v["bracket"]["upper"].as_f64().unwrap();
        assert!((upper - (1.0 - 2f64.sqrt() / 4.0)).abs() < 1e-12);
    }
}
