//! Conclusive (unambiguous) classification of pure quantum states.
//!
//! Given `N` pure states with priors, partitioned into classes `S_1..S_n`, a
//! conclusive classifier either names the class of the prepared state or
//! reports failure, and never names a wrong class. This crate
//!
//! * decides whether such a classifier exists ([`feasibility`]): it does iff
//!   some state lies outside the span of the states of all other classes;
//! * builds explicit measurements and their unitary dilations ([`strategy`]);
//! * evaluates the closed-form success upper bound ([`bounds`]);
//! * searches numerically for good measurements, bracketing the optimum
//!   ([`optimizer`]);
//! * samples measurement runs and checks them against predictions
//!   ([`montecarlo`]).
//!
//! The [`cli`] module drives all of it from the `conclusive` binary.
//!
//! ```
//! use conclusive::ensemble::presets;
//! use conclusive::feasibility::is_conclusively_classifiable;
//! use conclusive::bounds::success_upper_bound;
//!
//! let bb84 = presets::bb84();
//! assert!(!is_conclusively_classifiable(&bb84));
//! assert!((success_upper_bound(&bb84) - (1.0 - 2f64.sqrt() / 4.0)).abs() < 1e-12);
//! ```

pub mod bounds;
pub mod cli;
pub mod ensemble;
pub mod error;
pub mod feasibility;
pub mod montecarlo;
pub mod numerics;
pub mod optimizer;
pub mod strategy;

pub use ensemble::{ClassifiedEnsemble, PureState};
pub use error::{Error, Result};
pub use strategy::ClassificationStrategy;
