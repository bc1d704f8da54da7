use thiserror::Error;

/// Errors raised across the crate.
///
/// Variants map onto the two CLI exit classes: [`Error::is_input_error`]
/// covers malformed or inconsistent input, everything else is a domain
/// failure (the request was well formed but cannot be satisfied).
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("not Hermitian (max asymmetry {0:e})")]
    NotHermitian(f64),

    #[error("not PSD (min eigenvalue {0:e})")]
    NotPsd(f64),

    #[error("not an isometry (max defect {0:e})")]
    NotIsometry(f64),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("priors do not sum to 1 (sum = {0})")]
    PriorsDoNotSumToOne(f64),

    #[error("prior of member {index} must lie in (0, 1], got {value}")]
    InvalidPrior { index: usize, value: f64 },

    #[error("empty class {0}")]
    EmptyClass(usize),

    #[error("n ≥ 2 required (got {0} class)")]
    TooFewClasses(usize),

    #[error("class label {label} of member {index} outside 1..={classes}")]
    ClassLabelOutOfRange {
        index: usize,
        label: usize,
        classes: usize,
    },

    #[error("state not normalized (member {index}, norm {norm})")]
    StateNotNormalized { index: usize, norm: f64 },

    #[error("member index {index} out of range (N = {len})")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("state lies in complement span (member {0})")]
    StateInComplementSpan(usize),

    #[error("infeasible ensemble: every state lies in the span of the other classes")]
    InfeasibleEnsemble,

    #[error("not a measurement (completeness defect {0:e})")]
    NotAMeasurement(f64),

    #[error("strategy failed validation: {0}")]
    StrategyFailedValidation(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// True for errors caused by malformed or inconsistent input data.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::DimensionMismatch { .. }
                | Error::Parse { .. }
                | Error::PriorsDoNotSumToOne(_)
                | Error::InvalidPrior { .. }
                | Error::EmptyClass(_)
                | Error::TooFewClasses(_)
                | Error::ClassLabelOutOfRange { .. }
                | Error::StateNotNormalized { .. }
                | Error::IndexOutOfRange { .. }
                | Error::InvalidArgument(_)
                | Error::NotHermitian(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
