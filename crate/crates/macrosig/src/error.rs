use std::path::PathBuf;

/// Everything that can go wrong while building distributions, evaluating
/// criteria, or moving samples through files.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("empty input: at least one outcome is required")]
    EmptyInput,

    #[error("need at least {needed} records, got {got}")]
    InsufficientData { needed: usize, got: usize },

    #[error("non-finite value encountered: {0}")]
    NonFinite(f64),

    #[error("negative weight encountered: {0}")]
    NegativeWeight(f64),

    #[error("weights must have positive total mass")]
    ZeroWeightSum,

    #[error("outcomes ({outcomes}) and weights ({weights}) differ in length")]
    LengthMismatch { outcomes: usize, weights: usize },

    #[error("separation must be positive and finite, got {0}")]
    InvalidSeparation(f64),

    #[error("mixture weights must sum to 1 within 1e-9, got {0}")]
    WeightSumMismatch(f64),

    #[error("variance must be nonnegative, got {0}")]
    NegativeVariance(f64),

    #[error("variance must be positive and finite, got {0}")]
    InvalidVariance(f64),

    #[error("uncertainty product {0} is below the quantum floor of 1")]
    BelowQuantumFloor(f64),

    #[error("operation requires a pure state; uncertainty product is {0}")]
    ImpureModel(f64),

    #[error("inferred variance would be negative ({0}); covariance matrix is not positive semidefinite")]
    NotPositiveSemidefinite(f64),

    #[error("spin quantum number must be a positive half-integer, got {0}")]
    InvalidSpin(f64),

    #[error("spin quantum number {j} exceeds the supported ceiling of {ceiling}")]
    SpinTooLarge { j: f64, ceiling: f64 },

    #[error("separation {s} exceeds the maximum outcome {max} for this model")]
    SeparationOutOfRange { s: f64, max: f64 },

    #[error("sample count must be positive")]
    EmptyBatch,

    #[error("observable {observable} is not produced by this model")]
    WrongObservable { observable: &'static str },

    #[error("scan grid must have a positive ceiling and at least one point")]
    InvalidGrid,

    #[error("invalid grid spec {spec:?}: {reason}")]
    BadGridSpec { spec: String, reason: String },

    #[error("{}: unrecognized column header {found:?}", path.display())]
    BadHeader { path: PathBuf, found: String },

    #[error("{}:{line}: {reason}", path.display())]
    ParseRecord {
        path: PathBuf,
        line: usize,
        reason: String,
    },

    #[error("missing required parameter: {0}")]
    MissingParameter(&'static str),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
