use thiserror::Error;

/// Errors produced by dataset loading, fuzzy-rough computations, selectors,
/// classifiers and the evaluation harness.
///
/// [`Error::is_input`] distinguishes bad input (files, schemas, aliases) from
/// computation-level failures, which front ends map to different exit codes.
#[derive(Debug, Error)]
pub enum Error {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    // dataset loading
    #[error("file is empty or has no data rows: {path}")]
    EmptyFile { path: String },
    #[error("label column {name:?} not found in header")]
    UnknownLabelColumn { name: String },
    #[error("row {row} has {got} values, expected {expected}")]
    RaggedRow { row: usize, got: usize, expected: usize },
    #[error("missing value at row {row}, column {col}")]
    MissingValue { row: usize, col: String },
    #[error("non-numeric feature value {value:?} at row {row}, column {col}")]
    NonNumericValue { row: usize, col: String, value: String },
    #[error("malformed ARFF header: {reason}")]
    MalformedHeader { reason: String },
    #[error("unsupported ARFF attribute type {kind:?} for attribute {name:?}")]
    UnsupportedAttributeType { name: String, kind: String },
    #[error("duplicate feature name {name:?}")]
    DuplicateFeature { name: String },

    // alias maps
    #[error("alias map entry references unknown feature {name:?}")]
    UnknownFeatureInAlias { name: String },
    #[error("alias map is not injective: {name:?} appears more than once")]
    DuplicateAlias { name: String },

    // fuzzy-rough core
    #[error("value {value} outside [0,1]")]
    OutOfRange { value: f64 },
    #[error("rows have different arity: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },
    #[error("feature {name:?} is not discrete")]
    NonDiscreteFeature { name: String },
    #[error("empty input sequence")]
    EmptyInput,
    #[error("empty feature subset")]
    EmptySubset,
    #[error("matrix dimensions do not match: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    // reduct search / selectors / classifiers
    #[error("labels are degenerate: need at least two distinct classes")]
    DegenerateLabels,
    #[error("fold count {got} is not in 2..=sample count ({n})")]
    BadFoldCount { got: usize, n: usize },
    #[error("bin count must be positive, got {got}")]
    BadBinCount { got: usize },
    #[error("{got} features exceed the exhaustive search cap of {cap}")]
    TooManyFeatures { got: usize, cap: usize },
    #[error("need at least {needed} features, got {got}")]
    NotEnoughFeatures { needed: usize, got: usize },
    #[error("need at least {needed} reduct files, got {got}")]
    NotEnoughReducts { needed: usize, got: usize },
    #[error("unknown feature {name:?}")]
    UnknownFeature { name: String },
    #[error("non-finite value encountered in {context}")]
    NonFiniteValue { context: String },
    #[error("feature universes do not match: {reason}")]
    FeatureUniverseMismatch { reason: String },
    #[error("model was trained on {expected} features, got {got}")]
    ModelArityMismatch { expected: usize, got: usize },
    #[error("unsupported model version {got}, expected {expected}")]
    ModelVersionMismatch { got: u32, expected: u32 },
}

impl Error {
    /// True for errors caused by bad user input rather than a failed
    /// computation. CLIs exit 2 for input errors and 3 otherwise.
    pub fn is_input(&self) -> bool {
        matches!(
            self,
            Error::Io(_)
                | Error::Csv(_)
                | Error::Json(_)
                | Error::EmptyFile { .. }
                | Error::UnknownLabelColumn { .. }
                | Error::RaggedRow { .. }
                | Error::MissingValue { .. }
                | Error::NonNumericValue { .. }
                | Error::MalformedHeader { .. }
                | Error::UnsupportedAttributeType { .. }
                | Error::DuplicateFeature { .. }
                | Error::UnknownFeatureInAlias { .. }
                | Error::DuplicateAlias { .. }
                | Error::NotEnoughReducts { .. }
                | Error::UnknownFeature { .. }
                | Error::BadFoldCount { .. }
                | Error::BadBinCount { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
