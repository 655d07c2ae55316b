//! Evaluation harness: stratified folds, confusion metrics, and the
//! selector × classifier grid protocol with its report formats.

mod folds;
mod metrics;
mod protocol;

pub use folds::{fold_complement, stratified_folds};
pub use metrics::ConfusionCounts;
pub use protocol::{
    run_protocol, universal_features, EvalCell, EvalReport, ProtocolOptions, DEFAULT_FOLDS,
};
