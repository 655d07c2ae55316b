//! Fuzzy-rough feature selection for phishing datasets.
//!
//! The crate covers the full pipeline: loading CSV/ARFF tables, scaling
//! them into the unit interval, scoring feature subsets with a fuzzy-rough
//! dependency degree, searching for reducts, ranking baselines against
//! them, training reference classifiers, and evaluating selections.

pub mod classifiers;
pub mod dataset;
pub mod error;
pub mod eval;
pub mod fuzzy;
mod par;
pub mod reduct;
pub mod selectors;

pub use error::{Error, Result};
