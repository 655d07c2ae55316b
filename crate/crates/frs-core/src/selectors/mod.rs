//! The baseline feature selectors compared against the fuzzy-rough reduct:
//! information-gain ranking, correlation-based subset search, and a
//! decision-tree-ranked wrapper.
//!
//! All three score on discretized columns: continuous features fall into
//! equal-width bins over the normalized [0,1] range, every other kind uses
//! its distinct values as categories.

mod cfs;
mod dw;
mod ig;

pub use cfs::cfs_select;
pub use dw::{dw_select, DW_FOLDS};
pub use ig::{ig_select, info_gain_rank, RankedFeatures};

use serde::{Deserialize, Serialize};

use crate::classifiers::ClassifierSpec;
use crate::dataset::{FeatureKind, NormalizedDataset};
use crate::error::{Error, Result};
use crate::reduct::{self, Reduct};

pub const DEFAULT_BINS: usize = 10;
pub const DEFAULT_DELTA: f64 = 0.005;

/// A feature-selection method with its thresholds, as named on the command
/// line and in reports.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "kebab-case")]
pub enum SelectorSpec {
    /// Greedy fuzzy-rough reduct search.
    Frs { epsilon: f64 },
    /// Indispensable features only (the reduct-search core).
    FrsCore { epsilon: f64 },
    /// Information-gain ranking, keeping scores above the mean.
    Ig { bins: usize },
    /// Correlation-based subset search.
    Cfs,
    /// Tree-importance ranking plus wrapper backward elimination.
    Dw { delta: f64 },
    /// No selection; the full feature set.
    AllFeatures,
    /// A fixed externally supplied feature list.
    Universal { features: Vec<String> },
}

impl SelectorSpec {
    pub fn frs() -> Self {
        SelectorSpec::Frs { epsilon: reduct::EPSILON }
    }

    pub fn frs_core() -> Self {
        SelectorSpec::FrsCore { epsilon: reduct::EPSILON }
    }

    pub fn ig() -> Self {
        SelectorSpec::Ig { bins: DEFAULT_BINS }
    }

    pub fn dw() -> Self {
        SelectorSpec::Dw { delta: DEFAULT_DELTA }
    }

    pub fn mode_name(&self) -> &'static str {
        match self {
            SelectorSpec::Frs { .. } => "frs",
            SelectorSpec::FrsCore { .. } => "frs-core",
            SelectorSpec::Ig { .. } => "ig",
            SelectorSpec::Cfs => "cfs",
            SelectorSpec::Dw { .. } => "dw",
            SelectorSpec::AllFeatures => "all-features",
            SelectorSpec::Universal { .. } => "universal",
        }
    }
}

/// Run one selector on a dataset. `seed` drives the wrapper's fold
/// assignment and evaluator; the other selectors are deterministic without
/// it.
pub fn run_selector(spec: &SelectorSpec, ds: &NormalizedDataset, seed: u64) -> Result<Reduct> {
    match spec {
        SelectorSpec::Frs { epsilon } => reduct::quickreduct(ds, *epsilon),
        SelectorSpec::FrsCore { epsilon } => {
            let selected = reduct::core_features(ds, *epsilon)?;
            Ok(plain_reduct(ds, "core", selected))
        }
        SelectorSpec::Ig { bins } => ig_select(ds, *bins),
        SelectorSpec::Cfs => cfs_select(ds),
        SelectorSpec::Dw { delta } => {
            dw_select(ds, &ClassifierSpec::random_forest(seed), *delta, seed)
        }
        SelectorSpec::AllFeatures => {
            let all = ds.features.iter().map(|f| f.name.clone()).collect();
            Ok(plain_reduct(ds, "all-features", all))
        }
        SelectorSpec::Universal { features } => {
            for name in features {
                if ds.feature_index(name).is_none() {
                    return Err(Error::UnknownFeature { name: name.clone() });
                }
            }
            Ok(plain_reduct(ds, "universal", features.clone()))
        }
    }
}

fn plain_reduct(ds: &NormalizedDataset, mode: &str, selected: Vec<String>) -> Reduct {
    Reduct {
        dataset: ds.name.clone(),
        mode: mode.into(),
        selected,
        gamma: None,
        gamma_full: None,
        trace: Vec::new(),
        scores: None,
    }
}

/// Category code per sample for one feature column.
pub(crate) fn feature_categories(
    ds: &NormalizedDataset,
    feature: usize,
    bins: usize,
) -> Result<Vec<usize>> {
    if bins == 0 {
        return Err(Error::BadBinCount { got: 0 });
    }
    let col = &ds.columns[feature];
    if ds.features[feature].kind == FeatureKind::Continuous {
        Ok(col
            .iter()
            .map(|&v| ((v * bins as f64) as usize).min(bins - 1))
            .collect())
    } else {
        let mut distinct: Vec<f64> = col.to_vec();
        distinct.sort_by(f64::total_cmp);
        distinct.dedup();
        Ok(col
            .iter()
            .map(|v| distinct.partition_point(|d| d.total_cmp(v).is_lt()))
            .collect())
    }
}

/// Shannon entropy (bits) of a category assignment.
pub(crate) fn entropy(cats: &[usize]) -> f64 {
    if cats.is_empty() {
        return 0.0;
    }
    let k = cats.iter().max().unwrap() + 1;
    let mut counts = vec![0usize; k];
    for &c in cats {
        counts[c] += 1;
    }
    let n = cats.len() as f64;
    counts
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / n;
            -p * p.log2()
        })
        .sum()
}

/// H(y | x): expected label entropy within each category of `x`.
pub(crate) fn conditional_entropy(x: &[usize], y: &[usize]) -> f64 {
    if x.is_empty() {
        return 0.0;
    }
    let kx = x.iter().max().unwrap() + 1;
    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); kx];
    for (&xv, &yv) in x.iter().zip(y) {
        groups[xv].push(yv);
    }
    let n = x.len() as f64;
    groups
        .iter()
        .filter(|g| !g.is_empty())
        .map(|g| g.len() as f64 / n * entropy(g))
        .sum()
}

/// Symmetrical uncertainty: 2·I(x;y) / (H(x)+H(y)), 0 when both entropies
/// vanish. Mutual information is clamped at 0 against rounding noise.
pub(crate) fn symmetrical_uncertainty(x: &[usize], y: &[usize]) -> f64 {
    let hx = entropy(x);
    let hy = entropy(y);
    if hx + hy == 0.0 {
        return 0.0;
    }
    let mi = (hy - conditional_entropy(x, y)).max(0.0);
    2.0 * mi / (hx + hy)
}
