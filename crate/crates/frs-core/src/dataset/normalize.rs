//! Scaling of raw feature values and labels into [0,1].
//!
//! Binary and categorical columns map their distinct codes, ascending, onto
//! an equally spaced grid; discrete and continuous columns are min-max
//! scaled. A constant column collapses to all zeros. Labels get codes
//! 0..k-1 in canonical value order, then the same equal spacing.

use crate::dataset::{sorted_distinct, Dataset, Feature, FeatureKind, NormalizedDataset};
use crate::error::Result;

/// Normalize every feature column and code the labels. Applying this to
/// `normalize(d).to_dataset()` reproduces the same values bit for bit.
pub fn normalize(dataset: &Dataset) -> Result<NormalizedDataset> {
    let columns: Vec<Vec<f64>> = dataset
        .features
        .iter()
        .zip(&dataset.columns)
        .map(|(feature, col)| normalize_column(feature, col))
        .collect();

    let features = dataset
        .features
        .iter()
        .zip(&columns)
        .map(|(f, col)| {
            let (lo, hi) = col
                .iter()
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)));
            Feature { observed_min: lo, observed_max: hi, ..f.clone() }
        })
        .collect();

    let label_values = sorted_distinct(&dataset.labels);
    let label_codes: Vec<usize> = dataset
        .labels
        .iter()
        .map(|l| label_values.iter().position(|v| v == l).expect("label in distinct set"))
        .collect();
    let k = label_values.len();
    let label_scaled = label_codes
        .iter()
        .map(|&c| if k <= 1 { 0.0 } else { c as f64 / (k - 1) as f64 })
        .collect();

    Ok(NormalizedDataset {
        name: dataset.name.clone(),
        features,
        columns,
        label_values,
        label_codes,
        label_scaled,
        label_name: dataset.label_name.clone(),
    })
}

fn normalize_column(feature: &Feature, col: &[f64]) -> Vec<f64> {
    match feature.kind {
        FeatureKind::Binary | FeatureKind::Categorical => {
            let mut codes = col.to_vec();
            codes.sort_by(|a, b| a.partial_cmp(b).unwrap());
            codes.dedup();
            let k = codes.len();
            col.iter()
                .map(|v| {
                    let rank = codes.partition_point(|c| c < v);
                    if k <= 1 {
                        0.0
                    } else {
                        rank as f64 / (k - 1) as f64
                    }
                })
                .collect()
        }
        FeatureKind::Discrete | FeatureKind::Continuous => {
            let (lo, hi) = col
                .iter()
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)));
            let range = hi - lo;
            col.iter()
                .map(|&v| if range == 0.0 { 0.0 } else { (v - lo) / range })
                .collect()
        }
    }
}
