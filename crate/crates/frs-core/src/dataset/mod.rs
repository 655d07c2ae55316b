//! Tabular dataset model: typed feature descriptors, raw and normalized
//! tables, and cross-dataset feature alignment.
//!
//! Datasets are stored column-major (one `Vec<f64>` per feature) with the
//! decision column kept separately as raw strings until normalization
//! assigns label codes.

mod arff;
mod csv_io;
mod normalize;

pub use arff::load_arff;
pub use csv_io::{load_csv, write_csv, SchemaHints};
pub use normalize::normalize;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Value kind of a feature column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FeatureKind {
    Binary,
    Categorical,
    Discrete,
    Continuous,
}

/// Topical class of a phishing feature. `Unknown` when the source gives none.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FeatureClass {
    AddressBar,
    Abnormal,
    HtmlJavascript,
    DomainBased,
    Unknown,
}

impl FeatureClass {
    pub fn from_index(idx: u8) -> Self {
        match idx {
            1 => FeatureClass::AddressBar,
            2 => FeatureClass::Abnormal,
            3 => FeatureClass::HtmlJavascript,
            4 => FeatureClass::DomainBased,
            _ => FeatureClass::Unknown,
        }
    }
}

/// Descriptor for one feature column.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Feature {
    pub name: String,
    pub kind: FeatureKind,
    pub class: FeatureClass,
    pub observed_min: f64,
    pub observed_max: f64,
}

/// Immutable table of samples over typed features with one decision column.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub name: String,
    pub features: Vec<Feature>,
    /// Column-major values, `columns[f][i]` is feature `f` of sample `i`.
    pub columns: Vec<Vec<f64>>,
    /// Raw decision value per sample.
    pub labels: Vec<String>,
    pub label_name: String,
}

impl Dataset {
    /// Build a dataset from columns, checking the structural invariants.
    pub fn new(
        name: impl Into<String>,
        features: Vec<Feature>,
        columns: Vec<Vec<f64>>,
        labels: Vec<String>,
        label_name: impl Into<String>,
    ) -> Result<Self> {
        let name = name.into();
        if labels.is_empty() {
            return Err(Error::EmptyFile { path: name });
        }
        let mut seen = BTreeSet::new();
        for f in &features {
            if !seen.insert(f.name.as_str()) {
                return Err(Error::DuplicateFeature { name: f.name.clone() });
            }
        }
        debug_assert_eq!(features.len(), columns.len());
        for col in &columns {
            if col.len() != labels.len() {
                return Err(Error::RaggedRow {
                    row: col.len().min(labels.len()),
                    got: col.len(),
                    expected: labels.len(),
                });
            }
        }
        Ok(Dataset { name, features, columns, labels, label_name: label_name.into() })
    }

    pub fn n_samples(&self) -> usize {
        self.labels.len()
    }

    pub fn n_features(&self) -> usize {
        self.features.len()
    }

    pub fn feature_index(&self, name: &str) -> Option<usize> {
        self.features.iter().position(|f| f.name == name)
    }

    /// Gather one sample row in feature order.
    pub fn row(&self, i: usize) -> Vec<f64> {
        self.columns.iter().map(|c| c[i]).collect()
    }

    /// Distinct label values in canonical (numeric-aware ascending) order.
    pub fn label_values(&self) -> Vec<String> {
        sorted_distinct(&self.labels)
    }
}

/// Dataset with all feature values scaled into [0,1] and labels coded.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedDataset {
    pub name: String,
    pub features: Vec<Feature>,
    /// Column-major normalized values in [0,1].
    pub columns: Vec<Vec<f64>>,
    /// Distinct raw label values in canonical ascending order; index = code.
    pub label_values: Vec<String>,
    /// Per-sample label code, an index into `label_values`.
    pub label_codes: Vec<usize>,
    /// Label codes rescaled to [0,1]: `code / (k-1)`, or 0 when k = 1.
    pub label_scaled: Vec<f64>,
    pub label_name: String,
}

impl NormalizedDataset {
    pub fn n_samples(&self) -> usize {
        self.label_codes.len()
    }

    pub fn n_features(&self) -> usize {
        self.features.len()
    }

    pub fn n_classes(&self) -> usize {
        self.label_values.len()
    }

    pub fn feature_index(&self, name: &str) -> Option<usize> {
        self.features.iter().position(|f| f.name == name)
    }

    /// Scaled code for class `code`, the label-side value fed to the fuzzy
    /// similarity.
    pub fn scaled_code(&self, code: usize) -> f64 {
        let k = self.label_values.len();
        if k <= 1 {
            0.0
        } else {
            code as f64 / (k - 1) as f64
        }
    }

    /// Gather one sample row restricted to `subset` (feature indices).
    pub fn row_subset(&self, i: usize, subset: &[usize]) -> Vec<f64> {
        subset.iter().map(|&f| self.columns[f][i]).collect()
    }

    /// The same table keeping only the given sample rows. Label coding is
    /// preserved, not recomputed, so codes keep their meaning across
    /// subsets even when a class drops out entirely.
    pub fn restrict_rows(&self, rows: &[usize]) -> NormalizedDataset {
        NormalizedDataset {
            name: self.name.clone(),
            features: self.features.clone(),
            columns: self
                .columns
                .iter()
                .map(|col| rows.iter().map(|&i| col[i]).collect())
                .collect(),
            label_values: self.label_values.clone(),
            label_codes: rows.iter().map(|&i| self.label_codes[i]).collect(),
            label_scaled: rows.iter().map(|&i| self.label_scaled[i]).collect(),
            label_name: self.label_name.clone(),
        }
    }

    /// View the table as a raw `Dataset` again (labels decoded), so that
    /// normalization can be re-applied or the table re-emitted.
    pub fn to_dataset(&self) -> Dataset {
        Dataset {
            name: self.name.clone(),
            features: self.features.clone(),
            columns: self.columns.clone(),
            labels: self
                .label_codes
                .iter()
                .map(|&c| self.label_values[c].clone())
                .collect(),
            label_name: self.label_name.clone(),
        }
    }
}

/// Pairs of `(canonical, variant)` feature names declaring semantic identity
/// across datasets. Variant names canonicalize to the left-hand name.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct AliasMap {
    pairs: Vec<(String, String)>,
}

impl AliasMap {
    pub fn empty() -> Self {
        AliasMap { pairs: Vec::new() }
    }

    /// Build from pairs, rejecting any name that occurs twice (in either
    /// column): the mapping must be injective in both directions.
    pub fn from_pairs(pairs: Vec<(String, String)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for (a, b) in &pairs {
            if a == b {
                continue;
            }
            if !seen.insert(a.clone()) {
                return Err(Error::DuplicateAlias { name: a.clone() });
            }
            if !seen.insert(b.clone()) {
                return Err(Error::DuplicateAlias { name: b.clone() });
            }
        }
        Ok(AliasMap { pairs })
    }

    /// Load from a two-column CSV without header: `name_a,name_b`.
    pub fn load(path: impl AsRef<std::path::Path>) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(false)
            .flexible(false)
            .from_path(path.as_ref())?;
        let mut pairs = Vec::new();
        for record in reader.records() {
            let record = record?;
            if record.len() != 2 {
                return Err(Error::RaggedRow {
                    row: pairs.len() + 1,
                    got: record.len(),
                    expected: 2,
                });
            }
            pairs.push((record[0].trim().to_string(), record[1].trim().to_string()));
        }
        AliasMap::from_pairs(pairs)
    }

    /// Canonical name for `name`: the left-hand side of its pair, or the
    /// name itself when unaliased.
    pub fn canonical<'a>(&'a self, name: &'a str) -> &'a str {
        self.pairs
            .iter()
            .find(|(_, b)| b == name)
            .map(|(a, _)| a.as_str())
            .unwrap_or(name)
    }

    /// The variant name paired with canonical `name`, if any.
    pub fn variant_of(&self, name: &str) -> Option<&str> {
        self.pairs.iter().find(|(a, _)| a == name).map(|(_, b)| b.as_str())
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.pairs.iter().flat_map(|(a, b)| [a.as_str(), b.as_str()])
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// Canonical feature names present (directly or via alias) in every dataset.
///
/// The result is sorted, so the operation is commutative and associative
/// over its dataset list.
pub fn align(datasets: &[&Dataset], aliases: &AliasMap) -> Result<Vec<String>> {
    let universes: Vec<BTreeSet<&str>> = datasets
        .iter()
        .map(|ds| ds.features.iter().map(|f| f.name.as_str()).collect())
        .collect();
    for name in aliases.names() {
        if !universes.iter().any(|u| u.contains(name)) {
            return Err(Error::UnknownFeatureInAlias { name: name.to_string() });
        }
    }
    let canonical_universes: Vec<BTreeSet<&str>> = universes
        .iter()
        .map(|u| u.iter().map(|n| aliases.canonical(n)).collect())
        .collect();
    let mut shared: Vec<String> = match canonical_universes.first() {
        None => Vec::new(),
        Some(first) => first
            .iter()
            .filter(|n| canonical_universes[1..].iter().all(|u| u.contains(*n)))
            .map(|n| n.to_string())
            .collect(),
    };
    shared.sort();
    Ok(shared)
}

/// Distinct values in numeric-aware ascending order: when every value parses
/// as a number the order is numeric, otherwise lexicographic.
pub(crate) fn sorted_distinct(values: &[String]) -> Vec<String> {
    let mut distinct: Vec<String> = BTreeSet::from_iter(values.iter().cloned()).into_iter().collect();
    let numeric: Option<Vec<f64>> = distinct.iter().map(|v| v.parse::<f64>().ok()).collect();
    if let Some(nums) = numeric {
        let mut keyed: Vec<(f64, String)> = nums.into_iter().zip(distinct).collect();
        keyed.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(std::cmp::Ordering::Equal));
        distinct = keyed.into_iter().map(|(_, v)| v).collect();
    }
    distinct
}
