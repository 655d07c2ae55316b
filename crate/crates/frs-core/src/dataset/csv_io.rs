//! CSV loading with feature-kind inference, plus re-emission.

use std::collections::BTreeMap;
use std::path::Path;

use crate::dataset::{Dataset, Feature, FeatureClass, FeatureKind};
use crate::error::{Error, Result};

/// Optional per-feature overrides applied after kind inference.
#[derive(Debug, Clone, Default)]
pub struct SchemaHints {
    pub kinds: BTreeMap<String, FeatureKind>,
    pub classes: BTreeMap<String, FeatureClass>,
}

impl SchemaHints {
    pub fn none() -> Self {
        SchemaHints::default()
    }
}

/// Load a headered CSV file. `label_column` names the decision column; every
/// other column is a feature. Missing or non-numeric feature values are
/// errors, never silently imputed.
pub fn load_csv(
    path: impl AsRef<Path>,
    label_column: &str,
    hints: &SchemaHints,
) -> Result<Dataset> {
    let path = path.as_ref();
    let display = path.display().to_string();
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_path(path)?;

    let header: Vec<String> = reader
        .headers()?
        .iter()
        .map(|h| h.trim().to_string())
        .collect();
    if header.is_empty() {
        return Err(Error::EmptyFile { path: display });
    }
    let label_idx = header
        .iter()
        .position(|h| h == label_column)
        .ok_or_else(|| Error::UnknownLabelColumn { name: label_column.to_string() })?;

    let feature_names: Vec<String> = header
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != label_idx)
        .map(|(_, h)| h.clone())
        .collect();

    let mut columns: Vec<Vec<f64>> = vec![Vec::new(); feature_names.len()];
    let mut labels: Vec<String> = Vec::new();
    for (row_idx, record) in reader.records().enumerate() {
        let record = record?;
        let row = row_idx + 1;
        if record.len() != header.len() {
            return Err(Error::RaggedRow { row, got: record.len(), expected: header.len() });
        }
        let mut feat = 0usize;
        for (col_idx, raw) in record.iter().enumerate() {
            let raw = raw.trim();
            if col_idx == label_idx {
                if raw.is_empty() || raw == "?" {
                    return Err(Error::MissingValue { row, col: label_column.to_string() });
                }
                labels.push(raw.to_string());
                continue;
            }
            let col = &feature_names[feat];
            if raw.is_empty() || raw == "?" {
                return Err(Error::MissingValue { row, col: col.clone() });
            }
            let value: f64 = raw.parse().map_err(|_| Error::NonNumericValue {
                row,
                col: col.clone(),
                value: raw.to_string(),
            })?;
            if !value.is_finite() {
                return Err(Error::NonNumericValue { row, col: col.clone(), value: raw.to_string() });
            }
            columns[feat].push(value);
            feat += 1;
        }
    }
    if labels.is_empty() {
        return Err(Error::EmptyFile { path: display });
    }

    let features = feature_names
        .iter()
        .zip(&columns)
        .map(|(name, col)| describe_feature(name, col, hints))
        .collect();
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or(display);
    Dataset::new(stem, features, columns, labels, label_column)
}

/// Build a feature descriptor from observed values and hints.
///
/// Inference: two distinct values is binary; integer-valued columns are
/// categorical up to 10 distinct values and discrete beyond; anything else
/// is continuous. An explicit hint wins over inference.
fn describe_feature(name: &str, col: &[f64], hints: &SchemaHints) -> Feature {
    let mut distinct: Vec<f64> = col.to_vec();
    distinct.sort_by(|a, b| a.partial_cmp(b).unwrap());
    distinct.dedup();
    let all_integer = distinct.iter().all(|v| v.fract() == 0.0);
    let inferred = if distinct.len() <= 2 {
        FeatureKind::Binary
    } else if all_integer && distinct.len() <= 10 {
        FeatureKind::Categorical
    } else if all_integer {
        FeatureKind::Discrete
    } else {
        FeatureKind::Continuous
    };
    let kind = hints.kinds.get(name).copied().unwrap_or(inferred);
    let class = hints.classes.get(name).copied().unwrap_or(FeatureClass::Unknown);
    Feature {
        name: name.to_string(),
        kind,
        class,
        observed_min: distinct.first().copied().unwrap_or(0.0),
        observed_max: distinct.last().copied().unwrap_or(0.0),
    }
}

/// Write a dataset back out as headered CSV, features in order followed by
/// the label column. Values print via `{}` so integral values round-trip
/// without a trailing fraction.
pub fn write_csv(dataset: &Dataset, path: impl AsRef<Path>) -> Result<()> {
    let mut writer = csv::Writer::from_path(path.as_ref())?;
    let mut header: Vec<&str> = dataset.features.iter().map(|f| f.name.as_str()).collect();
    header.push(dataset.label_name.as_str());
    writer.write_record(&header)?;
    for i in 0..dataset.n_samples() {
        let mut record: Vec<String> =
            dataset.columns.iter().map(|c| format!("{}", c[i])).collect();
        record.push(dataset.labels[i].clone());
        writer.write_record(&record)?;
    }
    writer.flush()?;
    Ok(())
}
