//! The three reference classifiers behind one train/predict contract.
//!
//! Training internally reorders the chosen features into name-sorted
//! (canonical) order before any arithmetic or seeded randomness runs, so a
//! model's behavior depends on which features it sees, never on the order
//! the caller listed them or their column positions in the dataset.

mod forest;
mod mlp;
mod smo;
mod tree;

pub use forest::ForestParams;
pub use mlp::{batch_gradient, batch_loss, MlpParams, MlpWeights};
pub use smo::{kkt_max_violation, train_binary, SmoMachine, SmoParams};

pub(crate) use forest::tree_importance;

use serde::{Deserialize, Serialize};

use crate::dataset::NormalizedDataset;
use crate::error::{Error, Result};
use crate::par;

pub const MODEL_VERSION: u32 = 1;

/// Which classifier to train, with its hyperparameters and seed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ClassifierSpec {
    Mlp(MlpParams),
    RandomForest(ForestParams),
    Smo(SmoParams),
}

impl ClassifierSpec {
    pub fn mlp(seed: u64) -> Self {
        ClassifierSpec::Mlp(MlpParams::new(seed))
    }

    pub fn random_forest(seed: u64) -> Self {
        ClassifierSpec::RandomForest(ForestParams::new(seed))
    }

    pub fn smo(seed: u64) -> Self {
        ClassifierSpec::Smo(SmoParams::new(seed))
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            ClassifierSpec::Mlp(_) => "mlp",
            ClassifierSpec::RandomForest(_) => "random_forest",
            ClassifierSpec::Smo(_) => "smo",
        }
    }

    pub fn seed(&self) -> u64 {
        match self {
            ClassifierSpec::Mlp(p) => p.seed,
            ClassifierSpec::RandomForest(p) => p.seed,
            ClassifierSpec::Smo(p) => p.seed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum ModelParams {
    Mlp { weights: MlpWeights },
    RandomForest { forest: forest::ForestModel },
    Smo { machines: Vec<SmoMachine> },
}

/// A trained classifier. `feature_names` fixes the arity and order of
/// prediction rows; internally values are permuted into canonical order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Model {
    pub version: u32,
    pub spec: ClassifierSpec,
    pub feature_names: Vec<String>,
    /// Position in `feature_names` of each canonical-order feature.
    canon: Vec<usize>,
    pub label_values: Vec<String>,
    params: ModelParams,
}

/// Train `spec` on the named features of a normalized dataset.
pub fn train(spec: &ClassifierSpec, ds: &NormalizedDataset, features: &[String]) -> Result<Model> {
    if features.is_empty() {
        return Err(Error::EmptySubset);
    }
    if ds.n_classes() < 2 {
        return Err(Error::DegenerateLabels);
    }
    let mut seen = std::collections::BTreeSet::new();
    for name in features {
        if !seen.insert(name.as_str()) {
            return Err(Error::DuplicateFeature { name: name.clone() });
        }
        if ds.feature_index(name).is_none() {
            return Err(Error::UnknownFeature { name: name.clone() });
        }
    }

    let mut canon: Vec<usize> = (0..features.len()).collect();
    canon.sort_by(|&a, &b| features[a].cmp(&features[b]));
    let columns: Vec<Vec<f64>> = canon
        .iter()
        .map(|&pos| ds.columns[ds.feature_index(&features[pos]).expect("checked")].clone())
        .collect();
    for col in &columns {
        if col.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFiniteValue { context: "training data".into() });
        }
    }
    let y = &ds.label_codes;
    let n_classes = ds.n_classes();

    let params = match spec {
        ClassifierSpec::RandomForest(p) => {
            ModelParams::RandomForest { forest: forest::train(&columns, y, n_classes, p) }
        }
        ClassifierSpec::Mlp(p) => {
            let rows = to_rows(&columns);
            ModelParams::Mlp { weights: mlp::train(&rows, y, n_classes, p) }
        }
        ClassifierSpec::Smo(p) => {
            let rows = to_rows(&columns);
            ModelParams::Smo { machines: train_smo_machines(&rows, y, n_classes, p) }
        }
    };

    Ok(Model {
        version: MODEL_VERSION,
        spec: spec.clone(),
        feature_names: features.to_vec(),
        canon,
        label_values: ds.label_values.clone(),
        params,
    })
}

fn to_rows(columns: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = columns.first().map_or(0, Vec::len);
    (0..n).map(|i| columns.iter().map(|c| c[i]).collect()).collect()
}

/// One machine for two classes (higher code positive), one-vs-rest above.
fn train_smo_machines(
    rows: &[Vec<f64>],
    y: &[usize],
    n_classes: usize,
    params: &SmoParams,
) -> Vec<SmoMachine> {
    if n_classes == 2 {
        let targets: Vec<f64> = y.iter().map(|&c| if c == 1 { 1.0 } else { -1.0 }).collect();
        vec![smo::train_binary(rows, &targets, params)]
    } else {
        par::map_collect(n_classes, |positive| {
            let targets: Vec<f64> =
                y.iter().map(|&c| if c == positive { 1.0 } else { -1.0 }).collect();
            smo::train_binary(rows, &targets, params)
        })
    }
}

impl Model {
    /// Predicted label for one row, ordered like `feature_names`.
    pub fn predict(&self, row: &[f64]) -> Result<&str> {
        if row.len() != self.feature_names.len() {
            return Err(Error::ModelArityMismatch {
                expected: self.feature_names.len(),
                got: row.len(),
            });
        }
        if row.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFiniteValue { context: "prediction row".into() });
        }
        let canonical: Vec<f64> = self.canon.iter().map(|&p| row[p]).collect();
        let code = match &self.params {
            ModelParams::RandomForest { forest } => forest.predict(&canonical),
            ModelParams::Mlp { weights } => mlp::predict(weights, &canonical),
            ModelParams::Smo { machines } => {
                if machines.len() == 1 {
                    usize::from(machines[0].decision(&canonical) >= 0.0)
                } else {
                    let mut best = 0;
                    let mut best_score = machines[0].decision(&canonical);
                    for (c, m) in machines.iter().enumerate().skip(1) {
                        let score = m.decision(&canonical);
                        if score > best_score {
                            best = c;
                            best_score = score;
                        }
                    }
                    best
                }
            }
        };
        Ok(&self.label_values[code])
    }

    /// Predict many rows; order preserved.
    pub fn predict_rows(&self, rows: &[Vec<f64>]) -> Result<Vec<String>> {
        let results = par::map_slice(rows, |row| self.predict(row).map(str::to_string));
        results.into_iter().collect()
    }

    pub fn save(&self, path: impl AsRef<std::path::Path>) -> Result<()> {
        let mut json = serde_json::to_string_pretty(self)?;
        json.push('\n');
        std::fs::write(path, json)?;
        Ok(())
    }

    pub fn load(path: impl AsRef<std::path::Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let model: Model = serde_json::from_str(&text)?;
        if model.version != MODEL_VERSION {
            return Err(Error::ModelVersionMismatch {
                got: model.version,
                expected: MODEL_VERSION,
            });
        }
        Ok(model)
    }
}
