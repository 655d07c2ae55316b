//! The evaluation grid: every selector crossed with every classifier,
//! trained out-of-sample when a separate training table is supplied and by
//! stratified cross-validation otherwise.

use serde::{Deserialize, Serialize};

use crate::classifiers::{self, ClassifierSpec};
use crate::dataset::{AliasMap, NormalizedDataset};
use crate::error::{Error, Result};
use crate::par;
use crate::reduct::Reduct;
use crate::selectors::{run_selector, SelectorSpec};

use super::folds::{fold_complement, stratified_folds};
use super::metrics::ConfusionCounts;

pub const DEFAULT_FOLDS: usize = 10;

/// Run-wide evaluation settings. The positive class drives the confusion
/// counts; left empty it is inferred from the label values ("-1" style
/// phishing codes first, then "1", else the first label), with a three-class
/// middle label "0" counted as positive unless `suspicious_as_phishing` is
/// cleared.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProtocolOptions {
    pub seed: u64,
    pub k_folds: usize,
    pub positive_labels: Vec<String>,
    pub suspicious_as_phishing: bool,
}

impl ProtocolOptions {
    pub fn new(seed: u64) -> Self {
        ProtocolOptions {
            seed,
            k_folds: DEFAULT_FOLDS,
            positive_labels: Vec::new(),
            suspicious_as_phishing: true,
        }
    }
}

/// One grid cell: a selector's feature set evaluated under one classifier.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalCell {
    pub selector: String,
    pub classifier: String,
    pub n_features: usize,
    pub features: Vec<String>,
    pub counts: ConfusionCounts,
    pub precision: f64,
    pub recall: f64,
    pub f_measure: f64,
    pub accuracy: f64,
    /// True when any metric above fell back to the 0/0 convention.
    pub degenerate_metrics: bool,
}

/// Full record of one evaluation run, sufficient to rerun it exactly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub dataset: String,
    pub train_dataset: Option<String>,
    /// "out-of-sample" or "cross-validation".
    pub protocol: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub k_folds: Option<usize>,
    pub seed: u64,
    pub positive_labels: Vec<String>,
    pub suspicious_as_phishing: bool,
    pub selectors: Vec<SelectorSpec>,
    pub classifiers: Vec<ClassifierSpec>,
    /// One selection per selector, in selector order.
    pub selections: Vec<Reduct>,
    /// Selector-major, classifier-minor grid order.
    pub cells: Vec<EvalCell>,
}

/// Evaluate every selector × classifier pair. Selection always runs on
/// `eval_ds`; models train on `train_ds` when given, otherwise by k-fold
/// cross-validation on `eval_ds` itself.
pub fn run_protocol(
    train_ds: Option<&NormalizedDataset>,
    eval_ds: &NormalizedDataset,
    selectors: &[SelectorSpec],
    classifiers: &[ClassifierSpec],
    opts: &ProtocolOptions,
) -> Result<EvalReport> {
    if eval_ds.n_classes() < 2 {
        return Err(Error::DegenerateLabels);
    }
    if let Some(tr) = train_ds {
        for f in &eval_ds.features {
            if tr.feature_index(&f.name).is_none() {
                return Err(Error::FeatureUniverseMismatch {
                    reason: format!("training set lacks feature {:?}", f.name),
                });
            }
        }
        if tr.label_values != eval_ds.label_values {
            return Err(Error::FeatureUniverseMismatch {
                reason: format!(
                    "label values differ: training {:?} vs evaluation {:?}",
                    tr.label_values, eval_ds.label_values
                ),
            });
        }
    }

    let selections: Vec<Reduct> = selectors
        .iter()
        .map(|s| run_selector(s, eval_ds, opts.seed))
        .collect::<Result<_>>()?;
    let positive = positive_set(&eval_ds.label_values, opts);
    let folds = match train_ds {
        Some(_) => None,
        None => Some(stratified_folds(&eval_ds.label_codes, opts.k_folds, opts.seed)?),
    };

    let jobs: Vec<(usize, usize)> = (0..selectors.len())
        .flat_map(|s| (0..classifiers.len()).map(move |c| (s, c)))
        .collect();
    let cells = par::map_slice(&jobs, |&(si, ci)| -> Result<EvalCell> {
        let features = &selections[si].selected;
        if features.is_empty() {
            return Err(Error::EmptySubset);
        }
        let counts = match (&train_ds, &folds) {
            (Some(tr), _) => {
                out_of_sample_counts(tr, eval_ds, &classifiers[ci], features, &positive)?
            }
            (None, Some(folds)) => {
                cv_counts(eval_ds, &classifiers[ci], features, folds, &positive)?
            }
            (None, None) => unreachable!("folds exist whenever train_ds is absent"),
        };
        Ok(make_cell(
            selectors[si].mode_name(),
            classifiers[ci].kind_name(),
            features.clone(),
            counts,
        ))
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;

    Ok(EvalReport {
        dataset: eval_ds.name.clone(),
        train_dataset: train_ds.map(|tr| tr.name.clone()),
        protocol: if train_ds.is_some() { "out-of-sample" } else { "cross-validation" }.into(),
        k_folds: train_ds.is_none().then_some(opts.k_folds),
        seed: opts.seed,
        positive_labels: positive,
        suspicious_as_phishing: opts.suspicious_as_phishing,
        selectors: selectors.to_vec(),
        classifiers: classifiers.to_vec(),
        selections,
        cells,
    })
}

fn positive_set(label_values: &[String], opts: &ProtocolOptions) -> Vec<String> {
    if !opts.positive_labels.is_empty() {
        return opts.positive_labels.clone();
    }
    let has = |v: &str| label_values.iter().any(|l| l == v);
    if has("-1") {
        let mut out = vec!["-1".to_string()];
        if opts.suspicious_as_phishing && label_values.len() > 2 && has("0") {
            out.push("0".to_string());
        }
        out
    } else if has("1") {
        vec!["1".to_string()]
    } else {
        vec![label_values[0].clone()]
    }
}

fn make_cell(
    selector: &str,
    classifier: &str,
    features: Vec<String>,
    counts: ConfusionCounts,
) -> EvalCell {
    EvalCell {
        selector: selector.into(),
        classifier: classifier.into(),
        n_features: features.len(),
        features,
        counts,
        precision: counts.precision(),
        recall: counts.recall(),
        f_measure: counts.f_measure(),
        accuracy: counts.accuracy(),
        degenerate_metrics: counts.degenerate(),
    }
}

fn out_of_sample_counts(
    train_ds: &NormalizedDataset,
    eval_ds: &NormalizedDataset,
    classifier: &ClassifierSpec,
    features: &[String],
    positive: &[String],
) -> Result<ConfusionCounts> {
    let model = classifiers::train(classifier, train_ds, features)?;
    let cols: Vec<usize> = features
        .iter()
        .map(|n| eval_ds.feature_index(n).expect("selected on this universe"))
        .collect();
    let mut counts = ConfusionCounts::default();
    for i in 0..eval_ds.n_samples() {
        let row = eval_ds.row_subset(i, &cols);
        let predicted = model.predict(&row)?;
        let actual = &eval_ds.label_values[eval_ds.label_codes[i]];
        counts.record(is_positive(positive, actual), is_positive(positive, predicted));
    }
    Ok(counts)
}

fn cv_counts(
    ds: &NormalizedDataset,
    classifier: &ClassifierSpec,
    features: &[String],
    folds: &[Vec<usize>],
    positive: &[String],
) -> Result<ConfusionCounts> {
    let cols: Vec<usize> = features
        .iter()
        .map(|n| ds.feature_index(n).expect("selected on this universe"))
        .collect();
    let mut counts = ConfusionCounts::default();
    for fold in folds {
        let train_rows = fold_complement(ds.n_samples(), fold);
        let model = classifiers::train(classifier, &ds.restrict_rows(&train_rows), features)?;
        for &i in fold {
            let row = ds.row_subset(i, &cols);
            let predicted = model.predict(&row)?;
            let actual = &ds.label_values[ds.label_codes[i]];
            counts.record(is_positive(positive, actual), is_positive(positive, predicted));
        }
    }
    Ok(counts)
}

fn is_positive(positive: &[String], label: &str) -> bool {
    positive.iter().any(|p| p == label)
}

/// Canonical intersection of the selected features across several reducts:
/// names are first mapped through the alias map, then intersected. Sorted,
/// order-independent, idempotent.
pub fn universal_features(reducts: &[Reduct], aliases: &AliasMap) -> Result<Vec<String>> {
    if reducts.len() < 2 {
        return Err(Error::NotEnoughReducts { needed: 2, got: reducts.len() });
    }
    let mut sets = reducts.iter().map(|r| {
        r.selected
            .iter()
            .map(|n| aliases.canonical(n).to_string())
            .collect::<std::collections::BTreeSet<String>>()
    });
    let first = sets.next().expect("length checked");
    let common = sets.fold(first, |acc, s| acc.intersection(&s).cloned().collect());
    Ok(common.into_iter().collect())
}

impl EvalReport {
    pub fn to_json(&self) -> Result<String> {
        let mut json = serde_json::to_string_pretty(self)?;
        json.push('\n');
        Ok(json)
    }

    pub fn save(&self, path: impl AsRef<std::path::Path>) -> Result<()> {
        std::fs::write(path, self.to_json()?)?;
        Ok(())
    }

    pub fn load(path: impl AsRef<std::path::Path>) -> Result<Self> {
        Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
    }

    /// One CSV row per grid cell.
    pub fn write_flat_csv(&self, path: impl AsRef<std::path::Path>) -> Result<()> {
        let mut w = csv::Writer::from_path(path)?;
        w.write_record([
            "dataset",
            "protocol",
            "selector",
            "classifier",
            "n_features",
            "tp",
            "fp",
            "tn",
            "fn",
            "precision",
            "recall",
            "f_measure",
            "accuracy",
            "features",
        ])?;
        for cell in &self.cells {
            w.write_record([
                self.dataset.as_str(),
                self.protocol.as_str(),
                cell.selector.as_str(),
                cell.classifier.as_str(),
                &cell.n_features.to_string(),
                &cell.counts.tp.to_string(),
                &cell.counts.fp.to_string(),
                &cell.counts.tn.to_string(),
                &cell.counts.fn_.to_string(),
                &cell.precision.to_string(),
                &cell.recall.to_string(),
                &cell.f_measure.to_string(),
                &cell.accuracy.to_string(),
                &cell.features.join(";"),
            ])?;
        }
        w.flush().map_err(|e| Error::Io(e))?;
        Ok(())
    }

    /// Bar-chart data: one `category,value` pair per cell, grouped by
    /// selector with the classifier appended.
    pub fn write_chart_csv(&self, path: impl AsRef<std::path::Path>) -> Result<()> {
        let mut w = csv::Writer::from_path(path)?;
        w.write_record(["category", "f_measure"])?;
        for cell in &self.cells {
            w.write_record([
                &format!("{}/{}", cell.selector, cell.classifier),
                &cell.f_measure.to_string(),
            ])?;
        }
        w.flush().map_err(|e| Error::Io(e))?;
        Ok(())
    }
}
