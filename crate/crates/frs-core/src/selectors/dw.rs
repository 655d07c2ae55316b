//! Tree-importance ranking followed by wrapper backward elimination.

use crate::classifiers::{self, ClassifierSpec};
use crate::dataset::NormalizedDataset;
use crate::error::{Error, Result};
use crate::eval::{fold_complement, stratified_folds};
use crate::par;
use crate::reduct::{FeatureScore, Reduct};

/// Folds used by the wrapper's internal cross-validation.
pub const DW_FOLDS: usize = 3;

/// Rank features by total impurity decrease in a single full-depth decision
/// tree, then drop the lowest-ranked feature while cross-validated accuracy
/// of `evaluator` falls by less than `delta`. Elimination stops at the first
/// unacceptable drop; `delta <= 0` tolerates no drop at all, so the full
/// set survives. The result is never empty.
pub fn dw_select(
    ds: &NormalizedDataset,
    evaluator: &ClassifierSpec,
    delta: f64,
    seed: u64,
) -> Result<Reduct> {
    if ds.n_classes() < 2 {
        return Err(Error::DegenerateLabels);
    }
    if ds.n_features() == 0 {
        return Err(Error::EmptySubset);
    }

    let importance =
        classifiers::tree_importance(&ds.columns, &ds.label_codes, ds.n_classes());
    let mut ranked: Vec<usize> = (0..ds.n_features()).collect();
    ranked.sort_by(|&a, &b| {
        importance[b].partial_cmp(&importance[a]).expect("gini decrease is finite")
    });
    let scores = ranked
        .iter()
        .map(|&f| FeatureScore { feature: ds.features[f].name.clone(), score: importance[f] })
        .collect();

    let folds = stratified_folds(&ds.label_codes, DW_FOLDS, seed)?;
    let mut current = ranked;
    if delta > 0.0 {
        let mut acc = cv_accuracy(ds, evaluator, &current, &folds)?;
        while current.len() > 1 {
            let candidate = &current[..current.len() - 1];
            let next = cv_accuracy(ds, evaluator, candidate, &folds)?;
            if acc - next >= delta {
                break;
            }
            current.pop();
            acc = next;
        }
    }

    let selected = current.into_iter().map(|f| ds.features[f].name.clone()).collect();
    Ok(Reduct {
        dataset: ds.name.clone(),
        mode: "dw".into(),
        selected,
        gamma: None,
        gamma_full: None,
        trace: Vec::new(),
        scores: Some(scores),
    })
}

/// Pooled accuracy of `evaluator` over the given folds, using only the
/// features in `subset`.
fn cv_accuracy(
    ds: &NormalizedDataset,
    evaluator: &ClassifierSpec,
    subset: &[usize],
    folds: &[Vec<usize>],
) -> Result<f64> {
    let names: Vec<String> = subset.iter().map(|&f| ds.features[f].name.clone()).collect();
    let per_fold = par::map_slice(folds, |fold| -> Result<usize> {
        let train_rows = fold_complement(ds.n_samples(), fold);
        let model = classifiers::train(evaluator, &ds.restrict_rows(&train_rows), &names)?;
        let mut correct = 0;
        for &i in fold {
            let row = ds.row_subset(i, subset);
            if model.predict(&row)? == ds.label_values[ds.label_codes[i]] {
                correct += 1;
            }
        }
        Ok(correct)
    });
    let mut correct = 0;
    for fold in per_fold {
        correct += fold?;
    }
    Ok(correct as f64 / ds.n_samples() as f64)
}
