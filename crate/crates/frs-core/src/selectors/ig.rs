//! Information-gain ranking: how much each feature alone reduces label
//! entropy.

use serde::{Deserialize, Serialize};

use crate::dataset::NormalizedDataset;
use crate::error::{Error, Result};
use crate::par;
use crate::reduct::{FeatureScore, Reduct};

use super::{conditional_entropy, entropy, feature_categories};

/// Features ordered by descending score; ties keep dataset feature order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankedFeatures {
    pub method: String,
    pub ranking: Vec<FeatureScore>,
}

/// Score every feature by H(label) − H(label | feature), continuous values
/// first discretized into `bins` equal-width bins.
pub fn info_gain_rank(ds: &NormalizedDataset, bins: usize) -> Result<RankedFeatures> {
    if bins == 0 {
        return Err(Error::BadBinCount { got: 0 });
    }
    if ds.n_classes() < 2 {
        return Err(Error::DegenerateLabels);
    }
    let h_label = entropy(&ds.label_codes);
    let scores: Vec<f64> = par::map_collect(ds.n_features(), |f| {
        let cats = feature_categories(ds, f, bins).expect("bins checked");
        h_label - conditional_entropy(&cats, &ds.label_codes)
    });

    let mut order: Vec<usize> = (0..ds.n_features()).collect();
    order.sort_by(|&a, &b| scores[b].partial_cmp(&scores[a]).expect("entropy is finite"));
    let ranking = order
        .into_iter()
        .map(|f| FeatureScore { feature: ds.features[f].name.clone(), score: scores[f] })
        .collect();
    Ok(RankedFeatures { method: "ig".into(), ranking })
}

/// Rank by information gain, then keep the features scoring strictly above
/// the mean score.
pub fn ig_select(ds: &NormalizedDataset, bins: usize) -> Result<Reduct> {
    let ranked = info_gain_rank(ds, bins)?;
    let mean = ranked.ranking.iter().map(|s| s.score).sum::<f64>() / ranked.ranking.len() as f64;
    let selected = ranked
        .ranking
        .iter()
        .take_while(|s| s.score > mean)
        .map(|s| s.feature.clone())
        .collect();
    Ok(Reduct {
        dataset: ds.name.clone(),
        mode: "ig".into(),
        selected,
        gamma: None,
        gamma_full: None,
        trace: Vec::new(),
        scores: Some(ranked.ranking),
    })
}
