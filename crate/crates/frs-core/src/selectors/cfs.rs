//! Correlation-based feature subset selection: reward label correlation,
//! penalize redundancy among the chosen features.

use std::collections::{BinaryHeap, BTreeSet};

use crate::dataset::NormalizedDataset;
use crate::error::{Error, Result};
use crate::par;
use crate::reduct::Reduct;

use super::{feature_categories, symmetrical_uncertainty, DEFAULT_BINS};

/// Expansions without a better subset before the search gives up.
const STALL_LIMIT: usize = 5;

/// merit(S) = k·r̄cf / sqrt(k + k(k−1)·r̄ff), where r̄cf is the mean
/// feature-label correlation over S and r̄ff the mean pairwise correlation.
fn merit(subset: &[usize], su_label: &[f64], su_pair: &[Vec<f64>]) -> f64 {
    let k = subset.len();
    if k == 0 {
        return 0.0;
    }
    let label_sum: f64 = subset.iter().map(|&f| su_label[f]).sum();
    let mut pair_sum = 0.0;
    for (a, &f) in subset.iter().enumerate() {
        for &g in &subset[a + 1..] {
            pair_sum += su_pair[f][g];
        }
    }
    let kf = k as f64;
    let mean_cf = label_sum / kf;
    let mean_ff = if k > 1 { pair_sum / (kf * (kf - 1.0) / 2.0) } else { 0.0 };
    kf * mean_cf / (kf + kf * (kf - 1.0) * mean_ff).sqrt()
}

struct Open {
    merit: f64,
    seq: usize,
    subset: Vec<usize>,
}

impl PartialEq for Open {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == std::cmp::Ordering::Equal
    }
}
impl Eq for Open {}
impl PartialOrd for Open {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Open {
    // highest merit first; among equals, earliest insertion first
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.merit.total_cmp(&other.merit).then(other.seq.cmp(&self.seq))
    }
}

/// Best-first forward search over feature subsets, stopping after
/// [`STALL_LIMIT`] consecutive expansions that fail to improve the best
/// merit seen.
pub fn cfs_select(ds: &NormalizedDataset) -> Result<Reduct> {
    let d = ds.n_features();
    if d < 2 {
        return Err(Error::NotEnoughFeatures { needed: 2, got: d });
    }
    if ds.n_classes() < 2 {
        return Err(Error::DegenerateLabels);
    }

    let cats: Vec<Vec<usize>> = (0..d)
        .map(|f| feature_categories(ds, f, DEFAULT_BINS))
        .collect::<Result<_>>()?;
    let su_label: Vec<f64> =
        par::map_collect(d, |f| symmetrical_uncertainty(&cats[f], &ds.label_codes));
    let upper: Vec<Vec<f64>> = par::map_collect(d, |f| {
        (f + 1..d).map(|g| symmetrical_uncertainty(&cats[f], &cats[g])).collect()
    });
    let mut su_pair = vec![vec![0.0; d]; d];
    for f in 0..d {
        for g in f + 1..d {
            su_pair[f][g] = upper[f][g - f - 1];
            su_pair[g][f] = upper[f][g - f - 1];
        }
    }

    let mut best: Vec<usize> = Vec::new();
    let mut best_merit = 0.0;
    let mut seq = 0;
    let mut open = BinaryHeap::new();
    let mut visited = BTreeSet::new();
    open.push(Open { merit: 0.0, seq, subset: Vec::new() });
    visited.insert(Vec::new());

    let mut stall = 0;
    while stall < STALL_LIMIT {
        let Some(node) = open.pop() else { break };
        let mut improved = false;
        for f in 0..d {
            if node.subset.contains(&f) {
                continue;
            }
            let mut child = node.subset.clone();
            child.push(f);
            child.sort_unstable();
            if !visited.insert(child.clone()) {
                continue;
            }
            let m = merit(&child, &su_label, &su_pair);
            if m > best_merit {
                best_merit = m;
                best = child.clone();
                improved = true;
            }
            seq += 1;
            open.push(Open { merit: m, seq, subset: child });
        }
        if improved {
            stall = 0;
        } else {
            stall += 1;
        }
    }

    let selected = best.into_iter().map(|f| ds.features[f].name.clone()).collect();
    Ok(Reduct {
        dataset: ds.name.clone(),
        mode: "cfs".into(),
        selected,
        gamma: None,
        gamma_full: None,
        trace: Vec::new(),
        scores: None,
    })
}
