//! Dependency-degree scoring and reduct search.
//!
//! The dependency degree of a feature subset is the mean lower membership
//! over all samples. A reduct is a subset whose degree reaches the full
//! set's, within [`EPSILON`]. Greedy search adds the best feature per step
//! until it gets there; exhaustive search proves minimality on small
//! universes.

use serde::{Deserialize, Serialize};

use crate::dataset::NormalizedDataset;
use crate::error::{Error, Result};
use crate::fuzzy::{implicator_raw, lower_memberships, similarity_raw};
use crate::par;

/// Tolerance for degree comparisons and the positive-sample cutoff.
pub const EPSILON: f64 = 1e-9;

/// Feature-count cap for the exhaustive search (2^d subsets).
pub const EXHAUSTIVE_CAP: usize = 14;

/// One greedy step: the feature added and the degree after adding it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceStep {
    pub feature: String,
    pub gamma: f64,
}

/// Per-feature score attached to ranking selectors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureScore {
    pub feature: String,
    pub score: f64,
}

/// A selected feature subset with its provenance.
///
/// Search modes fill every field; externally transcribed subsets may carry
/// only `dataset`, `mode` and `selected`, so the rest parse leniently.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Reduct {
    pub dataset: String,
    pub mode: String,
    pub selected: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma_full: Option<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub trace: Vec<TraceStep>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scores: Option<Vec<FeatureScore>>,
}

impl Reduct {
    pub fn save(&self, path: impl AsRef<std::path::Path>) -> Result<()> {
        let mut json = serde_json::to_string_pretty(self)?;
        json.push('\n');
        std::fs::write(path, json)?;
        Ok(())
    }

    pub fn load(path: impl AsRef<std::path::Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Ok(serde_json::from_str(&text)?)
    }
}

/// Mean lower membership of `subset`, in [0,1]. Summation is sequential in
/// sample order, so the value is independent of thread count.
pub fn dependency_degree(ds: &NormalizedDataset, subset: &[usize]) -> Result<f64> {
    let lower = lower_memberships(ds, subset)?;
    Ok(mean(&lower))
}

/// Samples whose lower membership exceeds `epsilon`, ascending.
pub fn positive_samples(
    ds: &NormalizedDataset,
    subset: &[usize],
    epsilon: f64,
) -> Result<Vec<usize>> {
    let lower = lower_memberships(ds, subset)?;
    Ok((0..lower.len()).filter(|&i| lower[i] > epsilon).collect())
}

fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

fn validate_search_input(ds: &NormalizedDataset) -> Result<()> {
    if ds.n_classes() < 2 {
        return Err(Error::DegenerateLabels);
    }
    for col in &ds.columns {
        for &v in col {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::OutOfRange { value: v });
            }
        }
    }
    Ok(())
}

/// Lower memberships with the empty subset allowed: with no features every
/// pair is fully similar, which the closed form yields on its own.
fn lower_any(ds: &NormalizedDataset, subset: &[usize]) -> Vec<f64> {
    let n = ds.n_samples();
    let k1 = subset.len() as f64 - 1.0;
    par::map_collect(n, |m| {
        let mut acc = 1.0f64;
        for other in 0..n {
            if ds.label_codes[other] == ds.label_codes[m] {
                continue;
            }
            let mut sum = 0.0;
            for &f in subset {
                sum += similarity_raw(ds.columns[f][m], ds.columns[f][other]);
            }
            let r_f = (sum - k1).max(0.0);
            let r_l = similarity_raw(ds.label_scaled[m], ds.label_scaled[other]);
            acc = acc.min(implicator_raw(r_f, r_l));
        }
        acc
    })
}

fn gamma_any(ds: &NormalizedDataset, subset: &[usize]) -> f64 {
    mean(&lower_any(ds, subset))
}

/// Degree of `base + [candidate]` for every candidate at once, sharing the
/// base subset's per-pair similarity sums. Candidate `c`'s value is
/// bit-identical to `dependency_degree` over `base` then `c`.
fn step_gammas(ds: &NormalizedDataset, base: &[usize], candidates: &[usize]) -> Vec<f64> {
    let n = ds.n_samples();
    let k1 = base.len() as f64;
    let per_sample: Vec<Vec<f64>> = par::map_collect(n, |m| {
        let mut acc = vec![1.0f64; candidates.len()];
        for other in 0..n {
            if ds.label_codes[other] == ds.label_codes[m] {
                continue;
            }
            let mut base_sum = 0.0;
            for &f in base {
                base_sum += similarity_raw(ds.columns[f][m], ds.columns[f][other]);
            }
            let r_l = similarity_raw(ds.label_scaled[m], ds.label_scaled[other]);
            for (slot, &c) in acc.iter_mut().zip(candidates) {
                let sum = base_sum + similarity_raw(ds.columns[c][m], ds.columns[c][other]);
                let r_f = (sum - k1).max(0.0);
                *slot = slot.min(implicator_raw(r_f, r_l));
            }
        }
        acc
    });
    (0..candidates.len())
        .map(|ci| per_sample.iter().map(|row| row[ci]).sum::<f64>() / n as f64)
        .collect()
}

/// Greedy forward search. Starting empty, each step adds the not-yet-chosen
/// feature with the highest resulting degree (first in dataset order on
/// ties) until the degree reaches the full set's within `epsilon`. Runs at
/// most one step per feature, so it always terminates and reaches the full
/// degree even when single-feature gains are all zero.
pub fn quickreduct(ds: &NormalizedDataset, epsilon: f64) -> Result<Reduct> {
    validate_search_input(ds)?;
    let d = ds.n_features();
    if d == 0 {
        return Err(Error::EmptySubset);
    }
    let all: Vec<usize> = (0..d).collect();
    let gamma_full = gamma_any(ds, &all);

    let mut chosen: Vec<usize> = Vec::new();
    let mut gamma = gamma_any(ds, &chosen);
    let mut trace = Vec::new();
    while gamma < gamma_full - epsilon && chosen.len() < d {
        let candidates: Vec<usize> = (0..d).filter(|f| !chosen.contains(f)).collect();
        let gammas = step_gammas(ds, &chosen, &candidates);
        let best = gammas
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.partial_cmp(b.1).unwrap().then(b.0.cmp(&a.0)))
            .map(|(i, _)| i)
            .expect("candidates nonempty");
        chosen.push(candidates[best]);
        gamma = gammas[best];
        trace.push(TraceStep { feature: ds.features[candidates[best]].name.clone(), gamma });
    }

    Ok(Reduct {
        dataset: ds.name.clone(),
        mode: "quickreduct".into(),
        selected: chosen.iter().map(|&f| ds.features[f].name.clone()).collect(),
        gamma: Some(gamma),
        gamma_full: Some(gamma_full),
        trace,
        scores: None,
    })
}

/// Features whose removal from the full set shrinks the positive region
/// (samples with lower membership above `epsilon`): the part of every
/// reduct. Returned in dataset order.
pub fn core_features(ds: &NormalizedDataset, epsilon: f64) -> Result<Vec<String>> {
    validate_search_input(ds)?;
    let d = ds.n_features();
    if d == 0 {
        return Err(Error::EmptySubset);
    }
    let all: Vec<usize> = (0..d).collect();
    let full_positive = lower_any(ds, &all).iter().filter(|&&v| v > epsilon).count();
    let drops: Vec<bool> = (0..d)
        .map(|f| {
            let without: Vec<usize> = (0..d).filter(|&g| g != f).collect();
            let positive = lower_any(ds, &without).iter().filter(|&&v| v > epsilon).count();
            positive < full_positive
        })
        .collect();
    Ok((0..d).filter(|&f| drops[f]).map(|f| ds.features[f].name.clone()).collect())
}

/// Smallest subset reaching the full degree, by brute force over all
/// subsets in cardinality order (lexicographic inside a cardinality).
/// `max_features` bounds the universe and is itself capped at
/// [`EXHAUSTIVE_CAP`].
pub fn exhaustive_reduct(
    ds: &NormalizedDataset,
    max_features: usize,
    epsilon: f64,
) -> Result<Reduct> {
    validate_search_input(ds)?;
    let d = ds.n_features();
    if d == 0 {
        return Err(Error::EmptySubset);
    }
    let cap = max_features.min(EXHAUSTIVE_CAP);
    if d > cap {
        return Err(Error::TooManyFeatures { got: d, cap });
    }
    let all: Vec<usize> = (0..d).collect();
    let gamma_full = gamma_any(ds, &all);

    for size in 1..=d {
        let masks = masks_of_size(d, size);
        let subsets: Vec<Vec<usize>> =
            masks.iter().map(|&m| (0..d).filter(|f| m >> f & 1 == 1).collect()).collect();
        let gammas = par::map_slice(&subsets, |s| gamma_any(ds, s));
        if let Some(hit) = gammas.iter().position(|&g| g >= gamma_full - epsilon) {
            let subset = &subsets[hit];
            return Ok(Reduct {
                dataset: ds.name.clone(),
                mode: "exhaustive".into(),
                selected: subset.iter().map(|&f| ds.features[f].name.clone()).collect(),
                gamma: Some(gammas[hit]),
                gamma_full: Some(gamma_full),
                trace: Vec::new(),
                scores: None,
            });
        }
    }
    unreachable!("the full set reaches its own degree");
}

/// Bitmasks over `d` features with exactly `size` bits, ordered so the
/// subsets they encode are lexicographic on ascending feature indices.
fn masks_of_size(d: usize, size: usize) -> Vec<u32> {
    if size == 0 {
        return vec![0];
    }
    let mut out = Vec::new();
    let mut indices: Vec<usize> = (0..size).collect();
    loop {
        out.push(indices.iter().fold(0u32, |m, &i| m | 1 << i));
        // advance the combination, rightmost position first
        let mut pos = size;
        while pos > 0 {
            pos -= 1;
            if indices[pos] < d - (size - pos) {
                indices[pos] += 1;
                for later in pos + 1..size {
                    indices[later] = indices[later - 1] + 1;
                }
                break;
            }
            if pos == 0 {
                return out;
            }
        }
    }
}
