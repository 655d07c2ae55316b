//! Shared fixtures and an independent brute-force evaluation of the
//! membership definitions, kept free of any library internals so the two
//! implementations can check each other.

#![allow(dead_code)]

use frs_core::dataset::{normalize, Dataset, Feature, FeatureClass, FeatureKind};
use frs_core::dataset::NormalizedDataset;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const TOL: f64 = 1e-12;

pub fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= TOL
}

/// Wrap unit-scaled columns and string labels into a normalized table
/// without rescaling the values.
pub fn build(name: &str, values: Vec<Vec<f64>>, labels: Vec<String>) -> NormalizedDataset {
    let features = (0..values.len())
        .map(|i| Feature {
            name: format!("f{i}"),
            kind: FeatureKind::Continuous,
            class: FeatureClass::Unknown,
            observed_min: 0.0,
            observed_max: 1.0,
        })
        .collect();
    let coded = normalize(
        &Dataset::new(name, features, values.clone(), labels, "label").unwrap(),
    )
    .unwrap();
    NormalizedDataset { columns: values, ..coded }
}

/// Three samples over one feature, the worked example: values 0, 1, 1/2
/// with labels a, b, a.
pub fn hand_fixture() -> NormalizedDataset {
    build(
        "hand",
        vec![vec![0.0, 1.0, 0.5]],
        vec!["a".into(), "b".into(), "a".into()],
    )
}

fn t_norm(a: f64, b: f64) -> f64 {
    (a + b - 1.0).max(0.0)
}

fn implication(q: f64, s: f64) -> f64 {
    (1.0 - q + s).min(1.0)
}

fn sim(a: f64, b: f64) -> f64 {
    (1.0 - (a - b) * (a - b)).max(0.0)
}

/// Definition-level membership degrees: for each sample, the infimum of
/// implications (lower) and supremum of conjunctions (upper) against every
/// other sample, with the feature-side relation built by folding pairwise
/// conjunctions rather than any closed form.
pub fn oracle_memberships(ds: &NormalizedDataset, subset: &[usize]) -> (Vec<f64>, Vec<f64>) {
    let n = ds.n_samples();
    let relation = |i: usize, j: usize| {
        let mut acc = 1.0;
        for &f in subset {
            acc = t_norm(acc, sim(ds.columns[f][i], ds.columns[f][j]));
        }
        acc
    };
    let mut lower = Vec::with_capacity(n);
    let mut upper = Vec::with_capacity(n);
    for m in 0..n {
        let mut inf = 1.0f64;
        let mut sup = 0.0f64;
        for other in 0..n {
            if other == m {
                continue;
            }
            let r_f = relation(m, other);
            let r_l = sim(ds.label_scaled[m], ds.label_scaled[other]);
            inf = inf.min(implication(r_f, r_l));
            sup = sup.max(t_norm(r_f, r_l));
        }
        lower.push(inf);
        upper.push(sup);
    }
    (lower, upper)
}

pub fn oracle_gamma(ds: &NormalizedDataset, subset: &[usize]) -> f64 {
    let (lower, _) = oracle_memberships(ds, subset);
    lower.iter().sum::<f64>() / lower.len() as f64
}

/// Random unit-scaled table: up to `max_n` samples, up to `max_d` features,
/// two to four classes with the first two classes always present.
pub fn random_dataset(rng: &mut ChaCha8Rng, max_n: usize, max_d: usize) -> NormalizedDataset {
    let n = rng.random_range(2..=max_n.max(2));
    let d = rng.random_range(1..=max_d.max(1));
    let classes = rng.random_range(2..=4usize.min(n));
    let values = (0..d)
        .map(|_| (0..n).map(|_| rng.random::<f64>()).collect())
        .collect();
    let labels = (0..n)
        .map(|i| {
            let c = if i < 2 { i } else { rng.random_range(0..classes) };
            format!("c{c}")
        })
        .collect();
    build("random", values, labels)
}

/// Two well-separated clusters: every feature of one class falls in
/// [0, 1/4] and of the other in [3/4, 1], so the class gap is at least 1/2
/// on every axis. Rows alternate classes.
pub fn margin_synthetic(n_per_class: usize, d: usize, seed: u64) -> NormalizedDataset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = 2 * n_per_class;
    let mut values: Vec<Vec<f64>> = vec![Vec::with_capacity(n); d];
    let mut labels = Vec::with_capacity(n);
    for i in 0..n {
        let phish = i % 2 == 0;
        for col in values.iter_mut() {
            let v: f64 = rng.random::<f64>() * 0.25;
            col.push(if phish { v } else { 1.0 - v });
        }
        labels.push(if phish { "-1".to_string() } else { "1".to_string() });
    }
    build("margin", values, labels)
}
