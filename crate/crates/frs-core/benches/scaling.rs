//! Scaling benchmarks for the pairwise-similarity core, the greedy search,
//! and classifier training, including a thread sweep over explicit rayon
//! pools. With the `parallel` feature off the sweep shows the sequential
//! fallback staying flat.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use frs_core::classifiers::{self, ClassifierSpec};
use frs_core::dataset::{normalize, Dataset, Feature, FeatureClass, FeatureKind, NormalizedDataset};
use frs_core::fuzzy::{lower_memberships, relation_matrix};
use frs_core::reduct::{quickreduct, EPSILON};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::hint::black_box;

fn synthetic(n: usize, d: usize, seed: u64) -> NormalizedDataset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let features = (0..d)
        .map(|i| Feature {
            name: format!("f{i}"),
            kind: FeatureKind::Continuous,
            class: FeatureClass::Unknown,
            observed_min: 0.0,
            observed_max: 1.0,
        })
        .collect();
    let columns = (0..d).map(|_| (0..n).map(|_| rng.random()).collect()).collect();
    let labels = (0..n).map(|_| format!("c{}", rng.random_range(0..2))).collect();
    normalize(&Dataset::new("bench", features, columns, labels, "label").unwrap()).unwrap()
}

fn approximation(c: &mut Criterion) {
    let mut group = c.benchmark_group("approximation");
    for n in [64usize, 128, 256] {
        let ds = synthetic(n, 10, 7);
        let subset: Vec<usize> = (0..10).collect();
        group.bench_with_input(BenchmarkId::new("relation_matrix", n), &n, |b, _| {
            b.iter(|| relation_matrix(black_box(&ds), black_box(&subset)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("lower_memberships", n), &n, |b, _| {
            b.iter(|| lower_memberships(black_box(&ds), black_box(&subset)).unwrap())
        });
    }
    group.finish();
}

fn search(c: &mut Criterion) {
    let mut group = c.benchmark_group("search");
    group.sample_size(20);
    for (n, d) in [(64usize, 12usize), (128, 16)] {
        let ds = synthetic(n, d, 11);
        group.bench_with_input(
            BenchmarkId::new("quickreduct", format!("{n}x{d}")),
            &n,
            |b, _| b.iter(|| quickreduct(black_box(&ds), EPSILON).unwrap()),
        );
    }
    group.finish();
}

fn training(c: &mut Criterion) {
    let mut group = c.benchmark_group("training");
    group.sample_size(20);
    let ds = synthetic(256, 12, 13);
    let names: Vec<String> = ds.features.iter().map(|f| f.name.clone()).collect();
    for spec in [
        ClassifierSpec::random_forest(0),
        ClassifierSpec::mlp(0),
        ClassifierSpec::smo(0),
    ] {
        group.bench_function(spec.kind_name(), |b| {
            b.iter(|| classifiers::train(black_box(&spec), black_box(&ds), black_box(&names)).unwrap())
        });
    }
    group.finish();
}

fn thread_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("threads");
    group.sample_size(20);
    let ds = synthetic(256, 10, 17);
    let subset: Vec<usize> = (0..10).collect();
    for threads in [1usize, 2, 4, 8] {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        group.bench_with_input(
            BenchmarkId::new("lower_memberships", threads),
            &threads,
            |b, _| {
                b.iter(|| {
                    pool.install(|| lower_memberships(black_box(&ds), black_box(&subset)).unwrap())
                })
            },
        );
    }
    group.finish();
}

criterion_group!(benches, approximation, search, training, thread_sweep);
criterion_main!(benches);
