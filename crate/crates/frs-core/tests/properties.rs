//! Randomized invariants for the fuzzy operators, approximation machinery,
//! search, folds, and serialization, cross-checked against the brute-force
//! evaluation in `common`.

mod common;

use common::{close, oracle_memberships, random_dataset, TOL};
use frs_core::dataset::{load_csv, normalize, write_csv, SchemaHints};
use frs_core::eval::{fold_complement, stratified_folds, ConfusionCounts};
use frs_core::fuzzy::{
    implicator, label_relation_matrix, memberships, relation_matrix, similarity, t_norm,
    t_norm_fold, t_norm_fold_closed,
};
use frs_core::reduct::{dependency_degree, exhaustive_reduct, quickreduct, EPSILON};
use proptest::collection::vec as pvec;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn unit() -> impl Strategy<Value = f64> {
    (0..=1_000_000u32).prop_map(|v| v as f64 / 1_000_000.0)
}

proptest! {
    #[test]
    fn t_norm_is_commutative_monotone_and_has_identity(a in unit(), b in unit(), c in unit()) {
        let ab = t_norm(a, b).unwrap();
        prop_assert_eq!(ab, t_norm(b, a).unwrap());
        prop_assert!((0.0..=1.0).contains(&ab));
        prop_assert!(close(t_norm(a, 1.0).unwrap(), a));
        prop_assert_eq!(t_norm(a, 0.0).unwrap(), 0.0);
        if b <= c {
            prop_assert!(ab <= t_norm(a, c).unwrap());
        }
    }

    #[test]
    fn t_norm_is_associative_up_to_rounding(a in unit(), b in unit(), c in unit()) {
        let left = t_norm(t_norm(a, b).unwrap(), c).unwrap();
        let right = t_norm(a, t_norm(b, c).unwrap()).unwrap();
        prop_assert!(close(left, right), "{left} vs {right}");
    }

    #[test]
    fn implicator_bounds_and_monotonicity(q in unit(), s in unit(), t in unit()) {
        let i = implicator(q, s).unwrap();
        prop_assert!((0.0..=1.0).contains(&i));
        prop_assert_eq!(implicator(0.0, s).unwrap(), 1.0);
        prop_assert_eq!(implicator(q, 1.0).unwrap(), 1.0);
        prop_assert_eq!(implicator(1.0, s).unwrap(), s);
        if t >= q {
            // antitone in the premise, monotone in the consequent
            prop_assert!(implicator(t, s).unwrap() <= i);
            prop_assert!(implicator(q, t.max(s)).unwrap() >= i);
        }
    }

    #[test]
    fn fold_matches_its_closed_form(values in pvec(unit(), 1..12)) {
        let folded = t_norm_fold(&values).unwrap();
        let closed = t_norm_fold_closed(&values).unwrap();
        prop_assert!(close(folded, closed), "{folded} vs {closed}");
    }

    #[test]
    fn similarity_is_a_symmetric_unit_kernel(a in unit(), b in unit()) {
        let s = similarity(a, b).unwrap();
        prop_assert_eq!(s, similarity(b, a).unwrap());
        prop_assert!((0.0..=1.0).contains(&s));
        prop_assert_eq!(similarity(a, a).unwrap(), 1.0);
    }

    #[test]
    fn relation_matrix_matches_the_pairwise_fold(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ds = random_dataset(&mut rng, 16, 5);
        let subset: Vec<usize> = (0..ds.n_features()).collect();
        let r = relation_matrix(&ds, &subset).unwrap();
        for i in 0..ds.n_samples() {
            prop_assert_eq!(r.get(i, i), 1.0);
            for j in 0..ds.n_samples() {
                prop_assert_eq!(r.get(i, j), r.get(j, i));
                prop_assert!((0.0..=1.0).contains(&r.get(i, j)));
                let mut acc = 1.0f64;
                for &f in &subset {
                    let d = ds.columns[f][i] - ds.columns[f][j];
                    acc = (acc + (1.0 - d * d).max(0.0) - 1.0).max(0.0);
                }
                prop_assert!(close(r.get(i, j), acc));
            }
        }
    }

    #[test]
    fn memberships_match_the_brute_force_oracle(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ds = random_dataset(&mut rng, 20, 6);
        let subset: Vec<usize> = (0..ds.n_features()).collect();
        let m = memberships(&relation_matrix(&ds, &subset).unwrap(), &label_relation_matrix(&ds)).unwrap();
        let (lower, upper) = oracle_memberships(&ds, &subset);
        for i in 0..ds.n_samples() {
            prop_assert!(close(m.lower[i], lower[i]), "lower[{}]: {} vs {}", i, m.lower[i], lower[i]);
            prop_assert!(close(m.upper[i], upper[i]), "upper[{}]: {} vs {}", i, m.upper[i], upper[i]);
            prop_assert!((0.0..=1.0).contains(&m.lower[i]));
            prop_assert!((0.0..=1.0).contains(&m.upper[i]));
        }
    }

    #[test]
    fn growing_the_subset_never_loosens_the_approximation(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ds = random_dataset(&mut rng, 18, 6);
        let d = ds.n_features();
        let small: Vec<usize> = (0..d).step_by(2).collect();
        let full: Vec<usize> = (0..d).collect();
        let m_small = memberships(&relation_matrix(&ds, &small).unwrap(), &label_relation_matrix(&ds)).unwrap();
        let m_full = memberships(&relation_matrix(&ds, &full).unwrap(), &label_relation_matrix(&ds)).unwrap();
        for i in 0..ds.n_samples() {
            prop_assert!(m_full.lower[i] >= m_small.lower[i] - TOL);
            prop_assert!(m_full.upper[i] <= m_small.upper[i] + TOL);
        }
        prop_assert!(
            dependency_degree(&ds, &full).unwrap() >= dependency_degree(&ds, &small).unwrap() - TOL
        );
    }

    #[test]
    fn memberships_commute_with_sample_permutation(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ds = random_dataset(&mut rng, 14, 4);
        let n = ds.n_samples();
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng);
        let values: Vec<Vec<f64>> = ds
            .columns
            .iter()
            .map(|col| perm.iter().map(|&i| col[i]).collect())
            .collect();
        let labels: Vec<String> = perm.iter().map(|&i| ds.label_values[ds.label_codes[i]].clone()).collect();
        let permuted = common::build("permuted", values, labels);

        let subset: Vec<usize> = (0..ds.n_features()).collect();
        let m = memberships(&relation_matrix(&ds, &subset).unwrap(), &label_relation_matrix(&ds)).unwrap();
        let mp = memberships(&relation_matrix(&permuted, &subset).unwrap(), &label_relation_matrix(&permuted)).unwrap();
        for (new_pos, &old) in perm.iter().enumerate() {
            prop_assert_eq!(m.lower[old], mp.lower[new_pos]);
            prop_assert_eq!(m.upper[old], mp.upper[new_pos]);
        }
    }

    #[test]
    fn normalization_is_idempotent_on_random_tables(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ds = random_dataset(&mut rng, 12, 4);
        let once = normalize(&ds.to_dataset()).unwrap();
        let twice = normalize(&once.to_dataset()).unwrap();
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn csv_round_trip_preserves_every_value(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ds = random_dataset(&mut rng, 10, 3).to_dataset();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("round.csv");
        write_csv(&ds, &path).unwrap();
        let back = load_csv(&path, "label", &SchemaHints::none()).unwrap();
        prop_assert_eq!(&back.columns, &ds.columns);
        prop_assert_eq!(&back.labels, &ds.labels);
        prop_assert_eq!(
            back.features.iter().map(|f| f.name.as_str()).collect::<Vec<_>>(),
            ds.features.iter().map(|f| f.name.as_str()).collect::<Vec<_>>()
        );
    }

    #[test]
    fn exhaustive_search_never_beats_greedy_on_size_only(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ds = random_dataset(&mut rng, 10, 5);
        let greedy = quickreduct(&ds, EPSILON).unwrap();
        let exhaustive = exhaustive_reduct(&ds, ds.n_features(), EPSILON).unwrap();
        prop_assert!(exhaustive.selected.len() <= greedy.selected.len());
        let full = dependency_degree(&ds, &(0..ds.n_features()).collect::<Vec<_>>()).unwrap();
        for r in [&greedy, &exhaustive] {
            let idx: Vec<usize> = r.selected.iter().map(|n| ds.feature_index(n).unwrap()).collect();
            prop_assert!(dependency_degree(&ds, &idx).unwrap() >= full - EPSILON - TOL);
        }
    }

    #[test]
    fn confusion_metrics_satisfy_their_definitions(tp in 0u32..40, fp in 0u32..40, tn in 0u32..40, fn_ in 0u32..40) {
        let mut c = ConfusionCounts::default();
        for _ in 0..tp { c.record(true, true); }
        for _ in 0..fp { c.record(false, true); }
        for _ in 0..tn { c.record(false, false); }
        for _ in 0..fn_ { c.record(true, false); }
        prop_assert_eq!(c.total(), (tp + fp + tn + fn_) as usize);

        let (p, r) = (c.precision(), c.recall());
        if p + r > 0.0 {
            prop_assert!(close(c.f_measure(), 2.0 * p * r / (p + r)));
        } else {
            prop_assert_eq!(c.f_measure(), 0.0);
        }
        if c.total() > 0 {
            prop_assert!(close(c.accuracy(), (tp + tn) as f64 / c.total() as f64));
        }
        let s = c.swapped();
        prop_assert_eq!(s.tp, c.tn);
        prop_assert_eq!(s.fp, c.fn_);
        prop_assert_eq!(s.swapped(), c);
    }

    #[test]
    fn folds_partition_and_stratify(seed in any::<u64>(), k in 2usize..6, per_class in 3usize..9) {
        let labels: Vec<usize> = (0..3 * per_class).map(|i| i % 3).collect();
        prop_assume!(k <= labels.len());
        let folds = stratified_folds(&labels, k, seed).unwrap();
        prop_assert_eq!(folds.len(), k);
        prop_assert_eq!(&stratified_folds(&labels, k, seed).unwrap(), &folds);

        let mut seen = vec![false; labels.len()];
        for fold in &folds {
            prop_assert!(fold.windows(2).all(|w| w[0] < w[1]));
            for &i in fold {
                prop_assert!(!seen[i]);
                seen[i] = true;
            }
            for class in 0..3 {
                let got = fold.iter().filter(|&&i| labels[i] == class).count();
                prop_assert!(got >= per_class / k && got <= per_class.div_ceil(k));
            }
            let rest = fold_complement(labels.len(), fold);
            prop_assert_eq!(rest.len() + fold.len(), labels.len());
            prop_assert!(rest.iter().all(|i| !fold.contains(i)));
        }
        prop_assert!(seen.iter().all(|&s| s));
    }
}
