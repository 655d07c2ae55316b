//! Deterministic stratified fold assignment for cross-validation.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Split sample indices into `k` folds with near-equal class proportions.
///
/// Samples are grouped by label code, each group is shuffled by a rng seeded
/// only from `seed`, and the shuffled groups are dealt round-robin across
/// folds with the dealing position carried from group to group so fold sizes
/// stay balanced. The result is a pure function of (labels, k, seed); every
/// fold is non-empty and sorted.
pub fn stratified_folds(labels: &[usize], k: usize, seed: u64) -> Result<Vec<Vec<usize>>> {
    let n = labels.len();
    if k < 2 || k > n {
        return Err(Error::BadFoldCount { got: k, n });
    }
    let n_classes = labels.iter().max().map_or(0, |&m| m + 1);
    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); n_classes];
    for (i, &c) in labels.iter().enumerate() {
        groups[c].push(i);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut folds: Vec<Vec<usize>> = vec![Vec::new(); k];
    let mut next = 0;
    for group in &mut groups {
        group.shuffle(&mut rng);
        for &i in group.iter() {
            folds[next].push(i);
            next = (next + 1) % k;
        }
    }
    for fold in &mut folds {
        fold.sort_unstable();
    }
    Ok(folds)
}

/// All indices in `0..n` that are not in `fold`, ascending. `fold` must be
/// sorted, which [`stratified_folds`] guarantees.
pub fn fold_complement(n: usize, fold: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(n - fold.len());
    let mut held = fold.iter().peekable();
    for i in 0..n {
        if held.peek() == Some(&&i) {
            held.next();
        } else {
            out.push(i);
        }
    }
    out
}
