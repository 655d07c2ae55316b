//! CART-style decision tree on column-major data: binary threshold splits
//! chosen by weighted Gini impurity.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "node", rename_all = "snake_case")]
pub(crate) enum Node {
    Leaf { label: usize },
    Split { feature: usize, threshold: f64, left: Box<Node>, right: Box<Node> },
}

impl Node {
    pub(crate) fn predict(&self, row: &[f64]) -> usize {
        match self {
            Node::Leaf { label } => *label,
            Node::Split { feature, threshold, left, right } => {
                if row[*feature] <= *threshold {
                    left.predict(row)
                } else {
                    right.predict(row)
                }
            }
        }
    }
}

pub(crate) struct TreeBuilder<'a> {
    /// Column-major feature values.
    pub x: &'a [Vec<f64>],
    pub y: &'a [usize],
    pub n_classes: usize,
    pub max_depth: Option<usize>,
    /// Features sampled per split; the full set when it equals `x.len()`.
    pub n_candidates: usize,
}

impl<'a> TreeBuilder<'a> {
    /// Grow a tree over the samples in `idx` (duplicates allowed, as with
    /// bootstrap draws). `rng` drives candidate sampling when
    /// `n_candidates` is below the feature count. Gini decreases are
    /// accumulated into `importance`, weighted by node fraction.
    pub(crate) fn grow(
        &self,
        idx: Vec<usize>,
        rng: &mut Option<ChaCha8Rng>,
        importance: &mut [f64],
    ) -> Node {
        let total = idx.len() as f64;
        self.grow_node(idx, 0, total, rng, importance)
    }

    fn grow_node(
        &self,
        idx: Vec<usize>,
        depth: usize,
        total: f64,
        rng: &mut Option<ChaCha8Rng>,
        importance: &mut [f64],
    ) -> Node {
        let counts = self.counts(&idx);
        let node_gini = gini(&counts, idx.len());
        let depth_ok = self.max_depth.map_or(true, |limit| depth < limit);
        if node_gini == 0.0 || !depth_ok || idx.len() < 2 {
            return Node::Leaf { label: majority(&counts) };
        }

        let candidates = self.pick_candidates(rng);
        let best = candidates
            .iter()
            .filter_map(|&f| self.best_threshold(f, &idx).map(|(t, g)| (f, t, g)))
            .reduce(|a, b| if b.2 < a.2 { b } else { a });
        let Some((feature, threshold, split_gini)) = best else {
            return Node::Leaf { label: majority(&counts) };
        };

        importance[feature] += idx.len() as f64 / total * (node_gini - split_gini);
        let (left_idx, right_idx): (Vec<usize>, Vec<usize>) =
            idx.into_iter().partition(|&i| self.x[feature][i] <= threshold);
        debug_assert!(!left_idx.is_empty() && !right_idx.is_empty());
        let left = self.grow_node(left_idx, depth + 1, total, rng, importance);
        let right = self.grow_node(right_idx, depth + 1, total, rng, importance);
        Node::Split { feature, threshold, left: Box::new(left), right: Box::new(right) }
    }

    fn counts(&self, idx: &[usize]) -> Vec<usize> {
        let mut counts = vec![0usize; self.n_classes];
        for &i in idx {
            counts[self.y[i]] += 1;
        }
        counts
    }

    /// Candidate features for one split, ascending. Sampling is a partial
    /// shuffle, then sorted so tie-breaks follow feature order.
    fn pick_candidates(&self, rng: &mut Option<ChaCha8Rng>) -> Vec<usize> {
        let d = self.x.len();
        if self.n_candidates >= d {
            return (0..d).collect();
        }
        let rng = rng.as_mut().expect("sampling below the feature count needs an rng");
        let mut pool: Vec<usize> = (0..d).collect();
        for i in 0..self.n_candidates {
            let j = rng.random_range(i..d);
            pool.swap(i, j);
        }
        pool.truncate(self.n_candidates);
        pool.sort_unstable();
        pool
    }

    /// Best threshold on one feature: lowest weighted child Gini over all
    /// midpoints between consecutive distinct values. Ties keep the first
    /// (lowest) threshold. None when the feature is constant on `idx`.
    fn best_threshold(&self, feature: usize, idx: &[usize]) -> Option<(f64, f64)> {
        let col = &self.x[feature];
        let mut order: Vec<usize> = idx.to_vec();
        order.sort_by(|&a, &b| col[a].total_cmp(&col[b]));

        let n = order.len();
        let mut left_counts = vec![0usize; self.n_classes];
        let mut right_counts = self.counts(idx);
        let mut best: Option<(f64, f64)> = None;
        for pos in 0..n - 1 {
            let i = order[pos];
            left_counts[self.y[i]] += 1;
            right_counts[self.y[i]] -= 1;
            let (v, next) = (col[i], col[order[pos + 1]]);
            if v == next {
                continue;
            }
            let n_left = pos + 1;
            let weighted = (n_left as f64 * gini(&left_counts, n_left)
                + (n - n_left) as f64 * gini(&right_counts, n - n_left))
                / n as f64;
            if best.map_or(true, |(_, g)| weighted < g) {
                best = Some((v + (next - v) / 2.0, weighted));
            }
        }
        best
    }
}

fn gini(counts: &[usize], n: usize) -> f64 {
    if n == 0 {
        return 0.0;
    }
    let mut sum = 0.0;
    for &c in counts {
        let p = c as f64 / n as f64;
        sum += p * p;
    }
    1.0 - sum
}

/// Majority class, lowest code on ties.
pub(crate) fn majority(counts: &[usize]) -> usize {
    counts
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))
        .map(|(c, _)| c)
        .unwrap_or(0)
}
