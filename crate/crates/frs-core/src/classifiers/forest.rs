//! Random forest: bagged Gini trees with per-split feature sampling and
//! majority voting.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::classifiers::tree::{majority, Node, TreeBuilder};
use crate::par;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ForestParams {
    pub seed: u64,
    #[serde(default = "default_trees")]
    pub n_trees: usize,
    /// None grows every tree to purity.
    #[serde(default)]
    pub max_depth: Option<usize>,
    /// Features sampled per split; None means round(sqrt(d)), at least 1.
    #[serde(default)]
    pub n_candidates: Option<usize>,
    /// Draw each tree's bag with replacement; false trains every tree on
    /// the full sample, which with one tree reduces the forest to plain
    /// CART.
    #[serde(default = "default_bootstrap")]
    pub bootstrap: bool,
}

fn default_trees() -> usize {
    100
}

fn default_bootstrap() -> bool {
    true
}

impl ForestParams {
    pub fn new(seed: u64) -> Self {
        ForestParams {
            seed,
            n_trees: default_trees(),
            max_depth: None,
            n_candidates: None,
            bootstrap: default_bootstrap(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub(crate) struct ForestModel {
    pub trees: Vec<Node>,
    pub n_classes: usize,
}

/// Train on column-major data. Each tree draws its bag and split
/// candidates from an rng stream keyed by tree index, so the model is
/// independent of training thread count.
pub(crate) fn train(x: &[Vec<f64>], y: &[usize], n_classes: usize, params: &ForestParams) -> ForestModel {
    let d = x.len();
    let n = y.len();
    let n_candidates = params
        .n_candidates
        .unwrap_or_else(|| ((d as f64).sqrt().round() as usize).max(1))
        .clamp(1, d);
    let builder = TreeBuilder { x, y, n_classes, max_depth: params.max_depth, n_candidates };

    let trees = par::map_collect(params.n_trees, |t| {
        let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
        rng.set_stream(t as u64 + 1);
        let bag: Vec<usize> = if params.bootstrap {
            (0..n).map(|_| rng.random_range(0..n)).collect()
        } else {
            (0..n).collect()
        };
        let mut rng = if n_candidates < d { Some(rng) } else { None };
        let mut importance = vec![0.0; d];
        builder.grow(bag, &mut rng, &mut importance)
    });
    ForestModel { trees, n_classes }
}

/// Single-tree Gini importance on the full sample: every feature a split
/// candidate, no bagging. Used for importance ranking rather than voting.
pub(crate) fn tree_importance(x: &[Vec<f64>], y: &[usize], n_classes: usize) -> Vec<f64> {
    let builder =
        TreeBuilder { x, y, n_classes, max_depth: None, n_candidates: x.len() };
    let mut importance = vec![0.0; x.len()];
    builder.grow((0..y.len()).collect(), &mut None, &mut importance);
    importance
}

impl ForestModel {
    /// Majority vote over trees, lowest class code on ties.
    pub(crate) fn predict(&self, row: &[f64]) -> usize {
        let mut votes = vec![0usize; self.n_classes];
        for tree in &self.trees {
            votes[tree.predict(row)] += 1;
        }
        majority(&votes)
    }
}
