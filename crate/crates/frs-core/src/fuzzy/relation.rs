//! Fuzzy similarity relations over samples and the lower/upper membership
//! degrees they induce.

use crate::dataset::NormalizedDataset;
use crate::error::{Error, Result};
use crate::fuzzy::ops::{implicator_raw, similarity_raw, t_norm_raw};
use crate::par;

/// Dense symmetric matrix with unit diagonal, stored as its upper triangle.
#[derive(Debug, Clone, PartialEq)]
pub struct SimilarityMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SimilarityMatrix {
    /// Build from a pairwise function evaluated once per unordered pair
    /// `i <= j`, row by row.
    pub(crate) fn build<F>(n: usize, f: F) -> Self
    where
        F: Fn(usize, usize) -> f64 + Sync + Send,
    {
        let rows: Vec<Vec<f64>> = par::map_collect(n, |i| (i..n).map(|j| f(i, j)).collect());
        SimilarityMatrix { n, data: rows.concat() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Relation value for the pair `(i, j)`; symmetric access.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        debug_assert!(j < self.n);
        self.data[i * self.n - i * (i + 1) / 2 + j]
    }
}

/// Lower and upper membership degree of each sample in its own label's
/// fuzzy-rough approximation.
#[derive(Debug, Clone, PartialEq)]
pub struct Memberships {
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
}

fn validate_subset(ds: &NormalizedDataset, subset: &[usize]) -> Result<()> {
    if subset.is_empty() {
        return Err(Error::EmptySubset);
    }
    for &f in subset {
        if f >= ds.n_features() {
            return Err(Error::UnknownFeature { name: format!("#{f}") });
        }
        for &v in &ds.columns[f] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::OutOfRange { value: v });
            }
        }
    }
    Ok(())
}

/// Pairwise similarity over a feature subset: per-feature similarities
/// combined with the bounded conjunction, in closed form
/// `max(0, sum - (k - 1))`.
pub fn relation_matrix(ds: &NormalizedDataset, subset: &[usize]) -> Result<SimilarityMatrix> {
    validate_subset(ds, subset)?;
    let k1 = subset.len() as f64 - 1.0;
    Ok(SimilarityMatrix::build(ds.n_samples(), |i, j| {
        let mut sum = 0.0;
        for &f in subset {
            sum += similarity_raw(ds.columns[f][i], ds.columns[f][j]);
        }
        (sum - k1).max(0.0)
    }))
}

/// Pairwise similarity of the scaled label codes.
pub fn label_relation_matrix(ds: &NormalizedDataset) -> SimilarityMatrix {
    SimilarityMatrix::build(ds.n_samples(), |i, j| {
        similarity_raw(ds.label_scaled[i], ds.label_scaled[j])
    })
}

/// Membership degrees from a feature relation and a label relation.
///
/// For each sample `m`, the lower degree is the infimum over all other
/// samples of `I(r_f, r_l)` and the upper degree the supremum of
/// `T(r_f, r_l)`. With a single sample the folds are empty: lower 1, upper 0.
pub fn memberships(r_f: &SimilarityMatrix, r_l: &SimilarityMatrix) -> Result<Memberships> {
    if r_f.n() != r_l.n() {
        return Err(Error::DimensionMismatch { left: r_f.n(), right: r_l.n() });
    }
    let n = r_f.n();
    let lower = par::map_collect(n, |m| {
        let mut acc = 1.0f64;
        for other in 0..n {
            if other != m {
                acc = acc.min(implicator_raw(r_f.get(m, other), r_l.get(m, other)));
            }
        }
        acc
    });
    let upper = par::map_collect(n, |m| {
        let mut acc = 0.0f64;
        for other in 0..n {
            if other != m {
                acc = acc.max(t_norm_raw(r_f.get(m, other), r_l.get(m, other)));
            }
        }
        acc
    });
    Ok(Memberships { lower, upper })
}

/// Lower membership degrees for a feature subset, streamed pair by pair
/// without materializing the relation matrices.
///
/// Same-label pairs always contribute an implication of exactly 1, so only
/// pairs with differing labels are visited; results are bit-identical to
/// the matrix route.
pub fn lower_memberships(ds: &NormalizedDataset, subset: &[usize]) -> Result<Vec<f64>> {
    validate_subset(ds, subset)?;
    let n = ds.n_samples();
    let k1 = subset.len() as f64 - 1.0;
    Ok(par::map_collect(n, |m| {
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
    }))
}
