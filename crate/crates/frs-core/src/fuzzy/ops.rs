//! Scalar fuzzy operators and classical crisp approximations.

use crate::error::{Error, Result};

fn check_unit(value: f64) -> Result<f64> {
    if (0.0..=1.0).contains(&value) {
        Ok(value)
    } else {
        Err(Error::OutOfRange { value })
    }
}

/// Bounded conjunction `max(0, x + y - 1)` over [0,1].
pub fn t_norm(x: f64, y: f64) -> Result<f64> {
    Ok(t_norm_raw(check_unit(x)?, check_unit(y)?))
}

#[inline]
pub(crate) fn t_norm_raw(x: f64, y: f64) -> f64 {
    (x + y - 1.0).max(0.0)
}

/// Residual implication `min(1, 1 - q + s)` over [0,1].
pub fn implicator(q: f64, s: f64) -> Result<f64> {
    Ok(implicator_raw(check_unit(q)?, check_unit(s)?))
}

#[inline]
pub(crate) fn implicator_raw(q: f64, s: f64) -> f64 {
    (1.0 - q + s).min(1.0)
}

/// Per-feature similarity `max(0, 1 - (x - y)^2)` over [0,1].
pub fn similarity(x: f64, y: f64) -> Result<f64> {
    Ok(similarity_raw(check_unit(x)?, check_unit(y)?))
}

#[inline]
pub(crate) fn similarity_raw(x: f64, y: f64) -> f64 {
    let d = x - y;
    (1.0 - d * d).max(0.0)
}

/// Left fold of the conjunction over a non-empty sequence.
pub fn t_norm_fold(values: &[f64]) -> Result<f64> {
    let (&first, rest) = values.split_first().ok_or(Error::EmptyInput)?;
    let mut acc = check_unit(first)?;
    for &v in rest {
        acc = t_norm_raw(acc, check_unit(v)?);
    }
    Ok(acc)
}

/// Closed form of the fold: `max(0, sum - (k - 1))`. Equal to
/// [`t_norm_fold`] up to accumulation rounding.
pub fn t_norm_fold_closed(values: &[f64]) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut sum = 0.0;
    for &v in values {
        sum += check_unit(v)?;
    }
    Ok((sum - (values.len() as f64 - 1.0)).max(0.0))
}

/// Partition of sample indices into groups with identical rows.
///
/// `class_of[i]` names the group of sample `i`; groups are numbered in
/// order of first appearance and listed with ascending member indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrispPartition {
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
}

/// Group samples by exact equality of their rows (all values equal).
pub fn crisp_partition(rows: &[Vec<f64>]) -> Result<CrispPartition> {
    if rows.is_empty() {
        return Err(Error::EmptyInput);
    }
    let arity = rows[0].len();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut class_of = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        if row.len() != arity {
            return Err(Error::ArityMismatch { left: arity, right: row.len() });
        }
        let found = classes.iter().position(|c| rows[c[0]] == *row);
        match found {
            Some(k) => {
                classes[k].push(i);
                class_of.push(k);
            }
            None => {
                class_of.push(classes.len());
                classes.push(vec![i]);
            }
        }
    }
    Ok(CrispPartition { classes, class_of })
}

/// Samples whose whole equivalence class lies inside the set (sorted).
pub fn crisp_lower(partition: &CrispPartition, in_set: &[bool]) -> Result<Vec<usize>> {
    if in_set.len() != partition.class_of.len() {
        return Err(Error::DimensionMismatch { left: partition.class_of.len(), right: in_set.len() });
    }
    Ok((0..in_set.len())
        .filter(|&i| partition.classes[partition.class_of[i]].iter().all(|&j| in_set[j]))
        .collect())
}

/// Samples whose equivalence class touches the set (sorted).
pub fn crisp_upper(partition: &CrispPartition, in_set: &[bool]) -> Result<Vec<usize>> {
    if in_set.len() != partition.class_of.len() {
        return Err(Error::DimensionMismatch { left: partition.class_of.len(), right: in_set.len() });
    }
    Ok((0..in_set.len())
        .filter(|&i| partition.classes[partition.class_of[i]].iter().any(|&j| in_set[j]))
        .collect())
}
