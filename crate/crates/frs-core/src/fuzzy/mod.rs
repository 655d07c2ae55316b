//! Fuzzy similarity operators, relation matrices and membership degrees,
//! plus the classical crisp partition machinery they generalize.

mod ops;
mod relation;

pub use ops::{
    crisp_lower, crisp_partition, crisp_upper, implicator, similarity, t_norm, t_norm_fold,
    t_norm_fold_closed, CrispPartition,
};
pub(crate) use ops::{implicator_raw, similarity_raw};
pub use relation::{
    label_relation_matrix, lower_memberships, memberships, relation_matrix, Memberships,
    SimilarityMatrix,
};
