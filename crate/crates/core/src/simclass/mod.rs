//! Invariant-factor tuples, partitions, similarity class types and
//! centralizer orders.

pub mod counts;
pub mod invariants;
pub mod partition;
pub mod types;

pub use counts::{
    c_local, centralizer_order, centralizer_order_type, count_to_ratio, gamma, q_binomial, q_pochhammer, qpow,
    qpow_ratio, ratio_to_count, reduce_invariants, reduce_type, Count, Ratio,
};
pub use invariants::{enumerate_classes, InvariantFactors};
pub use partition::{partitions, Partition};
pub use types::{
    enumerate_types, invariants_to_primary, is_realizable, primary_to_invariants, realize_type, type_of,
    PrimaryDecomposition, SimilarityType,
};
