//! Permutation-group engine.
//!
//! Every computation enumerates the full element set of the group by
//! breadth-first closure (bounded by an enumeration cap) and works on that
//! set directly: conjugacy classes, centralizers, normalizers, Sylow
//! subgroups, coset-action quotients and orbit partitions.

mod classes;
mod group;
mod perm;
mod subgroup;

pub use classes::ClassData;
pub use group::{ElementSet, PermutationGroup, DEFAULT_ENUMERATION_CAP};
pub use perm::Permutation;
