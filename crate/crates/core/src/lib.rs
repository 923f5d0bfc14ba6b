//! Conjugacy class counts, character degrees and bound checks for finite
//! permutation groups of modest order.

pub mod canonical;
pub mod chartab;
pub mod construct;
pub mod error;
pub mod groupfile;
pub mod numtheory;
pub mod permgroup;
pub mod report;
pub mod verify;
