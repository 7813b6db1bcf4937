//! Exact character theory of finite groups, trace-formula identities and
//! Weyl character combinatorics.

pub mod algebra;
pub mod brauer;
pub mod chartable;
pub mod config;
pub mod cyclotomic;
pub mod error;
pub mod group;
pub mod induction;
pub mod report;
pub mod scalar;
pub mod trace;
pub mod weyl;

pub use cyclotomic::Cyclo;
pub use error::{Error, Result};
pub use group::{ConjugacyClassSet, GroupTable, Permutation, SubgroupEmbedding};
pub use scalar::Scalar;
