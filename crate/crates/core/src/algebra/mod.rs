//! Finite groups and groupoids: permutations, words, tables and arrows.

mod groupoid;
mod inrc;
mod perm;
mod table;
mod word;

use thiserror::Error;

pub use groupoid::{compose_arrows, EquivalenceGroupoid, GroupoidArrow};
pub use inrc::{klein_inrc_table, Inrc, Statement};
pub use perm::Permutation;
pub use table::GroupTable;
pub use word::{Exponent, Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("image table is not a bijection")]
    NotABijection,
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("arrow {later} cannot follow {earlier}: source and target differ")]
    NotComposable { later: String, earlier: String },
    #[error("unknown generator label `{0}`")]
    UnknownLabel(String),
    #[error("invalid group table: {0}")]
    InvalidTable(String),
}
