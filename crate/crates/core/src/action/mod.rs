//! Group and groupoid actions on finite configuration sets.

mod config;
mod orbit;
mod schreier;
mod space;
mod universe;

use thiserror::Error;

pub use config::{Codec, Config, Field, FieldKind, HEADINGS};
pub use orbit::{is_transitive, orbit_of, orbit_partition, transversal, OrbitPartition, DEFAULT_NODE_CAP};
pub use schreier::{group_order, orbit_count_via_index, StabilizerChain};
pub use space::{arrangement_sign, ActionSpace, Generator, MoveFn, MoveRule, ParityRule, BLANK};
pub use universe::{factorial, Universe};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ActionError {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("`{generator}` does not apply at {config}")]
    Inapplicable { generator: String, config: String },
    #[error("node cap of {cap} configurations exceeded")]
    CapExceeded { cap: usize },
    #[error("configuration set is not enumerable")]
    NotEnumerable,
    #[error("generator `{0}` has no slot representation")]
    MissingSlotRepresentation(String),
    #[error("configuration set is not a torsor of a known ambient group")]
    NotATorsor,
    #[error("invalid action space: {0}")]
    InvalidSpace(String),
    #[error("bad configuration {0}")]
    Codec(String),
}
