use num_bigint::BigInt;
use thiserror::Error;

use crate::represent::TreeClass;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("level {requested} exceeds the materialization cap {cap}")]
    LevelCap { requested: u32, cap: u32 },

    #[error("position {pos} is outside level {level} (1..={len})")]
    Position { level: u32, pos: BigInt, len: BigInt },

    #[error("root has no parent")]
    RootHasNoParent,

    #[error("node at level {level}, position {pos} is not a u-node")]
    NotUNode { level: u32, pos: BigInt },

    #[error("reference index undefined for F^{{0,0}}")]
    ZeroSequence,

    #[error("identity map, all points fixed")]
    IdentityMap,

    #[error("word contains inverse atoms; only L and R address subtrees")]
    InverseAtom,

    #[error("tree is not in Psi (class {class:?})")]
    NotInPsi { class: TreeClass },

    #[error("no occurrence found up to level cap {cap} (last level tried: {last_level})")]
    SearchCap { cap: u32, last_level: u32 },

    #[error("lemma identity does not hold at n_max = {n_max} for i = {i}")]
    LemmaWitness { i: BigInt, n_max: u32 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Two independent computations of the same quantity disagreed.
    #[error("internal cross-check failed: {0}")]
    CrossCheck(String),
}

pub type Result<T> = std::result::Result<T, Error>;
