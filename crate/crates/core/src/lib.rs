//! Labeled Fibonacci trees `F^{a,b}` with exact integer arithmetic.
//!
//! Every quantity is computed with arbitrary-precision integers. The golden
//! ratio only appears through the ring ℤ[φ], where signs are decided exactly.

pub mod algebra;
pub mod config;
pub mod error;
pub mod fib;
pub mod fibword;
pub mod goldring;
pub mod order;
pub mod represent;
pub mod tree;
pub mod verify;
pub mod warray;
pub mod wythoff;

pub use num_bigint::BigInt;

pub use algebra::{basis, decompose, scalar_mul, tree_sum, verify_superposition};
pub use config::Limits;
pub use error::{Error, Result};
pub use fib::fib;
pub use fibword::{letter_at, parent_position, u_count, v_count, word, Letter, Word};
pub use goldring::{commutator_constant, Affine, Atom, GoldInt, MapWord};
pub use order::{is_subtree, least_upper_bound, self_containment, subtree_at, SubtreeWitness};
pub use represent::{
    classify, count_occurrences, find_interval_level, find_sequence, Occurrence, Route, TreeClass,
};
pub use tree::{
    branch_sequence, build_level_by_rules, children_labels, level_interval, node_label,
    parent_label, FibTree, LevelLabeling, NodeLabel, NodeRef,
};
pub use verify::{run_suites, Suite, SuiteReport};
pub use warray::{
    hofstadter_g, hofstadter_levels, primitive_pairs_in_tree, wythoff_array, HofstadterG,
    WythoffArray,
};
pub use wythoff::{u, u_rank, v, v_rank, verify_lemma_shift, FibSeq, WythoffPair};
