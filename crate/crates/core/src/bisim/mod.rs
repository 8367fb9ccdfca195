//! Independent ground truth for context-sensitive α-equivalence.
//!
//! A closed term induces a deterministic graph whose nodes are its positions;
//! two positions are equivalent iff their nodes are bisimilar. This module
//! computes that partition twice (a fixed-point oracle and partition
//! refinement) and also by brute-force fork equivalence for tiny terms.

mod fork;
mod graph;
mod naive;
mod refine;

pub use fork::{enumerate_single_forks, fork_closure, FORK_BOUND};
pub use graph::{build_graph, Label, TermGraph};
pub use naive::bisim_partition_naive;
pub use refine::bisim_partition_refine;

use crate::error::Result;
use crate::partition::Partition;
use crate::term::{Position, PureTerm};

/// Bisimilarity partition of the positions of a closed term, in preorder.
pub fn bisim_partition(t: &PureTerm) -> Result<Partition> {
    Ok(bisim_partition_refine(&build_graph(t)?))
}

/// Whether `t₁[[p₁]]` and `t₂[[p₂]]` are bisimilar, decided inside the
/// single graph of `t₁ t₂`.
pub fn are_equivalent(t1: &PureTerm, p1: &Position, t2: &PureTerm, p2: &Position) -> Result<bool> {
    let g = build_graph(&PureTerm::app(t1.clone(), t2.clone()))?;
    let a = g.node_at(&Position::from(vec![crate::term::Step::Left]).concat(p1))?;
    let b = g.node_at(&Position::from(vec![crate::term::Step::Right]).concat(p2))?;
    Ok(bisim_partition_refine(&g).same_block(a, b))
}
