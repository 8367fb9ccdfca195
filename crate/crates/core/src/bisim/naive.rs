use super::graph::{Label, TermGraph};
use crate::partition::Partition;

/// Coarsest bisimulation by fixed-point iteration: start from the node kinds
/// and split on successor blocks until nothing changes. Quadratic; meant as
/// an oracle for small graphs.
pub fn bisim_partition_naive(g: &TermGraph) -> Partition {
    let mut p = Partition::from_labels((0..g.len()).map(|v| g.kind(v)));
    loop {
        let next = Partition::from_labels((0..g.len()).map(|v| {
            let succ = Label::ALL.map(|l| g.succ(v, l).map(|w| p.block_of(w)));
            (p.block_of(v), succ)
        }));
        if next.block_count() == p.block_count() {
            return next;
        }
        p = next;
    }
}
