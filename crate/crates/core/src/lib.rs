//! Toolkit for the clique partition and cluster deletion problems.
//!
//! A clique partition of a graph splits the vertex set into cliques; the
//! objective is to maximize the number of edges kept inside the cliques
//! (equivalently, to minimize the edges deleted so that every connected
//! component of what remains is complete).
//!
//! The crate provides:
//!
//! - the graph / partition data model and edge-counting primitives ([`graph`]),
//! - permutation graphs and maximum cliques via decreasing subsequences ([`perm`]),
//! - cograph recognition, the partition dominance order, and cotree
//!   generators ([`cograph`]),
//! - maximum matching in general graphs ([`matching`]),
//! - maximum-clique search, enumeration, and an exact partition oracle ([`cliques`]),
//! - the greedy solver family with tie-break exploration ([`algo`]),
//! - instance factories including the tight lower-bound family ([`generate`]),
//! - exact verification of the approximation-ratio polynomial bounds ([`bounds`]),
//! - corpus-scale verification suites ([`suites`]).

pub mod algo;
mod bits;
pub mod bounds;
pub mod cliques;
pub mod cograph;
pub mod generate;
pub mod graph;
pub mod io;
pub mod matching;
pub mod perm;
pub mod suites;

pub use graph::{CliquePartition, EdgeSet, Graph};
pub use perm::Permutation;

/// Returned by operations that are restricted to small instances.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{op}: instance has n = {n}, exceeding the supported maximum of {max}")]
pub struct GuardError {
    pub op: &'static str,
    pub n: usize,
    pub max: usize,
}

impl GuardError {
    pub(crate) fn check(op: &'static str, n: usize, max: usize) -> Result<(), GuardError> {
        if n > max {
            Err(GuardError { op, n, max })
        } else {
            Ok(())
        }
    }
}

/// `n choose 2`, the edge count of a complete graph on `n` vertices.
#[inline]
pub fn choose2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}
