//! Simple undirected graphs, clique partitions, and edge-counting primitives.
//!
//! Vertices are labeled `1..=n` throughout the crate; this matches the file
//! formats and every named fixture instance. Adjacency is stored as one
//! bitset per vertex, so clique tests cost O(n/64) per pair batch.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::bits::Bits;
use crate::choose2;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {v} out of range 1..={n}")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("self-loop at vertex {u}")]
    SelfLoop { u: usize },
    #[error("duplicate edge {{{u}, {v}}}")]
    DuplicateEdge { u: usize, v: usize },
}

/// An immutable simple undirected graph on vertices `1..=n`.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<Bits>,
    m: usize,
}

impl Graph {
    /// Builds a graph from an edge list. Rejects self-loops, duplicate edges
    /// (in either orientation), and out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut adj = vec![Bits::empty(n); n];
        let mut m = 0;
        for &(u, v) in edges {
            for w in [u, v] {
                if w == 0 || w > n {
                    return Err(GraphError::VertexOutOfRange { v: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop { u });
            }
            if adj[u - 1].contains(v - 1) {
                return Err(GraphError::DuplicateEdge { u, v });
            }
            adj[u - 1].insert(v - 1);
            adj[v - 1].insert(u - 1);
            m += 1;
        }
        Ok(Graph { n, adj, m })
    }

    pub fn edgeless(n: usize) -> Graph {
        Graph {
            n,
            adj: vec![Bits::empty(n); n],
            m: 0,
        }
    }

    pub fn complete(n: usize) -> Graph {
        let mut adj = Vec::with_capacity(n);
        for v in 0..n {
            let mut row = Bits::full(n);
            row.remove(v);
            adj.push(row);
        }
        Graph {
            n,
            adj,
            m: choose2(n),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn vertices(&self) -> std::ops::RangeInclusive<usize> {
        1..=self.n
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        assert!(
            u >= 1 && u <= self.n && v >= 1 && v <= self.n,
            "vertex out of range"
        );
        u != v && self.adj[u - 1].contains(v - 1)
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u - 1].count()
    }

    /// Neighbors of `u` in ascending order.
    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[u - 1].iter().map(|i| i + 1)
    }

    /// All edges as `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m);
        for u in 0..self.n {
            for v in self.adj[u].iter() {
                if v > u {
                    out.push((u + 1, v + 1));
                }
            }
        }
        out
    }

    /// Induced subgraph on the given vertices. Returns the subgraph together
    /// with the original label of each new vertex (`labels[i]` is the old
    /// label of new vertex `i + 1`).
    pub fn induced(&self, verts: &[usize]) -> (Graph, Vec<usize>) {
        let mut labels: Vec<usize> = verts.to_vec();
        labels.sort_unstable();
        labels.dedup();
        let k = labels.len();
        let mut edges = Vec::new();
        for i in 0..k {
            for j in i + 1..k {
                if self.has_edge(labels[i], labels[j]) {
                    edges.push((i + 1, j + 1));
                }
            }
        }
        (Graph::from_edges(k, &edges).expect("induced edges are valid"), labels)
    }

    /// 0-indexed adjacency bitset of `u` (1-indexed).
    pub(crate) fn adj0(&self, u0: usize) -> &Bits {
        &self.adj[u0]
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, m={}, edges={:?})", self.n, self.m, self.edges())
    }
}

/// True iff every pair of vertices in `s` is adjacent.
pub fn is_clique(g: &Graph, s: &[usize]) -> Result<bool, GraphError> {
    for &v in s {
        if v == 0 || v > g.n() {
            return Err(GraphError::VertexOutOfRange { v, n: g.n() });
        }
    }
    for (i, &u) in s.iter().enumerate() {
        for &v in &s[i + 1..] {
            if u == v || !g.has_edge(u, v) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// True iff the graph is a disjoint union of complete graphs, i.e. it has no
/// induced 3-vertex path.
pub fn is_cluster_graph(g: &Graph) -> bool {
    // Every component must be complete: each vertex must be adjacent to all
    // vertices at distance two, so it suffices that neighborhoods of adjacent
    // vertices coincide (apart from the endpoints themselves).
    for u in 0..g.n() {
        for v in g.adj0(u).iter() {
            if v < u {
                continue;
            }
            let mut nu = g.adj0(u).clone();
            nu.remove(v);
            let mut nv = g.adj0(v).clone();
            nv.remove(u);
            if nu != nv {
                return false;
            }
        }
    }
    true
}

/// An ordered list of disjoint cliques covering `1..=graph_n`.
#[derive(Clone, PartialEq, Eq)]
pub struct CliquePartition {
    blocks: Vec<Vec<usize>>,
    graph_n: usize,
}

impl CliquePartition {
    /// Blocks keep their given order; vertices within a block are sorted.
    pub fn new(blocks: Vec<Vec<usize>>, graph_n: usize) -> CliquePartition {
        let mut blocks = blocks;
        for b in &mut blocks {
            b.sort_unstable();
        }
        CliquePartition { blocks, graph_n }
    }

    pub fn singletons(n: usize) -> CliquePartition {
        CliquePartition {
            blocks: (1..=n).map(|v| vec![v]).collect(),
            graph_n: n,
        }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn graph_n(&self) -> usize {
        self.graph_n
    }

    /// Block sizes in ascending order.
    pub fn sizes_ascending(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.blocks.iter().map(|b| b.len()).collect();
        s.sort_unstable();
        s
    }

    /// Total edges inside the blocks, assuming each block is a clique.
    pub fn internal_edges(&self) -> usize {
        self.blocks.iter().map(|b| choose2(b.len())).sum()
    }
}

impl fmt::Debug for CliquePartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CliquePartition({:?})", self.blocks)
    }
}

/// Why a claimed partition is not a valid clique partition.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionViolation {
    #[error("partition covers 1..={partition_n} but the graph has n = {graph_n}")]
    SizeMismatch { partition_n: usize, graph_n: usize },
    #[error("block {block} is empty")]
    EmptyBlock { block: usize },
    #[error("vertex {v} out of range 1..={n}")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("vertex {v} appears in more than one block")]
    Overlap { v: usize },
    #[error("vertex {v} is not covered by any block")]
    Missing { v: usize },
    #[error("block {block} is not a clique: {u} and {v} are not adjacent")]
    NotAClique { block: usize, u: usize, v: usize },
}

/// Checks disjointness, coverage of `1..=n`, and that every block is a clique.
pub fn validate_partition(g: &Graph, p: &CliquePartition) -> Result<(), PartitionViolation> {
    let n = g.n();
    if p.graph_n() != n {
        return Err(PartitionViolation::SizeMismatch {
            partition_n: p.graph_n(),
            graph_n: n,
        });
    }
    let mut seen = vec![false; n];
    for (bi, block) in p.blocks().iter().enumerate() {
        if block.is_empty() {
            return Err(PartitionViolation::EmptyBlock { block: bi });
        }
        for &v in block {
            if v == 0 || v > n {
                return Err(PartitionViolation::VertexOutOfRange { v, n });
            }
            if seen[v - 1] {
                return Err(PartitionViolation::Overlap { v });
            }
            seen[v - 1] = true;
        }
        for (i, &u) in block.iter().enumerate() {
            for &v in &block[i + 1..] {
                if !g.has_edge(u, v) {
                    return Err(PartitionViolation::NotAClique { block: bi, u, v });
                }
            }
        }
    }
    if let Some(v0) = seen.iter().position(|&s| !s) {
        return Err(PartitionViolation::Missing { v: v0 + 1 });
    }
    Ok(())
}

/// Number of edges kept inside the blocks of a valid partition.
pub fn partition_edges(g: &Graph, p: &CliquePartition) -> Result<usize, PartitionViolation> {
    validate_partition(g, p)?;
    Ok(p.internal_edges())
}

/// Number of edges a valid partition deletes, `m - partition_edges`.
pub fn deleted_edges(g: &Graph, p: &CliquePartition) -> Result<usize, PartitionViolation> {
    Ok(g.m() - partition_edges(g, p)?)
}

/// A set of unordered vertex pairs.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct EdgeSet {
    edges: BTreeSet<(usize, usize)>,
}

impl EdgeSet {
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, usize)>) -> EdgeSet {
        EdgeSet {
            edges: pairs
                .into_iter()
                .map(|(u, v)| {
                    assert!(u != v, "edge ends must be distinct");
                    (u.min(v), u.max(v))
                })
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }
}

/// The edges of `g` with exactly one end in `x`.
pub fn cut_edges(g: &Graph, x: &[usize]) -> EdgeSet {
    let inside = Bits::from_indices(g.n(), x.iter().map(|&v| v - 1));
    let mut out = BTreeSet::new();
    for &u in x {
        for v in g.neighbors(u) {
            if !inside.contains(v - 1) {
                out.insert((u.min(v), u.max(v)));
            }
        }
    }
    EdgeSet { edges: out }
}

/// Number of edges of `g` with both ends in `x`.
pub fn edges_within(g: &Graph, x: &[usize]) -> usize {
    let inside = Bits::from_indices(g.n(), x.iter().map(|&v| v - 1));
    x.iter()
        .map(|&u| g.adj0(u - 1).and_count(&inside))
        .sum::<usize>()
        / 2
}

/// Removes the given edges from `g`.
pub fn remove_edges(g: &Graph, drop: &EdgeSet) -> Graph {
    let kept: Vec<(usize, usize)> = g
        .edges()
        .into_iter()
        .filter(|&(u, v)| !drop.contains(u, v))
        .collect();
    Graph::from_edges(g.n(), &kept).expect("removing edges keeps the graph valid")
}
