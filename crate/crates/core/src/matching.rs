//! Maximum cardinality matching in general graphs.
//!
//! `max_matching` is the blossom algorithm: repeated alternating-tree BFS
//! with contraction of odd cycles, O(V^3) overall. It handles arbitrary
//! graphs, including the odd-cycle residuals the greedy solvers produce.
//! `brute_matching` is an independent subset-DP oracle for small instances.

use crate::graph::Graph;
use crate::GuardError;

const NONE: usize = usize::MAX;

/// A set of vertex-disjoint edges, stored as `(u, v)` with `u < v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    edges: Vec<(usize, usize)>,
}

impl Matching {
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Vertices covered by the matching, ascending.
    pub fn covered(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self
            .edges
            .iter()
            .flat_map(|&(a, b)| [a, b])
            .collect();
        v.sort_unstable();
        v
    }
}

/// True iff the edges exist in `g` and are pairwise vertex-disjoint.
pub fn is_valid_matching(g: &Graph, m: &Matching) -> bool {
    let mut used = vec![false; g.n()];
    for &(u, v) in m.edges() {
        if u == 0 || v == 0 || u > g.n() || v > g.n() || !g.has_edge(u, v) {
            return false;
        }
        if used[u - 1] || used[v - 1] {
            return false;
        }
        used[u - 1] = true;
        used[v - 1] = true;
    }
    true
}

struct Blossom<'a> {
    g: &'a Graph,
    n: usize,
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
}

impl<'a> Blossom<'a> {
    fn new(g: &'a Graph) -> Self {
        let n = g.n();
        Blossom {
            g,
            n,
            mate: vec![NONE; n],
            parent: vec![NONE; n],
            base: (0..n).collect(),
            used: vec![false; n],
        }
    }

    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.n];
        loop {
            a = self.base[a];
            seen[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize, in_blossom: &mut [bool]) {
        while self.base[v] != b {
            in_blossom[self.base[v]] = true;
            in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    /// BFS for an augmenting path from `root`; returns its free endpoint.
    fn find_path(&mut self, root: usize) -> Option<usize> {
        self.used = vec![false; self.n];
        self.parent = vec![NONE; self.n];
        for i in 0..self.n {
            self.base[i] = i;
        }
        self.used[root] = true;
        let mut queue = std::collections::VecDeque::new();
        queue.push_back(root);
        while let Some(v) = queue.pop_front() {
            let neighbors: Vec<usize> = self.g.adj0(v).iter().collect();
            for to in neighbors {
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    // Odd cycle: contract the blossom down to the common base.
                    let cur_base = self.lca(v, to);
                    let mut in_blossom = vec![false; self.n];
                    self.mark_path(v, cur_base, to, &mut in_blossom);
                    self.mark_path(to, cur_base, v, &mut in_blossom);
                    for i in 0..self.n {
                        if in_blossom[self.base[i]] {
                            self.base[i] = cur_base;
                            if !self.used[i] {
                                self.used[i] = true;
                                queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return Some(to);
                    }
                    self.used[self.mate[to]] = true;
                    queue.push_back(self.mate[to]);
                }
            }
        }
        None
    }

    fn augment(&mut self, mut v: usize) {
        while v != NONE {
            let pv = self.parent[v];
            let next = self.mate[pv];
            self.mate[v] = pv;
            self.mate[pv] = v;
            v = next;
        }
    }
}

/// Maximum cardinality matching. Roots are tried in ascending vertex order,
/// so the result is reproducible.
pub fn max_matching(g: &Graph) -> Matching {
    let mut solver = Blossom::new(g);
    for v in 0..g.n() {
        if solver.mate[v] == NONE {
            if let Some(end) = solver.find_path(v) {
                solver.augment(end);
            }
        }
    }
    let mut edges = Vec::new();
    for v in 0..g.n() {
        let u = solver.mate[v];
        if u != NONE && v < u {
            edges.push((v + 1, u + 1));
        }
    }
    Matching { edges }
}

/// Exhaustive maximum matching by DP over vertex subsets; guarded at n = 16.
pub fn brute_matching(g: &Graph) -> Result<Matching, GuardError> {
    let n = g.n();
    GuardError::check("brute_matching", n, 16)?;
    if n == 0 {
        return Ok(Matching { edges: Vec::new() });
    }
    let adj: Vec<u32> = (0..n)
        .map(|v| {
            let mut bits = 0u32;
            for u in g.adj0(v).iter() {
                bits |= 1 << u;
            }
            bits
        })
        .collect();
    let full: u32 = if n == 32 { u32::MAX } else { (1 << n) - 1 };
    let mut memo: Vec<u8> = vec![u8::MAX; 1usize << n];

    fn solve(mask: u32, adj: &[u32], memo: &mut [u8]) -> u8 {
        if mask == 0 {
            return 0;
        }
        let cached = memo[mask as usize];
        if cached != u8::MAX {
            return cached;
        }
        let v = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << v);
        // Leave v unmatched.
        let mut best = solve(rest, adj, memo);
        // Or match v with any available neighbor.
        let mut nbrs = adj[v] & rest;
        while nbrs != 0 {
            let u = nbrs.trailing_zeros() as usize;
            nbrs &= nbrs - 1;
            best = best.max(1 + solve(rest & !(1 << u), adj, memo));
        }
        memo[mask as usize] = best;
        best
    }

    let _ = solve(full, &adj, &mut memo);

    // Reconstruct one optimal matching by replaying the decisions.
    let mut edges = Vec::new();
    let mut mask = full;
    while mask != 0 {
        let v = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << v);
        let target = solve(mask, &adj, &mut memo);
        if solve(rest, &adj, &mut memo) == target {
            mask = rest;
            continue;
        }
        let mut nbrs = adj[v] & rest;
        while nbrs != 0 {
            let u = nbrs.trailing_zeros() as usize;
            nbrs &= nbrs - 1;
            if 1 + solve(rest & !(1 << u), &adj, &mut memo) == target {
                edges.push((v + 1, u + 1));
                mask = rest & !(1 << u);
                break;
            }
        }
    }
    edges.sort_unstable();
    Ok(Matching { edges })
}
