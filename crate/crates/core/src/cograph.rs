//! Cograph recognition, the dominance order on clique partitions, and
//! cotree-based graph generation.
//!
//! A cograph decomposes recursively: every cograph on two or more vertices
//! splits into parts with either no edges between them (disjoint union) or
//! all edges between them (join). `decompose_cograph` builds that witness
//! tree, recursing on connected components and on components of the
//! complement; a graph that is connected in both senses is not a cograph.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use std::collections::{BTreeSet, HashMap};

use crate::bits::Bits;
use crate::graph::{CliquePartition, Graph};
use crate::GuardError;

/// Union/join decomposition tree; leaves carry vertex labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cotree {
    Leaf(usize),
    Union(Vec<Cotree>),
    Join(Vec<Cotree>),
}

impl Cotree {
    pub fn leaves(&self) -> Vec<usize> {
        match self {
            Cotree::Leaf(v) => vec![*v],
            Cotree::Union(children) | Cotree::Join(children) => {
                children.iter().flat_map(|c| c.leaves()).collect()
            }
        }
    }

    /// Realizes the tree as a graph on `1..=n`, where `n` is the leaf count.
    /// Panics if the leaves are not exactly `1..=n`.
    pub fn realize(&self) -> Graph {
        let mut leaves = self.leaves();
        let n = leaves.len();
        leaves.sort_unstable();
        assert!(
            leaves == (1..=n).collect::<Vec<_>>(),
            "leaves must be exactly 1..=n"
        );
        let mut edges = Vec::new();
        collect_edges(self, &mut edges);
        Graph::from_edges(n, &edges).expect("cotree edges are simple")
    }
}

fn collect_edges(t: &Cotree, edges: &mut Vec<(usize, usize)>) {
    match t {
        Cotree::Leaf(_) => {}
        Cotree::Union(children) => {
            for c in children {
                collect_edges(c, edges);
            }
        }
        Cotree::Join(children) => {
            for c in children {
                collect_edges(c, edges);
            }
            for i in 0..children.len() {
                let left = children[i].leaves();
                for right_child in &children[i + 1..] {
                    for &u in &left {
                        for &v in right_child.leaves().iter() {
                            edges.push((u, v));
                        }
                    }
                }
            }
        }
    }
}

/// Builds the union/join decomposition, or `None` when the graph contains an
/// induced 4-vertex path and therefore is not a cograph.
pub fn decompose_cograph(g: &Graph) -> Option<Cotree> {
    if g.n() == 0 {
        return Some(Cotree::Union(Vec::new()));
    }
    decompose_rec(g, &Bits::full(g.n()))
}

fn decompose_rec(g: &Graph, verts: &Bits) -> Option<Cotree> {
    if verts.count() == 1 {
        return Some(Cotree::Leaf(verts.first().expect("nonempty") + 1));
    }
    let comps = components_in(g, verts);
    if comps.len() > 1 {
        let children: Option<Vec<Cotree>> =
            comps.iter().map(|c| decompose_rec(g, c)).collect();
        return Some(Cotree::Union(children?));
    }
    let cocomps = complement_components_in(g, verts);
    if cocomps.len() > 1 {
        let children: Option<Vec<Cotree>> =
            cocomps.iter().map(|c| decompose_rec(g, c)).collect();
        return Some(Cotree::Join(children?));
    }
    None
}

/// Connected components within `verts`, each as a bitset.
fn components_in(g: &Graph, verts: &Bits) -> Vec<Bits> {
    let mut unvisited = verts.clone();
    let mut comps = Vec::new();
    while let Some(start) = unvisited.first() {
        let mut comp = Bits::empty(g.n());
        let mut queue = vec![start];
        unvisited.remove(start);
        comp.insert(start);
        while let Some(v) = queue.pop() {
            let frontier = unvisited.and(g.adj0(v));
            for u in frontier.iter() {
                unvisited.remove(u);
                comp.insert(u);
                queue.push(u);
            }
        }
        comps.push(comp);
    }
    comps
}

/// Components of the complement graph within `verts`, computed on the fly:
/// the complement-neighbors of `v` are the unvisited vertices outside
/// `adj(v)`, so no complement adjacency is ever materialized.
fn complement_components_in(g: &Graph, verts: &Bits) -> Vec<Bits> {
    let mut unvisited = verts.clone();
    let mut comps = Vec::new();
    while let Some(start) = unvisited.first() {
        let mut comp = Bits::empty(g.n());
        let mut queue = vec![start];
        unvisited.remove(start);
        comp.insert(start);
        while let Some(v) = queue.pop() {
            let mut frontier = unvisited.clone();
            frontier.andnot_assign(g.adj0(v));
            for u in frontier.iter() {
                unvisited.remove(u);
                comp.insert(u);
                queue.push(u);
            }
        }
        comps.push(comp);
    }
    comps
}

/// Brute-force scan for an induced 4-vertex path.
pub fn induced_p4_free(g: &Graph) -> bool {
    let n = g.n();
    let vs: Vec<usize> = g.vertices().collect();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    let quad = [vs[a], vs[b], vs[c], vs[d]];
                    if is_induced_path4(g, quad) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

fn is_induced_path4(g: &Graph, quad: [usize; 4]) -> bool {
    let mut degs = [0usize; 4];
    let mut edge_count = 0;
    for i in 0..4 {
        for j in i + 1..4 {
            if g.has_edge(quad[i], quad[j]) {
                degs[i] += 1;
                degs[j] += 1;
                edge_count += 1;
            }
        }
    }
    if edge_count != 3 {
        return false;
    }
    let mut sorted = degs;
    sorted.sort_unstable();
    // 4 vertices, 3 edges, degree profile 1,1,2,2: a path (the alternative
    // with 3 edges, the star, has profile 1,1,1,3).
    sorted == [1, 1, 2, 2]
}

/// Result of comparing two clique partitions in the dominance order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PartitionOrder {
    Less,
    Greater,
    Equal,
    Incomparable,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("partitions cover different vertex sets: n = {left} vs n = {right}")]
pub struct PartitionSizeMismatch {
    pub left: usize,
    pub right: usize,
}

/// Compares two partitions of the same vertex set by the prefix sums of
/// their block sizes taken largest-first, i.e. the majorization order:
/// a partition dominates when, for every j, its j largest blocks cover at
/// least as many vertices. Prefix sums past a partition's block count
/// saturate at `n` (all vertices counted). Dominance-maximal partitions are
/// exactly the edge-optimal ones, which is what makes this order useful.
pub fn preceq_compare(
    px: &CliquePartition,
    py: &CliquePartition,
) -> Result<PartitionOrder, PartitionSizeMismatch> {
    if px.graph_n() != py.graph_n() {
        return Err(PartitionSizeMismatch {
            left: px.graph_n(),
            right: py.graph_n(),
        });
    }
    Ok(compare_profiles(
        &px.sizes_ascending(),
        &py.sizes_ascending(),
        px.graph_n(),
    ))
}

/// Dominance comparison of two size profiles given in ascending order.
pub(crate) fn compare_profiles(xs: &[usize], ys: &[usize], n: usize) -> PartitionOrder {
    let len = xs.len().max(ys.len());
    // Largest-first prefix sums; the ascending input is read from the back.
    let prefix = |sizes: &[usize], j: usize| -> usize {
        if j >= sizes.len() {
            n
        } else {
            sizes[sizes.len() - 1 - j..].iter().sum()
        }
    };
    let mut le = true;
    let mut ge = true;
    for j in 0..len {
        let a = prefix(xs, j);
        let b = prefix(ys, j);
        if a < b {
            ge = false;
        }
        if a > b {
            le = false;
        }
    }
    match (le, ge) {
        (true, true) => PartitionOrder::Equal,
        (true, false) => PartitionOrder::Less,
        (false, true) => PartitionOrder::Greater,
        (false, false) => PartitionOrder::Incomparable,
    }
}

/// Ascending size profiles of every clique partition of `g`; n <= 12.
pub fn clique_partition_profiles(g: &Graph) -> Result<BTreeSet<Vec<usize>>, GuardError> {
    let n = g.n();
    GuardError::check("clique_partition_profiles", n, 12)?;
    let adj: Vec<u32> = (0..n)
        .map(|v| {
            let mut bits = 0u32;
            for u in g.adj0(v).iter() {
                bits |= 1 << u;
            }
            bits
        })
        .collect();
    let full: u32 = if n == 0 { 0 } else { (1 << n) - 1 };
    let mut memo: HashMap<u32, BTreeSet<Vec<usize>>> = HashMap::new();
    Ok(profiles_rec(full, &adj, &mut memo))
}

fn profiles_rec(
    mask: u32,
    adj: &[u32],
    memo: &mut HashMap<u32, BTreeSet<Vec<usize>>>,
) -> BTreeSet<Vec<usize>> {
    if mask == 0 {
        return BTreeSet::from([Vec::new()]);
    }
    if let Some(hit) = memo.get(&mask) {
        return hit.clone();
    }
    let v = mask.trailing_zeros();
    let mut out = BTreeSet::new();
    // Every clique containing the lowest remaining vertex, one block at a time.
    let mut stack: Vec<(u32, u32, u32)> = vec![(1 << v, 1, mask & adj[v as usize])];
    while let Some((clique, size, cand)) = stack.pop() {
        for sub in profiles_rec(mask & !clique, adj, memo) {
            let mut profile = sub;
            let pos = profile
                .binary_search(&(size as usize))
                .unwrap_or_else(|e| e);
            profile.insert(pos, size as usize);
            out.insert(profile);
        }
        let mut options = cand;
        while options != 0 {
            let u = options.trailing_zeros();
            options &= options - 1;
            let higher = if u == 31 { 0 } else { !((1u32 << (u + 1)) - 1) };
            stack.push((
                clique | (1 << u),
                size + 1,
                cand & adj[u as usize] & higher,
            ));
        }
    }
    memo.insert(mask, out.clone());
    out
}

/// True iff no clique partition of `g` strictly dominates `p`.
pub fn is_preceq_maximal(g: &Graph, p: &CliquePartition) -> Result<bool, GuardError> {
    let profile = p.sizes_ascending();
    let n = g.n();
    for other in clique_partition_profiles(g)? {
        if compare_profiles(&profile, &other, n) == PartitionOrder::Less {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Graph realized from a random cotree shape; always a cograph.
pub fn random_cotree_graph(n: usize, seed: u64) -> Graph {
    assert!(n >= 1, "n must be at least 1");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut labels: Vec<usize> = (1..=n).collect();
    labels.shuffle(&mut rng);
    let join_root = rng.random_bool(0.5);
    random_cotree(&labels, join_root, &mut rng).realize()
}

fn random_cotree(labels: &[usize], join: bool, rng: &mut ChaCha8Rng) -> Cotree {
    if labels.len() == 1 {
        return Cotree::Leaf(labels[0]);
    }
    let parts = rng.random_range(2..=labels.len());
    // Random composition: pick parts-1 distinct cut points.
    let mut cuts: Vec<usize> = (1..labels.len()).collect();
    cuts.shuffle(rng);
    cuts.truncate(parts - 1);
    cuts.sort_unstable();
    cuts.push(labels.len());
    let mut children = Vec::with_capacity(parts);
    let mut start = 0;
    for &end in &cuts {
        children.push(random_cotree(&labels[start..end], !join, rng));
        start = end;
    }
    if join {
        Cotree::Join(children)
    } else {
        Cotree::Union(children)
    }
}
