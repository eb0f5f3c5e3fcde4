//! Maximum cliques, maximum-clique enumeration, and the exact
//! clique-partition oracle.
//!
//! `max_clique` is branch-and-bound over bitset adjacency with a greedy
//! colouring upper bound; the greedy solvers call it once per removed block,
//! so it is the hot path. `exact_partition` is a memoized recursion over
//! vertex subsets and serves as the optimum oracle in every bound check.

use std::collections::HashMap;

use crate::bits::Bits;
use crate::choose2;
use crate::graph::{CliquePartition, Graph};
use crate::GuardError;

/// Vertex and edge counts of a maximum clique.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CliqueStats {
    pub omega: usize,
    pub omega_prime: usize,
}

/// Computes `omega` and `omega' = C(omega, 2)`.
pub fn clique_stats(g: &Graph) -> CliqueStats {
    let omega = max_clique_in(g, &Bits::full(g.n())).len();
    CliqueStats {
        omega,
        omega_prime: choose2(omega),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("max_clique requires a nonempty graph")]
pub struct EmptyGraph;

/// A maximum-cardinality clique, sorted ascending. Deterministic: the search
/// examines candidates in a fixed order and keeps the first best clique.
pub fn max_clique(g: &Graph) -> Result<Vec<usize>, EmptyGraph> {
    if g.n() == 0 {
        return Err(EmptyGraph);
    }
    Ok(max_clique_in(g, &Bits::full(g.n())))
}

/// Maximum clique restricted to `mask` (0-indexed bits); empty mask gives
/// an empty clique. Returns 1-indexed vertices, ascending.
pub(crate) fn max_clique_in(g: &Graph, mask: &Bits) -> Vec<usize> {
    let mut best: Vec<usize> = Vec::new();
    let mut cur: Vec<usize> = Vec::new();
    expand(g, mask, &mut cur, &mut best);
    let mut out: Vec<usize> = best.iter().map(|v| v + 1).collect();
    out.sort_unstable();
    out
}

/// Greedy colouring of `p`: returns (vertex, colour) with colours ascending.
/// Any clique inside `p` uses pairwise distinct colours, so the colour of a
/// vertex bounds the largest clique among it and the vertices listed before.
fn colour_order(g: &Graph, p: &Bits) -> Vec<(usize, usize)> {
    let mut classes: Vec<Bits> = Vec::new();
    for v in p.iter() {
        match classes.iter_mut().find(|c| !c.intersects(g.adj0(v))) {
            Some(class) => class.insert(v),
            None => {
                let mut class = Bits::empty(g.n());
                class.insert(v);
                classes.push(class);
            }
        }
    }
    let mut seq = Vec::with_capacity(p.count());
    for (ci, class) in classes.iter().enumerate() {
        for v in class.iter() {
            seq.push((v, ci + 1));
        }
    }
    seq
}

fn expand(g: &Graph, p: &Bits, cur: &mut Vec<usize>, best: &mut Vec<usize>) {
    let seq = colour_order(g, p);
    let mut avail = p.clone();
    for &(v, colour) in seq.iter().rev() {
        if cur.len() + colour <= best.len() {
            return; // everything remaining has an equal or smaller colour
        }
        avail.remove(v);
        cur.push(v);
        let next = avail.and(g.adj0(v));
        if next.is_empty() {
            if cur.len() > best.len() {
                *best = cur.clone();
            }
        } else {
            expand(g, &next, cur, best);
        }
        cur.pop();
    }
}

/// True iff `mask` contains a clique of at least `need` vertices; stops at
/// the first witness instead of optimizing.
pub(crate) fn has_clique_of_size(g: &Graph, mask: &Bits, need: usize) -> bool {
    if need == 0 {
        return true;
    }
    if mask.count() < need {
        return false;
    }
    feasible(g, mask, 0, need)
}

fn feasible(g: &Graph, p: &Bits, have: usize, need: usize) -> bool {
    let seq = colour_order(g, p);
    let mut avail = p.clone();
    for &(v, colour) in seq.iter().rev() {
        if have + colour < need {
            return false;
        }
        if have + 1 == need {
            return true;
        }
        avail.remove(v);
        let next = avail.and(g.adj0(v));
        if feasible(g, &next, have + 1, need) {
            return true;
        }
    }
    false
}

/// The lexicographically least clique of the given size within `mask`,
/// built by fixing the smallest vertex that still extends to a full-size
/// clique. Avoids enumerating the (possibly huge) set of maximum cliques.
/// `size` must not exceed the clique number of the masked graph.
pub(crate) fn lex_least_clique_of_size(g: &Graph, mask: &Bits, size: usize) -> Vec<usize> {
    let mut fixed: Vec<usize> = Vec::with_capacity(size);
    let mut cand = mask.clone();
    while fixed.len() < size {
        let mut progressed = false;
        for v in cand.clone().iter() {
            let rest = cand.and(g.adj0(v));
            if has_clique_of_size(g, &rest, size - fixed.len() - 1) {
                fixed.push(v + 1);
                cand = rest;
                progressed = true;
                break;
            }
            // v cannot be part of any full-size completion of the prefix.
            cand.remove(v);
        }
        assert!(progressed, "a clique of the requested size always completes");
    }
    fixed
}

/// All maximum-size cliques, sorted lexicographically, truncated at `cap`
/// sets with a truncation flag.
pub fn enumerate_max_cliques(g: &Graph, cap: usize) -> (Vec<Vec<usize>>, bool) {
    enumerate_max_cliques_in(g, &Bits::full(g.n()), cap)
}

pub(crate) fn enumerate_max_cliques_in(
    g: &Graph,
    mask: &Bits,
    cap: usize,
) -> (Vec<Vec<usize>>, bool) {
    assert!(cap >= 1, "cap must be at least 1");
    let omega = max_clique_in(g, mask).len();
    if omega == 0 {
        return (Vec::new(), false);
    }
    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut r: Vec<usize> = Vec::new();
    let truncated = !bron_kerbosch(
        g,
        &mut r,
        mask.clone(),
        Bits::empty(g.n()),
        omega,
        cap,
        &mut out,
    );
    out.sort();
    (out, truncated)
}

/// Pivoted Bron-Kerbosch, pruned to cliques that can still reach `omega`.
/// Returns false once the output cap is hit.
fn bron_kerbosch(
    g: &Graph,
    r: &mut Vec<usize>,
    mut p: Bits,
    mut x: Bits,
    omega: usize,
    cap: usize,
    out: &mut Vec<Vec<usize>>,
) -> bool {
    if r.len() + p.count() < omega {
        return true;
    }
    if p.is_empty() && x.is_empty() {
        if r.len() == omega {
            if out.len() == cap {
                return false;
            }
            let mut clique: Vec<usize> = r.iter().map(|v| v + 1).collect();
            clique.sort_unstable();
            out.push(clique);
        }
        return true;
    }
    let pivot = p
        .iter()
        .chain(x.iter())
        .max_by_key(|&u| (p.and_count(g.adj0(u)), std::cmp::Reverse(u)))
        .expect("p or x nonempty");
    let mut todo = p.clone();
    todo.andnot_assign(g.adj0(pivot));
    for v in todo.iter() {
        r.push(v);
        let keep = bron_kerbosch(
            g,
            r,
            p.and(g.adj0(v)),
            x.and(g.adj0(v)),
            omega,
            cap,
            out,
        );
        r.pop();
        if !keep {
            return false;
        }
        p.remove(v);
        x.insert(v);
    }
    true
}

/// Optimal clique partition by memoized recursion over vertex subsets.
/// Candidate blocks are restricted to cliques containing the lowest
/// remaining vertex, which removes the symmetry over block orderings.
/// Guarded at n = 20.
pub fn exact_partition(g: &Graph) -> Result<CliquePartition, GuardError> {
    let n = g.n();
    GuardError::check("exact_partition", n, 20)?;
    if n == 0 {
        return Ok(CliquePartition::new(Vec::new(), 0));
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
    let mut memo: HashMap<u32, (u32, u32)> = HashMap::new();

    fn cliques_containing_min(
        clique: u32,
        size: u32,
        cand: u32,
        rest: u32,
        adj: &[u32],
        memo: &mut HashMap<u32, (u32, u32)>,
    ) -> (u32, u32) {
        // The current clique itself is a candidate block.
        let mut best = (
            size * size.saturating_sub(1) / 2 + solve(rest & !clique, adj, memo),
            clique,
        );
        let mut options = cand;
        while options != 0 {
            let u = options.trailing_zeros();
            options &= options - 1;
            // Extend only with higher-indexed vertices so each clique is
            // enumerated exactly once.
            let higher = if u == 31 { 0 } else { !((1u32 << (u + 1)) - 1) };
            let sub = cliques_containing_min(
                clique | (1 << u),
                size + 1,
                cand & adj[u as usize] & higher,
                rest,
                adj,
                memo,
            );
            if sub.0 > best.0 {
                best = sub;
            }
        }
        best
    }

    fn solve(mask: u32, adj: &[u32], memo: &mut HashMap<u32, (u32, u32)>) -> u32 {
        if mask == 0 {
            return 0;
        }
        if let Some(&(best, _)) = memo.get(&mask) {
            return best;
        }
        let v = mask.trailing_zeros();
        let (best, block) =
            cliques_containing_min(1 << v, 1, mask & adj[v as usize], mask, adj, memo);
        memo.insert(mask, (best, block));
        best
    }

    let _ = solve(full, &adj, &mut memo);

    let mut blocks = Vec::new();
    let mut mask = full;
    while mask != 0 {
        let (_, block) = memo[&mask];
        let mut verts = Vec::new();
        let mut b = block;
        while b != 0 {
            let v = b.trailing_zeros() as usize;
            b &= b - 1;
            verts.push(v + 1);
        }
        blocks.push(verts);
        mask &= !block;
    }
    Ok(CliquePartition::new(blocks, n))
}

/// Residual edge count of a partition after the `k` vertex deletions that
/// hurt it most: each step removes one vertex from a currently largest
/// block, which deletes the most edges possible in that step.
pub fn lambda_min_greedy(p: &CliquePartition, k: usize) -> usize {
    let mut sizes: Vec<usize> = p.blocks().iter().map(|b| b.len()).collect();
    let k = k.min(p.graph_n());
    for _ in 0..k {
        if let Some(i) = (0..sizes.len()).max_by_key(|&i| sizes[i]) {
            if sizes[i] > 0 {
                sizes[i] -= 1;
            }
        }
    }
    sizes.iter().map(|&s| choose2(s)).sum()
}

/// Same quantity by exhausting all k-subsets of the vertex set; n <= 18.
pub fn lambda_min_brute(p: &CliquePartition, k: usize) -> Result<usize, GuardError> {
    Ok(lambda_brute_impl(p, k)?.0)
}

/// All optimal deletion sets found by the exhaustive search, as sorted
/// vertex lists.
pub fn lambda_min_brute_witnesses(
    p: &CliquePartition,
    k: usize,
) -> Result<Vec<Vec<usize>>, GuardError> {
    Ok(lambda_brute_impl(p, k)?.1)
}

fn lambda_brute_impl(
    p: &CliquePartition,
    k: usize,
) -> Result<(usize, Vec<Vec<usize>>), GuardError> {
    let n = p.graph_n();
    GuardError::check("lambda_min_brute", n, 18)?;
    assert!(k <= n, "k must be at most n");
    let block_of = block_index_map(p);
    let sizes: Vec<usize> = p.blocks().iter().map(|b| b.len()).collect();

    if k == 0 {
        return Ok((p.internal_edges(), vec![Vec::new()]));
    }
    let mut best = usize::MAX;
    let mut witnesses: Vec<Vec<usize>> = Vec::new();
    // Gosper's hack over all k-subsets of n bits.
    let limit: u32 = 1 << n;
    let mut subset: u32 = (1 << k) - 1;
    while subset < limit {
        let mut removed = vec![0usize; sizes.len()];
        let mut bits = subset;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            removed[block_of[v]] += 1;
        }
        let edges: usize = sizes
            .iter()
            .zip(&removed)
            .map(|(&s, &r)| choose2(s - r))
            .sum();
        if edges < best {
            best = edges;
            witnesses.clear();
        }
        if edges == best {
            let mut verts: Vec<usize> = Vec::with_capacity(k);
            let mut bits = subset;
            while bits != 0 {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                verts.push(v + 1);
            }
            witnesses.push(verts);
        }
        // Next subset with the same popcount.
        let c = subset & subset.wrapping_neg();
        let r = subset + c;
        subset = (((r ^ subset) >> 2) / c) | r;
    }
    Ok((best, witnesses))
}

fn block_index_map(p: &CliquePartition) -> Vec<usize> {
    let mut block_of = vec![usize::MAX; p.graph_n()];
    for (bi, b) in p.blocks().iter().enumerate() {
        for &v in b {
            block_of[v - 1] = bi;
        }
    }
    block_of
}

/// True iff `c` can be ordered `c_1, ..., c_k` so that each `c_i` lies in a
/// largest block of the partition with `c_1, ..., c_{i-1}` already removed.
///
/// Greedy decision procedure: repeatedly take any remaining vertex of `c`
/// that sits in a currently largest block. An exchange argument shows any
/// such choice is safe, so the greedy run fails only when no ordering exists.
pub fn check_removal_ordering(p: &CliquePartition, c: &[usize]) -> bool {
    let block_of = block_index_map(p);
    let mut sizes: Vec<usize> = p.blocks().iter().map(|b| b.len()).collect();
    let mut remaining: Vec<usize> = c.to_vec();
    remaining.sort_unstable();
    remaining.dedup();
    if remaining
        .iter()
        .any(|&v| v == 0 || v > p.graph_n() || block_of[v - 1] == usize::MAX)
    {
        return false;
    }
    while !remaining.is_empty() {
        let max_size = *sizes.iter().max().expect("nonempty partition");
        let pick = remaining
            .iter()
            .position(|&v| sizes[block_of[v - 1]] == max_size);
        match pick {
            Some(i) => {
                let v = remaining.remove(i);
                sizes[block_of[v - 1]] -= 1;
            }
            None => return false,
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;
    use crate::graph::validate_partition;

    #[test]
    fn max_clique_examples() {
        assert_eq!(max_clique(&Graph::complete(5)).unwrap().len(), 5);
        assert_eq!(max_clique(&generate::seven_vertex()).unwrap().len(), 3);
        let c5 = Graph::from_edges(5, &[(1, 2), (2, 3), (3, 4), (4, 5), (1, 5)]).unwrap();
        assert_eq!(max_clique(&c5).unwrap().len(), 2);
        assert!(max_clique(&Graph::edgeless(0)).is_err());
    }

    #[test]
    fn stats() {
        let s = clique_stats(&generate::seven_vertex());
        assert_eq!(s, CliqueStats { omega: 3, omega_prime: 3 });
    }

    #[test]
    fn enumerate_examples() {
        let (cliques, truncated) = enumerate_max_cliques(&generate::seven_vertex(), 1_000_000);
        assert!(!truncated);
        assert_eq!(cliques, vec![vec![1, 4, 5], vec![3, 4, 5]]);

        let (cliques, _) = enumerate_max_cliques(&generate::p4_path(), 1_000_000);
        assert_eq!(cliques, vec![vec![1, 3], vec![2, 3], vec![2, 4]]);

        let (cliques, _) = enumerate_max_cliques(&Graph::complete(6), 10);
        assert_eq!(cliques, vec![vec![1, 2, 3, 4, 5, 6]]);
    }

    #[test]
    fn enumerate_truncates() {
        let (cliques, truncated) = enumerate_max_cliques(&generate::p4_path(), 1);
        assert_eq!(cliques.len(), 1);
        assert!(truncated);
    }

    #[test]
    fn max_clique_agrees_with_subset_brute_force() {
        for seed in 0..200 {
            let n = 1 + (seed as usize % 10);
            let g = generate::random_graph(n, [0.2, 0.5, 0.8][seed as usize % 3], seed + 900);
            let fast = max_clique(&g).unwrap().len();
            let mut brute = 0usize;
            for mask in 1u32..(1 << n) {
                let verts: Vec<usize> =
                    (0..n).filter(|&v| mask >> v & 1 == 1).map(|v| v + 1).collect();
                if crate::graph::is_clique(&g, &verts).unwrap() {
                    brute = brute.max(verts.len());
                }
            }
            assert_eq!(fast, brute, "mismatch on seed {seed}");
        }
    }

    #[test]
    fn lex_least_clique_matches_enumeration_minimum() {
        for seed in 0..150 {
            let n = 1 + (seed as usize % 12);
            let g = generate::random_graph(n, [0.2, 0.5, 0.8][seed as usize % 3], seed + 4500);
            let mask = Bits::full(n);
            let omega = max_clique_in(&g, &mask).len();
            let direct = lex_least_clique_of_size(&g, &mask, omega);
            let (all, truncated) = enumerate_max_cliques(&g, 1_000_000);
            assert!(!truncated);
            assert_eq!(Some(&direct), all.iter().min(), "seed {seed}");
        }
    }

    #[test]
    fn exact_partition_examples() {
        let g = generate::seven_vertex();
        let p = exact_partition(&g).unwrap();
        assert_eq!(validate_partition(&g, &p), Ok(()));
        assert_eq!(p.internal_edges(), 5);

        let p4 = generate::p4_path();
        let p = exact_partition(&p4).unwrap();
        assert_eq!(p.internal_edges(), 2);
        assert_eq!(p.blocks(), &[vec![1, 3], vec![2, 4]]);

        assert_eq!(exact_partition(&Graph::complete(4)).unwrap().internal_edges(), 6);
        assert!(exact_partition(&Graph::edgeless(21)).is_err());
    }

    #[test]
    fn exact_partition_invariant_under_relabeling() {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for seed in 0..40 {
            let n = 2 + (seed as usize % 9);
            let g = generate::random_graph(n, 0.5, seed + 40);
            let mut relabel: Vec<usize> = (1..=n).collect();
            relabel.shuffle(&mut rng);
            let edges: Vec<(usize, usize)> = g
                .edges()
                .into_iter()
                .map(|(u, v)| (relabel[u - 1], relabel[v - 1]))
                .collect();
            let h = Graph::from_edges(n, &edges).unwrap();
            assert_eq!(
                exact_partition(&g).unwrap().internal_edges(),
                exact_partition(&h).unwrap().internal_edges()
            );
        }
    }

    #[test]
    fn lambda_examples() {
        // One triangle block and one edge block.
        let p = CliquePartition::new(vec![vec![1, 2, 3], vec![4, 5]], 5);
        assert_eq!(lambda_min_brute(&p, 1).unwrap(), 2);
        assert_eq!(lambda_min_greedy(&p, 1), 2);
        assert_eq!(lambda_min_brute(&p, 0).unwrap(), p.internal_edges());
        assert_eq!(lambda_min_brute(&p, 5).unwrap(), 0);
        assert_eq!(lambda_min_greedy(&p, 5), 0);
    }

    #[test]
    fn removal_ordering_examples() {
        let p = CliquePartition::new(vec![vec![1, 2, 3], vec![4, 5]], 5);
        assert!(check_removal_ordering(&p, &[1]));
        assert!(!check_removal_ordering(&p, &[4]));
        assert!(check_removal_ordering(&p, &[]));
        // Both triangle vertices can be ordered; the edge vertex only after
        // the triangle has shrunk to size two... removing 1 then 4 works.
        assert!(check_removal_ordering(&p, &[1, 4]));
    }

    #[test]
    fn brute_optimal_sets_admit_removal_orderings() {
        for seed in 0..60u64 {
            let p = generate::random_partition(8, seed);
            for k in 0..=4 {
                let lam = lambda_min_brute(&p, k).unwrap();
                assert_eq!(lambda_min_greedy(&p, k), lam, "greedy/brute mismatch");
                for c in lambda_min_brute_witnesses(&p, k).unwrap() {
                    assert!(
                        check_removal_ordering(&p, &c),
                        "witness {c:?} rejected for partition {p:?}, k={k}"
                    );
                }
            }
        }
    }
}
