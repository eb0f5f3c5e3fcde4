//! Instance factories: named fixtures, the tight lower-bound family, and
//! seeded random corpora.

use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::choose2;
use crate::graph::{CliquePartition, Graph};
use crate::perm::{build_permutation_graph, Labeling, Permutation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("the tight family requires ell >= 3, got {0}")]
    EllTooSmall(usize),
    #[error("{name} requires k >= 1")]
    KTooSmall { name: &'static str },
}

/// The clique-size schedule of the tight instance `G_ell`.
///
/// `k_seq` starts at `ell` and each entry is the smallest `k` with
/// `ell^2 - (sum so far) <= ell * k`; the sequence stops before the first
/// entry that would drop below 3. `t` is its length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TightFamilySpec {
    pub ell: usize,
    pub k_seq: Vec<usize>,
    pub t: usize,
}

pub fn k_sequence(ell: usize) -> Result<TightFamilySpec, GenError> {
    if ell < 3 {
        return Err(GenError::EllTooSmall(ell));
    }
    let mut k_seq = vec![ell];
    loop {
        let placed: usize = k_seq.iter().sum();
        let remaining = ell * ell - placed;
        let k = remaining.div_ceil(ell);
        if k < 3 {
            break;
        }
        k_seq.push(k);
    }
    let t = k_seq.len();
    Ok(TightFamilySpec { ell, k_seq, t })
}

/// Cell `(row, col)` of the `ell x ell` grid as a 1-indexed vertex id,
/// row-major.
fn cell(ell: usize, row: usize, col: usize) -> usize {
    (row - 1) * ell + col
}

/// The packed cliques of `G_ell`: each takes the next `k_i` unused cells in
/// column-major order (column 1 top to bottom, then column 2, ...).
pub fn packed_blocks(ell: usize) -> Result<Vec<Vec<usize>>, GenError> {
    let spec = k_sequence(ell)?;
    let cells: Vec<usize> = (1..=ell)
        .flat_map(|col| (1..=ell).map(move |row| (row, col)))
        .map(|(row, col)| cell(ell, row, col))
        .collect();
    let mut blocks = Vec::with_capacity(spec.t);
    let mut cursor = 0;
    for &k in &spec.k_seq {
        blocks.push(cells[cursor..cursor + k].to_vec());
        cursor += k;
    }
    Ok(blocks)
}

/// The tight instance: `ell` horizontal row cliques of size `ell` overlaid
/// with the packed cliques of `k_sequence`.
pub fn build_g_ell(ell: usize) -> Result<Graph, GenError> {
    let blocks = packed_blocks(ell)?;
    let n = ell * ell;
    let mut pairs = std::collections::BTreeSet::new();
    for row in 1..=ell {
        for a in 1..=ell {
            for b in a + 1..=ell {
                let (u, v) = (cell(ell, row, a), cell(ell, row, b));
                pairs.insert((u.min(v), u.max(v)));
            }
        }
    }
    for block in &blocks {
        for (i, &u) in block.iter().enumerate() {
            for &v in &block[i + 1..] {
                pairs.insert((u.min(v), u.max(v)));
            }
        }
    }
    let edges: Vec<(usize, usize)> = pairs.into_iter().collect();
    Ok(Graph::from_edges(n, &edges).expect("grid edges are simple"))
}

/// The row partition of `G_ell`, which is optimal.
pub fn row_partition(ell: usize) -> Result<CliquePartition, GenError> {
    if ell < 3 {
        return Err(GenError::EllTooSmall(ell));
    }
    let blocks: Vec<Vec<usize>> = (1..=ell)
        .map(|row| (1..=ell).map(|col| cell(ell, row, col)).collect())
        .collect();
    Ok(CliquePartition::new(blocks, ell * ell))
}

/// Closed-form edge counts of the tight family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TightFamilyEdges {
    /// Optimal partition edges: `ell * C(ell, 2)`.
    pub opt: u64,
    /// Edges of the adversarial run: packed cliques plus the size-2 blocks.
    pub greedy_edges: u64,
    /// `((C(ell,2)+1) / (2 C(ell,2))) * (opt / greedy_edges)`; tends to 1.
    pub ratio_product: Ratio<i128>,
}

pub fn tight_family_edges(ell: usize) -> Result<TightFamilyEdges, GenError> {
    let spec = k_sequence(ell)?;
    let sum_k: u64 = spec.k_seq.iter().map(|&k| k as u64).sum();
    let packed: u64 = spec.k_seq.iter().map(|&k| choose2(k) as u64).sum();
    let opt = ell as u64 * choose2(ell) as u64;
    let greedy_edges = packed + (ell as u64) * (ell as u64 - 1) - sum_k;
    let c = choose2(ell) as i128;
    let ratio_product = Ratio::new(c + 1, 2 * c) * Ratio::new(opt as i128, greedy_edges as i128);
    Ok(TightFamilyEdges {
        opt,
        greedy_edges,
        ratio_product,
    })
}

/// Matching size of the residual left after removing the packed cliques,
/// both as the closed form `ell*(ell-1) - sum(k_i)` and as an actual maximum
/// matching on the residual graph. The two are expected to agree; callers
/// should report any divergence rather than assume the formula.
pub fn residual_matching_counts(ell: usize) -> Result<(u64, usize), GenError> {
    let spec = k_sequence(ell)?;
    let sum_k: u64 = spec.k_seq.iter().map(|&k| k as u64).sum();
    let formula = (ell as u64) * (ell as u64 - 1) - sum_k;

    let g = build_g_ell(ell)?;
    let mut removed = vec![false; g.n()];
    for block in packed_blocks(ell)? {
        for v in block {
            removed[v - 1] = true;
        }
    }
    let residual: Vec<usize> = g.vertices().filter(|&v| !removed[v - 1]).collect();
    let (sub, _) = g.induced(&residual);
    let structural = crate::matching::max_matching(&sub).len();
    Ok((formula, structural))
}

/// The 4-vertex path fixture, value-labeled from the permutation
/// `[3,1,4,2]`: edges {1,3}, {2,3}, {2,4}.
pub fn p4_path() -> Graph {
    let p = Permutation::new(vec![3, 1, 4, 2]).expect("valid permutation");
    build_permutation_graph(&p, Labeling::Value)
}

/// The 7-vertex, 8-edge fixture generated by `[2,5,4,1,7,3,6]`. Its two
/// maximum cliques tie on every local criterion, yet only one of them starts
/// an optimal partition.
pub fn seven_vertex() -> Graph {
    let p = Permutation::new(vec![2, 5, 4, 1, 7, 3, 6]).expect("valid permutation");
    build_permutation_graph(&p, Labeling::Value)
}

/// Permutation `[2, 4, ..., 2k, 2k-1, 2k-3, ..., 1]`: the even values
/// ascending, then the odd values descending. Processing vertices in index
/// order pairs them off into k edges, while the optimum has C(k+1, 2).
pub fn staircase(k: usize) -> Result<Permutation, GenError> {
    if k < 1 {
        return Err(GenError::KTooSmall { name: "staircase" });
    }
    let mut seq: Vec<usize> = (1..=k).map(|i| 2 * i).collect();
    seq.extend((1..=k).rev().map(|i| 2 * i - 1));
    Ok(Permutation::new(seq).expect("constructed bijection"))
}

/// Permutation `[2k, 1, 2k-1, 2, ..., k+1, k]`: high and low values
/// alternating inward. Processing vertices in sequence order pairs them off
/// into k edges, while the optimum has C(k+1, 2).
pub fn zigzag(k: usize) -> Result<Permutation, GenError> {
    if k < 1 {
        return Err(GenError::KTooSmall { name: "zigzag" });
    }
    let mut seq = Vec::with_capacity(2 * k);
    for i in 0..k {
        seq.push(2 * k - i);
        seq.push(i + 1);
    }
    Ok(Permutation::new(seq).expect("constructed bijection"))
}

/// Named fixture dispatch for the command-line front end.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fixture {
    P4Path,
    SevenVertex,
    Staircase(usize),
    Zigzag(usize),
}

pub enum Instance {
    Graph(Graph),
    Permutation(Permutation),
}

pub fn fixture(which: Fixture) -> Result<Instance, GenError> {
    Ok(match which {
        Fixture::P4Path => Instance::Graph(p4_path()),
        Fixture::SevenVertex => Instance::Graph(seven_vertex()),
        Fixture::Staircase(k) => Instance::Permutation(staircase(k)?),
        Fixture::Zigzag(k) => Instance::Permutation(zigzag(k)?),
    })
}

/// Seed-deterministic graph with each edge present independently with the
/// given probability.
pub fn random_graph(n: usize, density: f64, seed: u64) -> Graph {
    assert!((0.0..=1.0).contains(&density), "density must be in [0, 1]");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 1..=n {
        for v in u + 1..=n {
            if rng.random_bool(density) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("generated edges are simple")
}

/// Seed-deterministic triangle-free graph: candidate edges are tried in a
/// shuffled order and kept only when the endpoints have no common neighbor.
/// Odd cycles survive, so the matching phase genuinely needs blossoms.
pub fn random_triangle_free(n: usize, density: f64, seed: u64) -> Graph {
    assert!((0.0..=1.0).contains(&density), "density must be in [0, 1]");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut candidates: Vec<(usize, usize)> = (1..=n)
        .flat_map(|u| (u + 1..=n).map(move |v| (u, v)))
        .collect();
    candidates.shuffle(&mut rng);
    let mut adj: Vec<std::collections::BTreeSet<usize>> = vec![Default::default(); n + 1];
    let mut edges = Vec::new();
    for (u, v) in candidates {
        if !rng.random_bool(density) {
            continue;
        }
        if adj[u].intersection(&adj[v]).next().is_some() {
            continue;
        }
        adj[u].insert(v);
        adj[v].insert(u);
        edges.push((u, v));
    }
    edges.sort_unstable();
    Graph::from_edges(n, &edges).expect("generated edges are simple")
}

/// Seed-deterministic uniform random permutation.
pub fn random_permutation(n: usize, seed: u64) -> Permutation {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seq: Vec<usize> = (1..=n).collect();
    seq.shuffle(&mut rng);
    Permutation::new(seq).expect("shuffle preserves bijection")
}

/// Seed-deterministic random partition of `1..=n` into blocks. The blocks
/// are arbitrary vertex sets, i.e. a clique partition of the complete graph;
/// use it to exercise machinery that depends only on block sizes.
pub fn random_partition(n: usize, seed: u64) -> CliquePartition {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut verts: Vec<usize> = (1..=n).collect();
    verts.shuffle(&mut rng);
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut start = 0;
    while start < n {
        let size = rng.random_range(1..=(n - start).min(5));
        blocks.push(verts[start..start + size].to_vec());
        start += size;
    }
    CliquePartition::new(blocks, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cliques::{clique_stats, exact_partition};
    use crate::graph::validate_partition;
    use num_traits::ToPrimitive;

    #[test]
    fn k_sequence_values() {
        assert_eq!(k_sequence(6).unwrap().k_seq, vec![6, 5, 5, 4, 3, 3]);
        assert_eq!(k_sequence(3).unwrap().k_seq, vec![3]);
        assert_eq!(k_sequence(4).unwrap().k_seq, vec![4, 3, 3]);
        for ell in 3..=12 {
            assert_eq!(k_sequence(ell).unwrap().k_seq[0], ell);
        }
        assert_eq!(k_sequence(2), Err(GenError::EllTooSmall(2)));
    }

    #[test]
    fn g_ell_shape() {
        let g = build_g_ell(6).unwrap();
        assert_eq!(g.n(), 36);
        // 6 row cliques plus packed cliques of sizes 6,5,5,4,3,3, disjoint
        // from the rows pair-wise.
        assert_eq!(g.m(), 6 * 15 + (15 + 10 + 10 + 6 + 3 + 3));
    }

    #[test]
    fn g_ell_clique_number() {
        for ell in 3..=8 {
            let g = build_g_ell(ell).unwrap();
            assert_eq!(clique_stats(&g).omega, ell, "clique number at ell={ell}");
        }
    }

    #[test]
    fn row_partition_is_optimal_where_the_oracle_reaches() {
        for ell in [3usize, 4] {
            let g = build_g_ell(ell).unwrap();
            let rows = row_partition(ell).unwrap();
            assert_eq!(validate_partition(&g, &rows), Ok(()));
            let opt = exact_partition(&g).unwrap().internal_edges();
            assert_eq!(opt, rows.internal_edges());
            assert_eq!(opt, ell * choose2(ell));
        }
    }

    #[test]
    fn tight_family_closed_forms() {
        let e = tight_family_edges(6).unwrap();
        assert_eq!((e.opt, e.greedy_edges), (90, 51));
        let r = e.ratio_product.to_f64().unwrap();
        assert!((r - 0.941).abs() < 1e-3);

        assert_eq!(tight_family_edges(3).unwrap().greedy_edges, 6);
        assert_eq!(tight_family_edges(4).unwrap().greedy_edges, 14);
        assert_eq!(tight_family_edges(5).unwrap().greedy_edges, 29);
    }

    #[test]
    fn ratio_product_tends_to_one() {
        for ell in [3usize, 4] {
            let r = tight_family_edges(ell).unwrap().ratio_product;
            assert_eq!(r, Ratio::new(1, 1), "exactly tight at ell={ell}");
        }
        let far = tight_family_edges(200).unwrap().ratio_product.to_f64().unwrap();
        assert!((1.0 - far).abs() < 0.005);
    }

    #[test]
    fn residual_matching_agrees_with_formula() {
        for ell in 3..=8 {
            let (formula, structural) = residual_matching_counts(ell).unwrap();
            assert_eq!(formula as usize, structural, "divergence at ell={ell}");
        }
    }

    #[test]
    fn fixtures() {
        let p4 = p4_path();
        assert_eq!((p4.n(), p4.m()), (4, 3));
        let seven = seven_vertex();
        assert_eq!((seven.n(), seven.m()), (7, 8));
        assert_eq!(staircase(3).unwrap().values(), &[2, 4, 6, 5, 3, 1]);
        assert_eq!(zigzag(3).unwrap().values(), &[6, 1, 5, 2, 4, 3]);
        assert_eq!(staircase(1).unwrap().values(), &[2, 1]);
        assert!(staircase(0).is_err());
        assert!(matches!(
            fixture(Fixture::Staircase(2)),
            Ok(Instance::Permutation(_))
        ));
    }

    #[test]
    fn random_graph_density_extremes() {
        assert_eq!(random_graph(8, 0.0, 1).m(), 0);
        assert_eq!(random_graph(8, 1.0, 1).m(), choose2(8));
    }

    #[test]
    fn random_graph_is_deterministic() {
        let a = random_graph(10, 0.5, 7);
        let b = random_graph(10, 0.5, 7);
        assert_eq!(a.edges(), b.edges());
        let c = random_graph(10, 0.5, 8);
        assert_ne!(a.edges(), c.edges());
    }

    #[test]
    fn triangle_free_generator() {
        for seed in 0..50 {
            let g = random_triangle_free(12, 0.5, seed);
            assert!(clique_stats(&g).omega <= 2, "triangle on seed {seed}");
        }
        // Odd cycles do occur: at least one instance should need a blossom,
        // i.e. contain an odd cycle of length >= 5. A quick proxy: some
        // instance has more edges than a bipartite matching would expose via
        // two-coloring failure.
        let odd = (0..50).any(|seed| {
            let g = random_triangle_free(12, 0.5, seed);
            !is_bipartite(&g)
        });
        assert!(odd, "expected some non-bipartite triangle-free instance");
    }

    fn is_bipartite(g: &Graph) -> bool {
        let n = g.n();
        let mut colour = vec![u8::MAX; n + 1];
        for start in 1..=n {
            if colour[start] != u8::MAX {
                continue;
            }
            colour[start] = 0;
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for v in g.neighbors(u) {
                    if colour[v] == u8::MAX {
                        colour[v] = 1 - colour[u];
                        queue.push_back(v);
                    } else if colour[v] == colour[u] {
                        return false;
                    }
                }
            }
        }
        true
    }

    #[test]
    fn random_partition_covers_everything() {
        for seed in 0..20 {
            let p = random_partition(9, seed);
            let g = Graph::complete(9);
            assert_eq!(validate_partition(&g, &p), Ok(()));
        }
    }
}
