//! The greedy solver family and its analysis machinery.
//!
//! All three solvers repeatedly remove a maximum clique from the residual
//! graph. They differ in how ties between maximum cliques are broken and in
//! how the endgame is played:
//!
//! - `greedy`: any tie-break rule, runs until the graph is empty.
//! - `smart_greedy`: restricts the choice to maximum cliques with the fewest
//!   edges leaving the clique (locally cheapest), remaining ties by rule.
//! - `greedy_edmonds`: greedy while the residual clique number is at least
//!   three, then finishes with a maximum matching, which is optimal on the
//!   triangle-free remainder.
//!
//! `all_executions` explores every tie-break branch and returns the set of
//! reachable outcomes; the named fixture instances show that different
//! branches can differ in quality, so single runs never tell the whole story.

use std::collections::{BTreeSet, HashMap, HashSet};

use crate::bits::Bits;
use crate::cliques::{self, enumerate_max_cliques_in, max_clique_in};
use crate::graph::{validate_partition, CliquePartition, Graph, PartitionViolation};
use crate::matching;
use crate::perm::{build_permutation_graph, Labeling, Permutation};
use crate::GuardError;

/// Tie-break policy among candidate maximum cliques.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TieBreakRule {
    /// Smallest sorted vertex list wins.
    Lexicographic,
    /// Fewest edges leaving the clique, then lexicographic.
    MinDeltaThenLex,
    /// Not a policy: marker used to request exploration of every branch.
    BranchAll,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlgKind {
    Greedy,
    SmartGreedy,
    GreedyEdmonds,
}

const ENUMERATION_CAP: usize = 1_000_000;

/// Edges of the residual graph with exactly one end in `block`.
fn delta_in(g: &Graph, live: &Bits, block: &[usize]) -> usize {
    let inside = Bits::from_indices(g.n(), block.iter().map(|&v| v - 1));
    block
        .iter()
        .map(|&v| {
            let mut out = live.and(g.adj0(v - 1));
            out.andnot_assign(&inside);
            out.count()
        })
        .sum()
}

fn pick_block(
    g: &Graph,
    live: &Bits,
    mut candidates: Vec<Vec<usize>>,
    restrict_min_delta: bool,
    tie: TieBreakRule,
) -> Vec<usize> {
    assert!(
        tie != TieBreakRule::BranchAll,
        "BranchAll is only meaningful for all_executions"
    );
    if restrict_min_delta || tie == TieBreakRule::MinDeltaThenLex {
        let best = candidates
            .iter()
            .map(|c| delta_in(g, live, c))
            .min()
            .expect("at least one candidate");
        candidates.retain(|c| delta_in(g, live, c) == best);
    }
    candidates.into_iter().min().expect("at least one candidate")
}

fn matching_finish(g: &Graph, live: &Bits, blocks: &mut Vec<Vec<usize>>) {
    let verts: Vec<usize> = live.iter().map(|v| v + 1).collect();
    let (sub, labels) = g.induced(&verts);
    let matched = matching::max_matching(&sub);
    let mut used = vec![false; verts.len()];
    for &(u, v) in matched.edges() {
        used[u - 1] = true;
        used[v - 1] = true;
        blocks.push(vec![labels[u - 1], labels[v - 1]]);
    }
    for (i, &orig) in labels.iter().enumerate() {
        if !used[i] {
            blocks.push(vec![orig]);
        }
    }
}

fn run(g: &Graph, alg: AlgKind, tie: TieBreakRule) -> CliquePartition {
    let n = g.n();
    let mut live = Bits::full(n);
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut last_omega = usize::MAX;
    while !live.is_empty() {
        let best = max_clique_in(g, &live);
        let omega = best.len();
        debug_assert!(omega <= last_omega, "residual clique number increased");
        last_omega = omega;
        if alg == AlgKind::GreedyEdmonds && omega <= 2 {
            matching_finish(g, &live, &mut blocks);
            break;
        }
        if omega <= 1 {
            // Edgeless remainder: removal order does not matter.
            for v in live.iter() {
                blocks.push(vec![v + 1]);
            }
            break;
        }
        let block = if alg != AlgKind::SmartGreedy && tie == TieBreakRule::Lexicographic {
            // The least maximum clique is constructed directly; listing all
            // maximum cliques first can blow up on dense instances.
            cliques::lex_least_clique_of_size(g, &live, omega)
        } else {
            let (candidates, _) = enumerate_max_cliques_in(g, &live, ENUMERATION_CAP);
            pick_block(g, &live, candidates, alg == AlgKind::SmartGreedy, tie)
        };
        for &v in &block {
            live.remove(v - 1);
        }
        blocks.push(block);
    }
    CliquePartition::new(blocks, n)
}

/// Repeatedly removes a maximum clique chosen by the tie-break rule.
pub fn greedy(g: &Graph, tie: TieBreakRule) -> CliquePartition {
    run(g, AlgKind::Greedy, tie)
}

/// Greedy restricted to locally cheapest maximum cliques.
pub fn smart_greedy(g: &Graph, tie: TieBreakRule) -> CliquePartition {
    run(g, AlgKind::SmartGreedy, tie)
}

/// Greedy while the clique number is at least three, then a maximum matching
/// plus singletons on the triangle-free remainder.
pub fn greedy_edmonds(g: &Graph, tie: TieBreakRule) -> CliquePartition {
    run(g, AlgKind::GreedyEdmonds, tie)
}

/// The set of outcomes reachable over all tie-break branches.
#[derive(Clone, Debug)]
pub struct ExecutionSet {
    /// One representative partition per reachable block-size profile.
    pub outcomes: Vec<(CliquePartition, usize)>,
    /// Distinct internal edge counts, ascending.
    pub edge_counts: Vec<usize>,
}

impl ExecutionSet {
    pub fn min_edges(&self) -> usize {
        *self.edge_counts.first().expect("at least one execution")
    }

    pub fn max_edges(&self) -> usize {
        *self.edge_counts.last().expect("at least one execution")
    }
}

/// Explores every tie-break branch of the chosen algorithm. Guarded at
/// n = 12: the branch tree is exponential in the worst case.
///
/// States are deduplicated by (residual vertex set, sorted block sizes so
/// far); the partition dominance order and all edge counts depend only on
/// the size profile, so the pruning loses no reachable outcome profile.
pub fn all_executions(g: &Graph, alg: AlgKind) -> Result<ExecutionSet, GuardError> {
    let n = g.n();
    GuardError::check("all_executions", n, 12)?;
    let mut visited: HashSet<(u32, Vec<usize>)> = HashSet::new();
    let mut outcomes: HashMap<Vec<usize>, (CliquePartition, usize)> = HashMap::new();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    explore(
        g,
        alg,
        Bits::full(n),
        &mut blocks,
        &mut visited,
        &mut outcomes,
    );
    let mut outcomes: Vec<(CliquePartition, usize)> = outcomes.into_values().collect();
    outcomes.sort_by_key(|(p, e)| (*e, p.sizes_ascending()));
    let edge_counts: Vec<usize> = outcomes
        .iter()
        .map(|&(_, e)| e)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    Ok(ExecutionSet {
        outcomes,
        edge_counts,
    })
}

fn live_key(live: &Bits) -> u32 {
    let mut key = 0u32;
    for v in live.iter() {
        key |= 1 << v;
    }
    key
}

fn record_outcome(
    g: &Graph,
    blocks: &[Vec<usize>],
    outcomes: &mut HashMap<Vec<usize>, (CliquePartition, usize)>,
) {
    let p = CliquePartition::new(blocks.to_vec(), g.n());
    let profile = p.sizes_ascending();
    let edges = p.internal_edges();
    outcomes.entry(profile).or_insert((p, edges));
}

fn explore(
    g: &Graph,
    alg: AlgKind,
    live: Bits,
    blocks: &mut Vec<Vec<usize>>,
    visited: &mut HashSet<(u32, Vec<usize>)>,
    outcomes: &mut HashMap<Vec<usize>, (CliquePartition, usize)>,
) {
    let mut sizes: Vec<usize> = blocks.iter().map(|b| b.len()).collect();
    sizes.sort_unstable();
    if !visited.insert((live_key(&live), sizes)) {
        return;
    }
    if live.is_empty() {
        record_outcome(g, blocks, outcomes);
        return;
    }
    let omega = max_clique_in(g, &live).len();
    if alg == AlgKind::GreedyEdmonds && omega <= 2 {
        // Every maximum matching has the same cardinality, so the edge count
        // of the finish is branch-independent; one representative suffices.
        let len = blocks.len();
        matching_finish(g, &live, blocks);
        record_outcome(g, blocks, outcomes);
        blocks.truncate(len);
        return;
    }
    if omega <= 1 {
        let len = blocks.len();
        for v in live.iter() {
            blocks.push(vec![v + 1]);
        }
        record_outcome(g, blocks, outcomes);
        blocks.truncate(len);
        return;
    }
    let (mut candidates, truncated) = enumerate_max_cliques_in(g, &live, ENUMERATION_CAP);
    debug_assert!(!truncated, "cap hit while branching on n <= 12");
    if alg == AlgKind::SmartGreedy {
        let best = candidates
            .iter()
            .map(|c| delta_in(g, &live, c))
            .min()
            .expect("at least one maximum clique");
        candidates.retain(|c| delta_in(g, &live, c) == best);
    }
    for block in candidates {
        let mut next = live.clone();
        for &v in &block {
            next.remove(v - 1);
        }
        blocks.push(block);
        explore(g, alg, next, blocks, visited, outcomes);
        blocks.pop();
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReplayError {
    #[error("block {index} is not contained in the residual graph")]
    NotInResidual { index: usize },
    #[error("block {index} is not a clique")]
    NotAClique { index: usize },
    #[error("block {index} has size {got} but the residual clique number is {expected}")]
    NotMaximum {
        index: usize,
        got: usize,
        expected: usize,
    },
    #[error("block {index} has size {got}; the clique phase requires size >= 3")]
    BelowThree { index: usize, got: usize },
    #[error("residual clique number is {omega} after the clique phase; expected <= 2")]
    ResidualTooDense { omega: usize },
}

/// Replays a prescribed clique phase and validates it is a legal greedy run:
/// each block must be a maximum clique of the residual graph at its turn.
/// The matching finish is then appended. This exhibits specific adversarial
/// executions on instances too large for `all_executions`.
pub fn replay_greedy_edmonds(
    g: &Graph,
    clique_blocks: &[Vec<usize>],
) -> Result<CliquePartition, ReplayError> {
    let n = g.n();
    let mut live = Bits::full(n);
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for (index, block) in clique_blocks.iter().enumerate() {
        if block
            .iter()
            .any(|&v| v == 0 || v > n || !live.contains(v - 1))
        {
            return Err(ReplayError::NotInResidual { index });
        }
        if !crate::graph::is_clique(g, block).unwrap_or(false) {
            return Err(ReplayError::NotAClique { index });
        }
        if block.len() < 3 {
            return Err(ReplayError::BelowThree {
                index,
                got: block.len(),
            });
        }
        let omega = max_clique_in(g, &live).len();
        if block.len() != omega {
            return Err(ReplayError::NotMaximum {
                index,
                got: block.len(),
                expected: omega,
            });
        }
        for &v in block {
            live.remove(v - 1);
        }
        blocks.push(block.clone());
    }
    let omega = max_clique_in(g, &live).len();
    if omega > 2 {
        return Err(ReplayError::ResidualTooDense { omega });
    }
    matching_finish(g, &live, &mut blocks);
    Ok(CliquePartition::new(blocks, n))
}

/// Vertex processing order for the incremental heuristic.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProcessOrder {
    /// Vertices `1, 2, ..., n`.
    Index,
    /// Vertices `p(1), p(2), ..., p(n)`.
    Sequence,
}

/// Processes the vertices of the value-labeled permutation graph in the
/// given order, adding each vertex to the largest existing block it is fully
/// adjacent to (earliest-created block on ties), else opening a singleton.
pub fn ordering_heuristic(p: &Permutation, order: ProcessOrder) -> CliquePartition {
    let g = build_permutation_graph(p, Labeling::Value);
    let n = p.n();
    let verts: Vec<usize> = match order {
        ProcessOrder::Index => (1..=n).collect(),
        ProcessOrder::Sequence => p.values().to_vec(),
    };
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for v in verts {
        let mut best: Option<usize> = None;
        for (i, block) in blocks.iter().enumerate() {
            if block.iter().all(|&u| g.has_edge(u, v)) {
                let better = match best {
                    None => true,
                    Some(b) => block.len() > blocks[b].len(),
                };
                if better {
                    best = Some(i);
                }
            }
        }
        match best {
            Some(i) => blocks[i].push(v),
            None => blocks.push(vec![v]),
        }
    }
    CliquePartition::new(blocks, n)
}

/// Exact comparison of a partition against the optimum and the clique-number
/// ratio bound `2*omega' / (omega' + 1)`. All checks use integer arithmetic.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RatioReport {
    pub opt_edges: usize,
    pub alg_edges: usize,
    pub omega: usize,
    pub omega_prime: usize,
    /// Bound as an exact fraction `bound_num / bound_den`.
    pub bound_num: usize,
    pub bound_den: usize,
    /// `opt_edges <= bound * alg_edges`, cross-multiplied exactly.
    pub satisfied: bool,
    /// `2 * alg_edges >= opt_edges`.
    pub within_twice_opt: bool,
    /// Deleted edges at most twice the optimal deletion count.
    pub deletion_within_twice: bool,
}

impl RatioReport {
    pub fn bound_value(&self) -> f64 {
        if self.bound_den == 0 {
            f64::NAN
        } else {
            self.bound_num as f64 / self.bound_den as f64
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BoundError {
    #[error("invalid partition: {0}")]
    InvalidPartition(#[from] PartitionViolation),
    #[error(transparent)]
    Guard(#[from] GuardError),
}

/// Runs the exact oracle and evaluates every bound for the given partition.
pub fn verify_bound(g: &Graph, p: &CliquePartition) -> Result<RatioReport, BoundError> {
    validate_partition(g, p)?;
    let opt = cliques::exact_partition(g)?.internal_edges();
    let stats = cliques::clique_stats(g);
    let alg = p.internal_edges();
    let m = g.m();
    let bound_num = 2 * stats.omega_prime;
    let bound_den = stats.omega_prime + 1;
    let satisfied = (opt as u128) * (bound_den as u128) <= (bound_num as u128) * (alg as u128);
    Ok(RatioReport {
        opt_edges: opt,
        alg_edges: alg,
        omega: stats.omega,
        omega_prime: stats.omega_prime,
        bound_num,
        bound_den,
        satisfied,
        within_twice_opt: 2 * alg >= opt,
        deletion_within_twice: m - alg <= 2 * (m - opt),
    })
}
