//! Permutation graphs and maximum cliques via decreasing subsequences.
//!
//! The graph of a permutation `p` has an edge between positions `i < j`
//! whenever `p(i) > p(j)` (an inversion). A clique is therefore exactly a
//! strictly decreasing subsequence of the value sequence, which makes
//! maximum cliques computable by dynamic programming instead of search.

use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("value {v} out of range 1..={n}")]
    ValueOutOfRange { v: usize, n: usize },
    #[error("value {v} appears more than once")]
    Repeated { v: usize },
}

/// A permutation of `1..=n`, stored as the value sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Permutation {
    seq: Vec<usize>,
}

impl Permutation {
    pub fn new(seq: Vec<usize>) -> Result<Permutation, PermError> {
        let n = seq.len();
        let mut seen = vec![false; n];
        for &v in &seq {
            if v == 0 || v > n {
                return Err(PermError::ValueOutOfRange { v, n });
            }
            if seen[v - 1] {
                return Err(PermError::Repeated { v });
            }
            seen[v - 1] = true;
        }
        Ok(Permutation { seq })
    }

    pub fn identity(n: usize) -> Permutation {
        Permutation {
            seq: (1..=n).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.seq.len()
    }

    /// The value sequence `p(1), ..., p(n)`.
    pub fn values(&self) -> &[usize] {
        &self.seq
    }

    /// Value at a 1-indexed position.
    pub fn value_at(&self, pos: usize) -> usize {
        self.seq[pos - 1]
    }
}

/// How permutation-graph vertices are named.
///
/// `Position` applies the inversion definition verbatim: vertex `i` is the
/// i-th position. `Value` relabels vertex `i` as `p(i)`, which is the
/// convention the drawn fixture instances use; the two graphs are isomorphic
/// under `i -> p(i)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Labeling {
    Position,
    #[default]
    Value,
}

/// Builds the permutation graph under the chosen labeling.
pub fn build_permutation_graph(p: &Permutation, labeling: Labeling) -> Graph {
    let n = p.n();
    let mut edges = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            if p.value_at(i) > p.value_at(j) {
                match labeling {
                    Labeling::Position => edges.push((i, j)),
                    Labeling::Value => edges.push((p.value_at(i), p.value_at(j))),
                }
            }
        }
    }
    Graph::from_edges(n, &edges).expect("inversion pairs are distinct")
}

/// Positions of one longest strictly decreasing subsequence, in O(n log n).
///
/// The returned position set is a maximum clique of the position-labeled
/// permutation graph.
pub fn max_clique_perm(p: &Permutation) -> Vec<usize> {
    let n = p.n();
    if n == 0 {
        return Vec::new();
    }
    // Patience-style DP on negated values: strictly decreasing in the
    // original sequence is strictly increasing after negation.
    // tails[l] = position whose subsequence of length l+1 has the largest
    // (original) final value seen so far; keys are strictly decreasing.
    let val = |pos: usize| p.value_at(pos);
    let mut tails: Vec<usize> = Vec::new();
    let mut prev: Vec<usize> = vec![0]; // prev[pos], filled position by position
    for pos in 1..=n {
        // Find the first pile whose tail value is <= val(pos); replace it.
        let (mut lo, mut hi) = (0, tails.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            if val(tails[mid]) > val(pos) {
                lo = mid + 1;
            } else {
                hi = mid;
            }
        }
        prev.push(if lo > 0 { tails[lo - 1] } else { 0 });
        if lo == tails.len() {
            tails.push(pos);
        } else {
            tails[lo] = pos;
        }
    }
    let mut out = Vec::with_capacity(tails.len());
    let mut cur = *tails.last().expect("n >= 1");
    while cur != 0 {
        out.push(cur);
        cur = prev[cur];
    }
    out.reverse();
    out
}

/// All maximum cliques of the permutation graph, as vertex sets under the
/// chosen labeling, truncated at `cap` sets. Returns the sets sorted
/// lexicographically together with a truncation flag.
pub fn enumerate_max_cliques_perm(
    p: &Permutation,
    labeling: Labeling,
    cap: usize,
) -> (Vec<Vec<usize>>, bool) {
    assert!(cap >= 1, "cap must be at least 1");
    let n = p.n();
    if n == 0 {
        return (Vec::new(), false);
    }
    // len[i] = length of the longest strictly decreasing subsequence ending
    // at position i (1-indexed).
    let mut len = vec![1usize; n + 1];
    for i in 1..=n {
        for j in 1..i {
            if p.value_at(j) > p.value_at(i) {
                len[i] = len[i].max(len[j] + 1);
            }
        }
    }
    let best = (1..=n).map(|i| len[i]).max().expect("n >= 1");

    // Walk predecessor links backwards from every position that ends a
    // maximum subsequence.
    struct Walker<'a> {
        p: &'a Permutation,
        len: &'a [usize],
        labeling: Labeling,
        cap: usize,
        stack: Vec<usize>,
        out: Vec<Vec<usize>>,
        truncated: bool,
    }

    impl Walker<'_> {
        fn walk(&mut self, pos: usize) {
            if self.truncated {
                return;
            }
            self.stack.push(pos);
            if self.len[pos] == 1 {
                if self.out.len() == self.cap {
                    self.truncated = true;
                } else {
                    let mut set: Vec<usize> = match self.labeling {
                        Labeling::Position => self.stack.clone(),
                        Labeling::Value => {
                            self.stack.iter().map(|&q| self.p.value_at(q)).collect()
                        }
                    };
                    set.sort_unstable();
                    self.out.push(set);
                }
            } else {
                for j in 1..pos {
                    if self.p.value_at(j) > self.p.value_at(pos)
                        && self.len[j] == self.len[pos] - 1
                    {
                        self.walk(j);
                    }
                }
            }
            self.stack.pop();
        }
    }

    let mut walker = Walker {
        p,
        len: &len,
        labeling,
        cap,
        stack: Vec::new(),
        out: Vec::new(),
        truncated: false,
    };
    for (i, &l) in len.iter().enumerate().skip(1) {
        if l == best {
            walker.walk(i);
        }
    }
    let mut out = walker.out;
    out.sort();
    (out, walker.truncated)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(v: &[usize]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    #[test]
    fn rejects_non_bijections() {
        assert_eq!(
            Permutation::new(vec![1, 1]),
            Err(PermError::Repeated { v: 1 })
        );
        assert_eq!(
            Permutation::new(vec![0, 1]),
            Err(PermError::ValueOutOfRange { v: 0, n: 2 })
        );
        assert_eq!(
            Permutation::new(vec![3, 1]),
            Err(PermError::ValueOutOfRange { v: 3, n: 2 })
        );
    }

    #[test]
    fn value_labeled_path() {
        let g = build_permutation_graph(&perm(&[3, 1, 4, 2]), Labeling::Value);
        assert_eq!(g.edges(), vec![(1, 3), (2, 3), (2, 4)]);
    }

    #[test]
    fn value_labeled_seven_vertex() {
        let g = build_permutation_graph(&perm(&[2, 5, 4, 1, 7, 3, 6]), Labeling::Value);
        assert_eq!(g.m(), 8);
        assert_eq!(
            g.edges(),
            vec![
                (1, 2),
                (1, 4),
                (1, 5),
                (3, 4),
                (3, 5),
                (3, 7),
                (4, 5),
                (6, 7)
            ]
        );
    }

    #[test]
    fn identity_is_edgeless() {
        let g = build_permutation_graph(&Permutation::identity(6), Labeling::Value);
        assert_eq!(g.m(), 0);
    }

    #[test]
    fn position_and_value_graphs_are_isomorphic() {
        let p = perm(&[2, 5, 4, 1, 7, 3, 6]);
        let gp = build_permutation_graph(&p, Labeling::Position);
        let gv = build_permutation_graph(&p, Labeling::Value);
        let mapped: std::collections::BTreeSet<(usize, usize)> = gp
            .edges()
            .into_iter()
            .map(|(i, j)| {
                let (a, b) = (p.value_at(i), p.value_at(j));
                (a.min(b), a.max(b))
            })
            .collect();
        let value_edges: std::collections::BTreeSet<(usize, usize)> =
            gv.edges().into_iter().collect();
        assert_eq!(mapped, value_edges);
    }

    #[test]
    fn longest_decreasing_lengths() {
        assert_eq!(max_clique_perm(&perm(&[2, 5, 4, 1, 7, 3, 6])).len(), 3);
        assert_eq!(max_clique_perm(&perm(&[5, 4, 3, 2, 1])).len(), 5);
        assert_eq!(max_clique_perm(&Permutation::identity(5)).len(), 1);
    }

    #[test]
    fn witness_is_decreasing() {
        let p = perm(&[2, 5, 4, 1, 7, 3, 6]);
        let w = max_clique_perm(&p);
        for pair in w.windows(2) {
            assert!(pair[0] < pair[1]);
            assert!(p.value_at(pair[0]) > p.value_at(pair[1]));
        }
    }

    #[test]
    fn enumerate_seven_vertex() {
        let p = perm(&[2, 5, 4, 1, 7, 3, 6]);
        let (sets, truncated) = enumerate_max_cliques_perm(&p, Labeling::Value, 1_000_000);
        assert!(!truncated);
        assert_eq!(sets, vec![vec![1, 4, 5], vec![3, 4, 5]]);
    }

    #[test]
    fn enumerate_path() {
        let p = perm(&[3, 1, 4, 2]);
        let (sets, _) = enumerate_max_cliques_perm(&p, Labeling::Value, 1_000_000);
        assert_eq!(sets, vec![vec![1, 3], vec![2, 3], vec![2, 4]]);
    }

    #[test]
    fn enumerate_identity_gives_singletons() {
        let (sets, _) = enumerate_max_cliques_perm(&Permutation::identity(4), Labeling::Value, 100);
        assert_eq!(sets, vec![vec![1], vec![2], vec![3], vec![4]]);
    }

    #[test]
    fn truncation_flag() {
        let p = perm(&[3, 1, 4, 2]);
        let (sets, truncated) = enumerate_max_cliques_perm(&p, Labeling::Value, 2);
        assert_eq!(sets.len(), 2);
        assert!(truncated);
    }
}
