//! Corpus-scale verification suites.
//!
//! Each suite runs one family of checks over a seeded corpus and returns a
//! report with the checks performed and every violation found. The command
//! line front end maps these to `verify` subcommands and exits nonzero on
//! violations; the integration tests run them at fixed scales. Corpora fan
//! out across threads (each item owns its instances), so reports are
//! deterministic for a given seed regardless of worker count.

use std::time::Instant;

use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::algo::{self, AlgKind, TieBreakRule};
use crate::bounds;
use crate::cliques;
use crate::cograph;
use crate::generate;
use crate::graph::{validate_partition, Graph};
use crate::matching;

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub name: String,
    pub checks: usize,
    pub violations: Vec<String>,
    pub millis: u128,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn summary(&self) -> String {
        format!(
            "[{}] {}: {} checks, {} violations ({} ms)",
            if self.passed() { "PASS" } else { "FAIL" },
            self.name,
            self.checks,
            self.violations.len(),
            self.millis
        )
    }
}

fn finish(name: &str, start: Instant, results: Vec<(usize, Vec<String>)>) -> SuiteReport {
    let mut checks = 0;
    let mut violations = Vec::new();
    for (c, v) in results {
        checks += c;
        violations.extend(v);
    }
    SuiteReport {
        name: name.to_string(),
        checks,
        violations,
        millis: start.elapsed().as_millis(),
    }
}

fn corpus_graph(index: u64, n_max: usize, densities: &[f64], seed0: u64) -> Graph {
    let n = 1 + (index as usize % n_max);
    let density = densities[index as usize % densities.len()];
    generate::random_graph(n, density, seed0.wrapping_add(index))
}

/// Every greedy tie-break branch keeps at least half the optimal edges and
/// deletes at most twice the optimal deletion count.
pub fn suite_two_approx(count: u64, n_max: usize, densities: &[f64], seed0: u64) -> SuiteReport {
    let start = Instant::now();
    let results: Vec<(usize, Vec<String>)> = (0..count)
        .into_par_iter()
        .map(|i| {
            let g = corpus_graph(i, n_max, densities, seed0);
            let mut violations = Vec::new();
            let opt = cliques::exact_partition(&g)
                .expect("corpus within oracle guard")
                .internal_edges();
            let m = g.m();
            let execs = algo::all_executions(&g, AlgKind::Greedy).expect("corpus within guard");
            let mut checks = 0;
            for &(_, edges) in &execs.outcomes {
                checks += 2;
                if 2 * edges < opt {
                    violations.push(format!(
                        "graph {i}: greedy outcome {edges} below half of OPT {opt}"
                    ));
                }
                if m - edges > 2 * (m - opt) {
                    violations.push(format!(
                        "graph {i}: greedy deletes {} > twice optimal {}",
                        m - edges,
                        m - opt
                    ));
                }
            }
            (checks, violations)
        })
        .collect();
    finish("two-approx", start, results)
}

/// Every matching-finish branch satisfies the exact clique-number ratio:
/// `OPT * (omega' + 1) <= 2 * omega' * edges`, in integers.
pub fn suite_edmonds_bound(count: u64, n_max: usize, densities: &[f64], seed0: u64) -> SuiteReport {
    let start = Instant::now();
    let results: Vec<(usize, Vec<String>)> = (0..count)
        .into_par_iter()
        .map(|i| {
            let g = corpus_graph(i, n_max, densities, seed0);
            let mut violations = Vec::new();
            let opt = cliques::exact_partition(&g)
                .expect("corpus within oracle guard")
                .internal_edges();
            let omega_prime = cliques::clique_stats(&g).omega_prime;
            let execs =
                algo::all_executions(&g, AlgKind::GreedyEdmonds).expect("corpus within guard");
            let mut checks = 0;
            for &(ref p, edges) in &execs.outcomes {
                checks += 1;
                let lhs = (opt as u128) * (omega_prime as u128 + 1);
                let rhs = 2 * (omega_prime as u128) * (edges as u128);
                // Edgeless graphs have omega' = 0 and opt = 0; the bound is
                // the trivial 0 <= 0.
                if lhs > rhs && !(omega_prime == 0 && opt == 0) {
                    violations.push(format!(
                        "graph {i}: outcome {:?} with {edges} edges breaks the ratio (OPT={opt}, omega'={omega_prime})",
                        p.blocks()
                    ));
                }
            }
            (checks, violations)
        })
        .collect();
    finish("edmonds-bound", start, results)
}

/// On graphs realized from random cotrees, every greedy branch attains the
/// optimum and every outcome is maximal in the dominance order.
pub fn suite_cograph_opt(count: u64, n_max: usize, seed0: u64) -> SuiteReport {
    let start = Instant::now();
    let results: Vec<(usize, Vec<String>)> = (0..count)
        .into_par_iter()
        .map(|i| {
            let n = 1 + (i as usize % n_max);
            let g = cograph::random_cotree_graph(n, seed0.wrapping_add(i));
            let mut violations = Vec::new();
            let mut checks = 1;
            if !cograph::induced_p4_free(&g) {
                violations.push(format!("graph {i}: cotree realization has an induced path"));
            }
            let opt = cliques::exact_partition(&g)
                .expect("corpus within oracle guard")
                .internal_edges();
            let profiles =
                cograph::clique_partition_profiles(&g).expect("corpus within guard");
            let execs = algo::all_executions(&g, AlgKind::Greedy).expect("corpus within guard");
            for (p, edges) in &execs.outcomes {
                checks += 2;
                if *edges != opt {
                    violations.push(format!(
                        "graph {i}: greedy outcome {edges} != OPT {opt} on a cograph"
                    ));
                }
                let profile = p.sizes_ascending();
                let dominated = profiles.iter().any(|other| {
                    cograph::compare_profiles(&profile, other, g.n())
                        == cograph::PartitionOrder::Less
                });
                if dominated {
                    violations.push(format!(
                        "graph {i}: greedy outcome {profile:?} is dominated"
                    ));
                }
            }
            (checks, violations)
        })
        .collect();
    finish("cograph-opt", start, results)
}

/// On triangle-free graphs the matching finish is exactly optimal.
pub fn suite_triangle_free(count: u64, n_max: usize, seed0: u64) -> SuiteReport {
    let start = Instant::now();
    let results: Vec<(usize, Vec<String>)> = (0..count)
        .into_par_iter()
        .map(|i| {
            let n = 1 + (i as usize % n_max);
            let density = [0.2, 0.4, 0.6][i as usize % 3];
            let g = generate::random_triangle_free(n, density, seed0.wrapping_add(i));
            let mut violations = Vec::new();
            let p = algo::greedy_edmonds(&g, TieBreakRule::Lexicographic);
            if validate_partition(&g, &p).is_err() {
                violations.push(format!("graph {i}: invalid output partition"));
            }
            let opt = cliques::exact_partition(&g)
                .expect("corpus within oracle guard")
                .internal_edges();
            if p.internal_edges() != opt {
                violations.push(format!(
                    "graph {i}: matching finish got {} edges, OPT is {opt}",
                    p.internal_edges()
                ));
            }
            (2, violations)
        })
        .collect();
    finish("triangle-free-opt", start, results)
}

/// Oracle agreement: blossom vs exhaustive matching, branch-and-bound vs
/// subset-scan maximum clique, and greedy vs exhaustive residual-edge
/// minimization including removal orderings for every optimal witness.
pub fn suite_oracles(count: u64, n_max: usize, seed0: u64) -> SuiteReport {
    let start = Instant::now();
    let results: Vec<(usize, Vec<String>)> = (0..count)
        .into_par_iter()
        .map(|i| {
            let g = corpus_graph(i, n_max, &[0.1, 0.3, 0.5, 0.7, 0.9], seed0);
            let mut violations = Vec::new();
            let mut checks = 0;

            let fast = matching::max_matching(&g);
            checks += 2;
            if !matching::is_valid_matching(&g, &fast) {
                violations.push(format!("graph {i}: blossom output invalid"));
            }
            let brute = matching::brute_matching(&g).expect("corpus within guard");
            if fast.len() != brute.len() {
                violations.push(format!(
                    "graph {i}: blossom {} vs exhaustive {}",
                    fast.len(),
                    brute.len()
                ));
            }

            checks += 1;
            let bb = cliques::max_clique(&g).expect("nonempty").len();
            let n = g.n();
            let mut subset_best = 0usize;
            for mask in 1u32..(1 << n) {
                let verts: Vec<usize> = (0..n)
                    .filter(|&v| mask >> v & 1 == 1)
                    .map(|v| v + 1)
                    .collect();
                if crate::graph::is_clique(&g, &verts).unwrap_or(false) {
                    subset_best = subset_best.max(verts.len());
                }
            }
            if bb != subset_best {
                violations.push(format!(
                    "graph {i}: branch-and-bound {bb} vs subset scan {subset_best}"
                ));
            }

            // Residual-edge minimization on a random block structure.
            let p = generate::random_partition(1 + (i as usize % n_max), seed0 ^ i);
            for k in 0..=p.graph_n() {
                checks += 1;
                let brute = cliques::lambda_min_brute(&p, k).expect("within guard");
                if cliques::lambda_min_greedy(&p, k) != brute {
                    violations.push(format!(
                        "partition {i}, k={k}: greedy path diverges from exhaustive"
                    ));
                }
                for c in cliques::lambda_min_brute_witnesses(&p, k).expect("within guard") {
                    checks += 1;
                    if !cliques::check_removal_ordering(&p, &c) {
                        violations.push(format!(
                            "partition {i}, k={k}: optimal set {c:?} admits no removal ordering"
                        ));
                    }
                }
            }
            (checks, violations)
        })
        .collect();
    finish("oracle-agreement", start, results)
}

/// Exhaustive scan of the ratio polynomial plus its root structure.
pub fn suite_inequality(ell_max: i64) -> SuiteReport {
    let start = Instant::now();
    let mut violations = Vec::new();
    let grid = bounds::verify_inequality_grid(ell_max);
    let mut checks = grid.points;
    for &(i, k, ell) in &grid.violations {
        violations.push(format!("g({i},{k},{ell}) = {} < 0", bounds::g_value(i, k, ell)));
    }
    for ell in 3..=ell_max {
        checks += 2;
        for k in 1..=ell {
            if bounds::g_value(k, k, ell) != 4 * (k as i128) * (k as i128 - 1) {
                violations.push(format!("g(k,k,ell) identity fails at k={k}, ell={ell}"));
            }
        }
        if bounds::g_value(ell, ell - 1, ell) != 0 {
            violations.push(format!("g(ell, ell-1, ell) != 0 at ell={ell}"));
        }
        if bounds::k2_closed_form(ell) != bounds::k2_from_quadratic(ell) {
            violations.push(format!("k2 closed form mismatch at ell={ell}"));
        }
    }
    SuiteReport {
        name: "inequality-grid".into(),
        checks,
        violations,
        millis: start.elapsed().as_millis(),
    }
}

/// Closed forms and an exhibited adversarial run for one tight instance.
pub fn suite_tight_family(ell: usize) -> SuiteReport {
    let start = Instant::now();
    let mut violations = Vec::new();
    let mut checks = 0;
    match generate::tight_family_edges(ell) {
        Err(e) => violations.push(e.to_string()),
        Ok(edges) => {
            checks += 4;
            let g = match generate::build_g_ell(ell) {
                Ok(g) => g,
                Err(e) => {
                    violations.push(e.to_string());
                    return finish("tight-family", start, vec![(checks, violations)]);
                }
            };
            let omega = cliques::clique_stats(&g).omega;
            if omega != ell {
                violations.push(format!("clique number {omega} != ell {ell}"));
            }
            let blocks = generate::packed_blocks(ell).expect("ell validated");
            match algo::replay_greedy_edmonds(&g, &blocks) {
                Err(e) => violations.push(format!("adversarial replay rejected: {e}")),
                Ok(p) => {
                    if validate_partition(&g, &p).is_err() {
                        violations.push("replayed partition invalid".into());
                    }
                    if p.internal_edges() as u64 != edges.greedy_edges {
                        violations.push(format!(
                            "replayed run keeps {} edges, closed form says {}",
                            p.internal_edges(),
                            edges.greedy_edges
                        ));
                    }
                }
            }
            let (formula, structural) = generate::residual_matching_counts(ell).expect("valid ell");
            if formula as usize != structural {
                violations.push(format!(
                    "residual matching: closed form {formula} vs structural {structural}"
                ));
            }
            // The oracle confirms the row partition optimal while it can.
            if ell * ell <= 16 {
                checks += 1;
                let opt = cliques::exact_partition(&g)
                    .expect("within guard")
                    .internal_edges();
                if opt as u64 != edges.opt {
                    violations.push(format!(
                        "oracle optimum {opt} != closed form {}",
                        edges.opt
                    ));
                }
            }
        }
    }
    finish("tight-family", start, vec![(checks, violations)])
}

/// The bound-tightness trend: the ratio product stays within 0.02 of 1 from
/// ell = 30 through ell = 100.
pub fn suite_ratio_trend() -> SuiteReport {
    let start = Instant::now();
    let mut violations = Vec::new();
    let mut checks = 0;
    for ell in 30..=100usize {
        checks += 1;
        let r = generate::tight_family_edges(ell)
            .expect("ell >= 3")
            .ratio_product
            .to_f64()
            .expect("small rational");
        if (1.0 - r).abs() > 0.02 {
            violations.push(format!("ratio product {r:.5} strays from 1 at ell={ell}"));
        }
    }
    finish("ratio-trend", start, vec![(checks, violations)])
}

/// The incremental ordering heuristic keeps only k edges on the staircase
/// and zigzag families while the optimum keeps C(k+1, 2).
pub fn suite_heuristics(k_max: usize) -> SuiteReport {
    let start = Instant::now();
    let mut violations = Vec::new();
    let mut checks = 0;
    for k in 1..=k_max {
        for (name, perm, order) in [
            ("staircase", generate::staircase(k), algo::ProcessOrder::Index),
            ("zigzag", generate::zigzag(k), algo::ProcessOrder::Sequence),
        ] {
            checks += 2;
            let perm = perm.expect("k >= 1");
            let heur = algo::ordering_heuristic(&perm, order);
            if heur.internal_edges() != k {
                violations.push(format!(
                    "{name}({k}): heuristic keeps {} edges, expected {k}",
                    heur.internal_edges()
                ));
            }
            let g = crate::perm::build_permutation_graph(&perm, crate::perm::Labeling::Value);
            let opt = cliques::exact_partition(&g)
                .expect("2k <= 10 within guard")
                .internal_edges();
            if opt != crate::choose2(k + 1) {
                violations.push(format!(
                    "{name}({k}): optimum {opt} != C(k+1,2) = {}",
                    crate::choose2(k + 1)
                ));
            }
        }
    }
    finish("heuristic-failures", start, vec![(checks, violations)])
}
