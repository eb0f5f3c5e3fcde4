//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//!
//! Run with `cargo test -p cliquepart --test acceptance -- --nocapture` to
//! see the per-criterion lines; every tolerance is pinned in code.

use std::time::{Duration, Instant};

use cliquepart::algo::{self, AlgKind};
use cliquepart::cliques;
use cliquepart::generate;
use cliquepart::graph::cut_edges;
use cliquepart::suites;

struct Criterion {
    number: u32,
    what: &'static str,
    started: Instant,
}

impl Criterion {
    fn new(number: u32, what: &'static str) -> Criterion {
        Criterion {
            number,
            what,
            started: Instant::now(),
        }
    }

    fn pass(self) {
        println!(
            "criterion {:>2} PASS ({:>6} ms): {}",
            self.number,
            self.started.elapsed().as_millis(),
            self.what
        );
    }

    fn check_runtime(&self, limit: Duration) {
        let elapsed = self.started.elapsed();
        assert!(
            elapsed < limit,
            "criterion {} exceeded its runtime limit: {elapsed:?} >= {limit:?}",
            self.number
        );
    }
}

fn assert_suite(c: &Criterion, report: &suites::SuiteReport) {
    assert!(
        report.passed(),
        "criterion {} failed in suite {}: {:#?}",
        c.number,
        report.name,
        report.violations
    );
}

/// Path fixture: greedy branch outcomes are exactly {1, 2} edges, the
/// optimum is 2, and the worst branch realizes the one-edge partition.
#[test]
fn criterion_01_path_executions() {
    let c = Criterion::new(1, "4-vertex path: greedy outcomes {1,2}, OPT 2, worst profile [1,1,2]");
    let g = generate::p4_path();
    let execs = algo::all_executions(&g, AlgKind::Greedy).expect("n=4 within guard");
    assert_eq!(execs.edge_counts, vec![1, 2]);
    let opt = cliques::exact_partition(&g).unwrap().internal_edges();
    assert_eq!(opt, 2);
    assert_eq!(execs.min_edges(), 1);
    let worst = execs
        .outcomes
        .iter()
        .find(|&&(_, e)| e == 1)
        .expect("worst outcome present");
    assert_eq!(worst.0.sizes_ascending(), vec![1, 1, 2]);
    c.check_runtime(Duration::from_secs(1));
    c.pass();
}

/// 7-vertex fixture: optimum 5, both maximum cliques tie at three cut
/// edges, and some locally-optimal branch still lands below 5.
#[test]
fn criterion_02_seven_vertex() {
    let c = Criterion::new(
        2,
        "7-vertex fixture: OPT 5, max cliques {1,4,5}/{3,4,5} with |cut|=3, a smart branch < 5",
    );
    let g = generate::seven_vertex();
    assert_eq!(cliques::exact_partition(&g).unwrap().internal_edges(), 5);
    let (cliques_found, truncated) = cliques::enumerate_max_cliques(&g, 1_000_000);
    assert!(!truncated);
    assert_eq!(cliques_found, vec![vec![1, 4, 5], vec![3, 4, 5]]);
    assert_eq!(cut_edges(&g, &[1, 4, 5]).len(), 3);
    assert_eq!(cut_edges(&g, &[3, 4, 5]).len(), 3);
    let execs = algo::all_executions(&g, AlgKind::SmartGreedy).expect("n=7 within guard");
    assert!(execs.min_edges() < 5);
    c.check_runtime(Duration::from_secs(1));
    c.pass();
}

/// Greedy is exactly optimal on cographs, and every branch outcome is
/// maximal in the dominance order; 500 random cotree graphs, n <= 9.
#[test]
fn criterion_03_cograph_optimality() {
    let c = Criterion::new(3, "500 cotree graphs: every greedy branch optimal and dominance-maximal");
    let report = suites::suite_cograph_opt(500, 9, 1);
    assert_suite(&c, &report);
    assert!(report.checks >= 1000);
    c.check_runtime(Duration::from_secs(300));
    c.pass();
}

/// Every greedy branch keeps at least OPT/2 edges and deletes at most
/// twice the optimal deletion count; 500 random graphs, n <= 10.
#[test]
fn criterion_04_greedy_two_approx() {
    let c = Criterion::new(4, "500 random graphs: 2*kept >= OPT and deleted <= 2*(m-OPT) on all branches");
    let report = suites::suite_two_approx(500, 10, &[0.2, 0.5, 0.8], 1);
    assert_suite(&c, &report);
    c.pass();
}

/// Every matching-finish branch satisfies OPT*(w'+1) <= 2*w'*kept exactly.
#[test]
fn criterion_05_edmonds_ratio() {
    let c = Criterion::new(5, "500 random graphs: exact clique-number ratio on all matching-finish branches");
    let report = suites::suite_edmonds_bound(500, 10, &[0.2, 0.5, 0.8], 1);
    assert_suite(&c, &report);
    c.pass();
}

/// The matching finish solves triangle-free instances exactly.
#[test]
fn criterion_06_triangle_free_exact() {
    let c = Criterion::new(6, "200 triangle-free graphs (n <= 14): matching finish equals OPT");
    let report = suites::suite_triangle_free(200, 14, 1);
    assert_suite(&c, &report);
    c.pass();
}

/// Tight family: the clique-size schedule, the closed-form edge counts, an
/// exhibited adversarial run for ell = 3..6, and the ratio trend to 1.
#[test]
fn criterion_07_tight_family() {
    let c = Criterion::new(
        7,
        "tight family: k-sequence, (opt, f) = (90, 51) at ell=6, adversarial runs, ratio trend",
    );
    assert_eq!(generate::k_sequence(6).unwrap().k_seq, vec![6, 5, 5, 4, 3, 3]);
    let edges6 = generate::tight_family_edges(6).unwrap();
    assert_eq!((edges6.opt, edges6.greedy_edges), (90, 51));

    for ell in 3..=6 {
        let g = generate::build_g_ell(ell).unwrap();
        let blocks = generate::packed_blocks(ell).unwrap();
        let run = algo::replay_greedy_edmonds(&g, &blocks)
            .unwrap_or_else(|e| panic!("replay rejected at ell={ell}: {e}"));
        let expected = generate::tight_family_edges(ell).unwrap().greedy_edges;
        assert_eq!(
            run.internal_edges() as u64,
            expected,
            "adversarial run at ell={ell}"
        );
        let report = suites::suite_tight_family(ell);
        assert_suite(&c, &report);
    }

    // ell = 3 is small enough to rediscover the adversarial run by
    // exhausting every tie-break branch.
    let g3 = generate::build_g_ell(3).unwrap();
    let execs = algo::all_executions(&g3, AlgKind::GreedyEdmonds).expect("n=9 within guard");
    let f3 = generate::tight_family_edges(3).unwrap().greedy_edges as usize;
    assert!(
        execs.edge_counts.contains(&f3),
        "branch search misses the adversarial value {f3}: {:?}",
        execs.edge_counts
    );

    let report = suites::suite_ratio_trend();
    assert_suite(&c, &report);
    c.pass();
}

/// Exact nonnegativity of the ratio polynomial over the whole grid up to
/// ell = 200, plus its root structure.
#[test]
fn criterion_08_inequality_grid() {
    let c = Criterion::new(8, "polynomial grid to ell=200: nonnegative, identities, k2 root match");
    let report = suites::suite_inequality(200);
    assert_suite(&c, &report);
    let grid = cliquepart::bounds::verify_inequality_grid(200);
    assert!(grid.violations.is_empty());
    assert_eq!(grid.min_value, 0);
    c.check_runtime(Duration::from_secs(30));
    c.pass();
}

/// Oracle agreement: blossom vs exhaustive matching, branch-and-bound vs
/// subset scan, greedy vs exhaustive residual minimization with removal
/// orderings for every optimal witness; 1000 instances, n <= 12.
#[test]
fn criterion_09_oracles_agree() {
    let c = Criterion::new(9, "1000 instances: matching, clique, and residual-minimization oracles agree");
    let report = suites::suite_oracles(1000, 12, 1);
    assert_suite(&c, &report);
    c.pass();
}

/// The incremental ordering heuristic keeps exactly k edges on both
/// failure families while the optimum keeps C(k+1, 2), for k <= 5.
#[test]
fn criterion_10_heuristic_failures() {
    let c = Criterion::new(10, "staircase/zigzag k <= 5: heuristic keeps k edges, OPT is C(k+1,2)");
    let report = suites::suite_heuristics(5);
    assert_suite(&c, &report);
    c.pass();
}
