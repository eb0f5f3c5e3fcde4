//! Command-line front end: instance generation, solving, verification
//! suites, and wall-clock benchmarking.
//!
//! Exit codes: 0 on success, 1 when a verification suite reports a
//! violation, 2 on usage or input errors.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use serde::Serialize;

use cliquepart::algo::{self, TieBreakRule};
use cliquepart::cliques;
use cliquepart::cograph;
use cliquepart::generate;
use cliquepart::graph::{deleted_edges, Graph};
use cliquepart::io::{self, Instance};
use cliquepart::perm::{build_permutation_graph, Labeling};
use cliquepart::suites;
use cliquepart::CliquePartition;

#[derive(Parser)]
#[command(
    name = "cliquepart",
    version,
    about = "Clique partition / cluster deletion toolkit"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate an instance file.
    Gen {
        #[command(subcommand)]
        family: GenFamily,
    },
    /// Run a solver on an instance and print a result record.
    Solve(SolveArgs),
    /// Run a verification suite; exits 1 on any violation.
    Verify {
        #[command(subcommand)]
        suite: VerifyCmd,
    },
    /// Time a solver on an instance (wall clock only).
    Bench(BenchArgs),
}

#[derive(Subcommand)]
enum GenFamily {
    /// Grid instance on ell^2 vertices where the ratio bound is attained.
    Tight {
        #[arg(long)]
        ell: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The 4-vertex path, value-labeled.
    P4Path {
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The 7-vertex instance whose maximum cliques tie on local criteria.
    SevenVertex {
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Permutation [2,4,...,2k,2k-1,...,3,1].
    Staircase {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Permutation [2k,1,2k-1,2,...,k+1,k].
    Zigzag {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Seeded random graph with independent edges.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        density: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Seeded random cograph realized from a random cotree.
    RandomCograph {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Seeded random permutation.
    RandomPerm {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct SolveArgs {
    /// Instance file (graph edge list or permutation).
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = Alg::Greedy)]
    alg: Alg,
    #[arg(long, value_enum, default_value_t = Tie::Lex)]
    tie: Tie,
    /// Vertex labeling when the input is a permutation.
    #[arg(long, value_enum, default_value_t = LabelingArg::Value)]
    labeling: LabelingArg,
    /// Also run the exact oracle and report the ratio bound (n <= 20).
    #[arg(long)]
    oracle: bool,
    /// Emit CSV (header + one row) instead of a JSON line.
    #[arg(long)]
    csv: bool,
}

#[derive(Args)]
struct BenchArgs {
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = Alg::Greedy)]
    alg: Alg,
    #[arg(long, value_enum, default_value_t = Tie::Lex)]
    tie: Tie,
    #[arg(long, value_enum, default_value_t = LabelingArg::Value)]
    labeling: LabelingArg,
    #[arg(long, default_value_t = 3)]
    repeat: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Alg {
    Greedy,
    SmartGreedy,
    GreedyEdmonds,
    Exact,
}

impl Alg {
    fn name(self) -> &'static str {
        match self {
            Alg::Greedy => "greedy",
            Alg::SmartGreedy => "smart_greedy",
            Alg::GreedyEdmonds => "greedy_edmonds",
            Alg::Exact => "exact",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Tie {
    Lex,
    MinDelta,
}

impl Tie {
    fn rule(self) -> TieBreakRule {
        match self {
            Tie::Lex => TieBreakRule::Lexicographic,
            Tie::MinDelta => TieBreakRule::MinDeltaThenLex,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Tie::Lex => "lex",
            Tie::MinDelta => "min-delta",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LabelingArg {
    Position,
    Value,
}

impl From<LabelingArg> for Labeling {
    fn from(l: LabelingArg) -> Labeling {
        match l {
            LabelingArg::Position => Labeling::Position,
            LabelingArg::Value => Labeling::Value,
        }
    }
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Greedy keeps at least OPT/2 edges and deletes at most twice optimal.
    TwoApprox {
        #[arg(long, default_value_t = 500)]
        count: u64,
        #[arg(long, default_value_t = 10)]
        n_max: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// The exact clique-number ratio for the matching-finish solver.
    EdmondsBound {
        #[arg(long, default_value_t = 500)]
        count: u64,
        #[arg(long, default_value_t = 10)]
        n_max: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Greedy is exactly optimal on cographs, and dominance-maximal.
    CographOpt {
        #[arg(long, default_value_t = 9)]
        n: usize,
        #[arg(long, default_value_t = 500)]
        count: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// The matching finish is exactly optimal on triangle-free graphs.
    TriangleFree {
        #[arg(long, default_value_t = 200)]
        count: u64,
        #[arg(long, default_value_t = 14)]
        n_max: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Blossom vs exhaustive matching, clique search vs subset scan,
    /// greedy vs exhaustive residual-edge minimization.
    Oracles {
        #[arg(long, default_value_t = 1000)]
        count: u64,
        #[arg(long, default_value_t = 12)]
        n_max: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Exact nonnegativity scan of the ratio polynomial grid.
    Ineq {
        #[arg(long, default_value_t = 200)]
        ell_max: i64,
    },
    /// Closed forms and the adversarial run of one tight instance.
    TightFamily {
        #[arg(long, default_value_t = 6)]
        ell: usize,
    },
    /// The ordering heuristic keeps only k edges on both failure families.
    Heuristics {
        #[arg(long, default_value_t = 5)]
        k_max: usize,
    },
    /// The ratio product stays within 0.02 of 1 from ell=30 through 100.
    RatioTrend,
}

/// One result record per solver run, emitted as a JSON line (or CSV row).
#[derive(Serialize)]
struct RunRecord {
    schema: &'static str,
    instance: String,
    n: usize,
    m: usize,
    algorithm: &'static str,
    tie: &'static str,
    blocks: Vec<Vec<usize>>,
    edges_kept: usize,
    edges_deleted: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    opt: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    bound: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    satisfied: Option<bool>,
    wall_ms: f64,
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            2
        }
    };
    std::process::exit(code);
}

fn run(cli: Cli) -> Result<i32> {
    match cli.cmd {
        Cmd::Gen { family } => {
            gen_cmd(family)?;
            Ok(0)
        }
        Cmd::Solve(args) => {
            solve_cmd(args)?;
            Ok(0)
        }
        Cmd::Verify { suite } => verify_cmd(suite),
        Cmd::Bench(args) => {
            bench_cmd(args)?;
            Ok(0)
        }
    }
}

fn emit(out: Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => {
            fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
        }
        None => {
            print!("{text}");
            std::io::stdout().flush()?;
        }
    }
    Ok(())
}

fn gen_cmd(family: GenFamily) -> Result<()> {
    match family {
        GenFamily::Tight { ell, out } => {
            let g = generate::build_g_ell(ell)?;
            emit(out, &io::write_graph(&g))
        }
        GenFamily::P4Path { out } => emit(out, &io::write_graph(&generate::p4_path())),
        GenFamily::SevenVertex { out } => emit(out, &io::write_graph(&generate::seven_vertex())),
        GenFamily::Staircase { k, out } => {
            let p = generate::staircase(k)?;
            emit(out, &io::write_permutation(&p))
        }
        GenFamily::Zigzag { k, out } => {
            let p = generate::zigzag(k)?;
            emit(out, &io::write_permutation(&p))
        }
        GenFamily::Random {
            n,
            density,
            seed,
            out,
        } => {
            if !(0.0..=1.0).contains(&density) {
                return Err(anyhow!("density must be in [0, 1]"));
            }
            emit(out, &io::write_graph(&generate::random_graph(n, density, seed)))
        }
        GenFamily::RandomCograph { n, seed, out } => {
            if n == 0 {
                return Err(anyhow!("n must be at least 1"));
            }
            emit(out, &io::write_graph(&cograph::random_cotree_graph(n, seed)))
        }
        GenFamily::RandomPerm { n, seed, out } => emit(
            out,
            &io::write_permutation(&generate::random_permutation(n, seed)),
        ),
    }
}

fn load_graph(path: &PathBuf, labeling: LabelingArg) -> Result<Graph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    match io::parse_instance(&text)? {
        Instance::Graph(g) => Ok(g),
        Instance::Permutation(p) => Ok(build_permutation_graph(&p, labeling.into())),
    }
}

fn run_solver(g: &Graph, alg: Alg, tie: Tie) -> Result<CliquePartition> {
    Ok(match alg {
        Alg::Greedy => algo::greedy(g, tie.rule()),
        Alg::SmartGreedy => algo::smart_greedy(g, tie.rule()),
        Alg::GreedyEdmonds => algo::greedy_edmonds(g, tie.rule()),
        Alg::Exact => cliques::exact_partition(g)?,
    })
}

fn solve_cmd(args: SolveArgs) -> Result<()> {
    let g = load_graph(&args.input, args.labeling)?;
    let start = Instant::now();
    let p = run_solver(&g, args.alg, args.tie)?;
    let wall_ms = start.elapsed().as_secs_f64() * 1e3;

    let (opt, bound, satisfied) = if args.oracle {
        let report = algo::verify_bound(&g, &p)?;
        (
            Some(report.opt_edges),
            Some(format!("{}/{}", report.bound_num, report.bound_den)),
            Some(report.satisfied),
        )
    } else {
        (None, None, None)
    };

    let record = RunRecord {
        schema: "run-v1",
        instance: args.input.display().to_string(),
        n: g.n(),
        m: g.m(),
        algorithm: args.alg.name(),
        tie: args.tie.name(),
        blocks: p.blocks().to_vec(),
        edges_kept: p.internal_edges(),
        edges_deleted: deleted_edges(&g, &p).expect("solver output is valid"),
        opt,
        bound,
        satisfied,
        wall_ms,
    };

    if args.csv {
        let blocks: Vec<String> = record
            .blocks
            .iter()
            .map(|b| {
                b.iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        println!(
            "instance,n,m,algorithm,tie,edges_kept,edges_deleted,opt,bound,satisfied,wall_ms,blocks"
        );
        println!(
            "{},{},{},{},{},{},{},{},{},{},{:.3},{}",
            record.instance,
            record.n,
            record.m,
            record.algorithm,
            record.tie,
            record.edges_kept,
            record.edges_deleted,
            record.opt.map_or(String::new(), |v| v.to_string()),
            record.bound.clone().unwrap_or_default(),
            record
                .satisfied
                .map_or(String::new(), |v| v.to_string()),
            record.wall_ms,
            blocks.join("|"),
        );
    } else {
        println!("{}", serde_json::to_string(&record)?);
    }
    Ok(())
}

fn verify_cmd(suite: VerifyCmd) -> Result<i32> {
    let densities = [0.2, 0.5, 0.8];
    let report = match suite {
        VerifyCmd::TwoApprox { count, n_max, seed } => {
            suites::suite_two_approx(count, n_max, &densities, seed)
        }
        VerifyCmd::EdmondsBound { count, n_max, seed } => {
            suites::suite_edmonds_bound(count, n_max, &densities, seed)
        }
        VerifyCmd::CographOpt { n, count, seed } => suites::suite_cograph_opt(count, n, seed),
        VerifyCmd::TriangleFree { count, n_max, seed } => {
            suites::suite_triangle_free(count, n_max, seed)
        }
        VerifyCmd::Oracles { count, n_max, seed } => suites::suite_oracles(count, n_max, seed),
        VerifyCmd::Ineq { ell_max } => {
            if ell_max < 3 {
                return Err(anyhow!("--ell-max must be at least 3"));
            }
            suites::suite_inequality(ell_max)
        }
        VerifyCmd::TightFamily { ell } => {
            let report = suites::suite_tight_family(ell);
            if report.passed() {
                let e = generate::tight_family_edges(ell)?;
                println!(
                    "tight-family ell={ell}: opt={} greedy_edges={} ratio_product={:.6}",
                    e.opt,
                    e.greedy_edges,
                    e.ratio_product.to_f64().unwrap_or(f64::NAN)
                );
            }
            report
        }
        VerifyCmd::Heuristics { k_max } => suites::suite_heuristics(k_max),
        VerifyCmd::RatioTrend => suites::suite_ratio_trend(),
    };
    println!("{}", report.summary());
    for v in &report.violations {
        println!("  violation: {v}");
    }
    Ok(if report.passed() { 0 } else { 1 })
}

fn bench_cmd(args: BenchArgs) -> Result<()> {
    if args.repeat == 0 {
        return Err(anyhow!("--repeat must be at least 1"));
    }
    let g = load_graph(&args.input, args.labeling)?;
    let mut times = Vec::with_capacity(args.repeat);
    let mut edges = 0;
    for _ in 0..args.repeat {
        let start = Instant::now();
        let p = run_solver(&g, args.alg, args.tie)?;
        times.push(start.elapsed().as_secs_f64() * 1e3);
        edges = p.internal_edges();
    }
    let min = times.iter().cloned().fold(f64::INFINITY, f64::min);
    let mean = times.iter().sum::<f64>() / times.len() as f64;
    println!(
        "bench {} alg={} tie={} n={} m={} edges_kept={} repeats={} min_ms={:.3} mean_ms={:.3}",
        args.input.display(),
        args.alg.name(),
        args.tie.name(),
        g.n(),
        g.m(),
        edges,
        args.repeat,
        min,
        mean
    );
    Ok(())
}
