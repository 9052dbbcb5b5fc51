use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use bpbvd::compression::{solve_with_stats, Target};
use bpbvd::generate::{gen_kxk_reduction, generate, Family, GeneratorSpec};
use bpbvd::harness::{differential_run, standard_solvers, TrialPlan};
use bpbvd::io::{parse_edge_list, write_edge_list};
use bpbvd::kernel::{approximate_with_bound, kernelize, solve_with_kernel, Kernel, Verdict};
use bpbvd::oracle::brute_force;
use bpbvd::{branch, Error, Graph, Instance, Outcome, PClassSpec, Vertex};

const FORMAT_VERSION: u32 = 1;
const EXIT_YES: u8 = 10;
const EXIT_NO: u8 = 20;
const EXIT_MISMATCH: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INCONCLUSIVE: u8 = 3;

#[derive(Parser)]
#[command(name = "bpbvd", version, about = "Bounded P-block vertex deletion solvers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether at most k deletions suffice.
    Solve(SolveArgs),
    /// Approximate the minimum number of deletions.
    Approx(ApproxArgs),
    /// Reduce an instance and print the reduced edge list.
    Kernelize(KernelizeArgs),
    /// Compare all solvers against the exhaustive oracle on random graphs.
    Difftest(DifftestArgs),
    /// Print a generated graph as an edge list.
    Gen(GenArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ClassArg {
    Biconnected,
    Cliques,
    Cycles,
}

impl ClassArg {
    fn spec(self) -> PClassSpec {
        match self {
            ClassArg::Biconnected => PClassSpec::all_biconnected(),
            ClassArg::Cliques => PClassSpec::cliques(),
            ClassArg::Cycles => PClassSpec::cycles_and_k2(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SolverArg {
    Branch,
    Compress,
    KernelBranch,
    Brute,
    Approx,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OutputArg {
    Human,
    Structured,
}

#[derive(Args)]
struct InputArgs {
    /// Edge-list file; standard input when absent or `-`.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = ClassArg::Biconnected)]
    class: ClassArg,
    /// Largest permitted block size.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    d: u64,
    #[arg(long, value_enum, default_value_t = OutputArg::Human)]
    output: OutputArg,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Deletion budget.
    #[arg(long)]
    k: usize,
    #[arg(long, value_enum, default_value_t = SolverArg::Branch)]
    solver: SolverArg,
    /// Where kernel-branch writes its kernel trace.
    #[arg(long)]
    trace: Option<PathBuf>,
    #[arg(long, env = "BPBVD_ORACLE_CAP", default_value_t = bpbvd::oracle::DEFAULT_CAP)]
    oracle_cap: usize,
}

#[derive(Args)]
struct ApproxArgs {
    #[command(flatten)]
    input: InputArgs,
}

#[derive(Args)]
struct KernelizeArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long)]
    k: usize,
    /// Where to write the trace; printed to standard error when absent.
    #[arg(long)]
    trace: Option<PathBuf>,
}

#[derive(Args)]
struct DifftestArgs {
    #[arg(long, default_value_t = 100)]
    trials: usize,
    /// Vertices per random graph.
    #[arg(long, default_value_t = 9)]
    n: usize,
    /// Edge probability.
    #[arg(long, default_value_t = 0.4)]
    p: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, env = "BPBVD_ORACLE_CAP", default_value_t = bpbvd::oracle::DEFAULT_CAP)]
    oracle_cap: usize,
    #[arg(long, value_enum, default_value_t = OutputArg::Human)]
    output: OutputArg,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FamilyArg {
    Random,
    Grid,
    Kxk,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum, default_value_t = FamilyArg::Random)]
    family: FamilyArg,
    /// Vertices of a random graph.
    #[arg(long, default_value_t = 10)]
    n: usize,
    /// Side of a grid.
    #[arg(long, default_value_t = 3)]
    k: usize,
    #[arg(long, default_value_t = 0.4)]
    p: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

/// An error that ends the run with a given status.
struct Fail {
    status: u8,
    error: anyhow::Error,
}

impl<E: Into<anyhow::Error>> From<E> for Fail {
    fn from(e: E) -> Self {
        Fail {
            status: 1,
            error: e.into(),
        }
    }
}

fn usage(msg: impl Into<String>) -> Fail {
    Fail {
        status: EXIT_USAGE,
        error: anyhow::anyhow!(msg.into()),
    }
}

fn read_graph(path: &Option<PathBuf>) -> Result<Graph, Fail> {
    let text = match path {
        Some(p) if p.as_os_str() != "-" => {
            std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?
        }
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).context("reading standard input")?;
            s
        }
    };
    parse_edge_list(&text).map_err(|e| match e {
        Error::Parse { .. } => Fail {
            status: EXIT_USAGE,
            error: anyhow::anyhow!("parse error: {e}"),
        },
        other => other.into(),
    })
}

fn load(input: &InputArgs, k: usize) -> Result<Instance, Fail> {
    let g = read_graph(&input.input)?;
    Ok(Instance::new(g, input.class.spec(), input.d as usize, k))
}

#[derive(Serialize, Default)]
struct Stats {
    branch_nodes: u64,
    rules_applied: u64,
    elapsed_ms: u128,
}

fn emit(mode: OutputArg, record: serde_json::Value, human: String) {
    match mode {
        OutputArg::Structured => println!("{}", serde_json::to_string_pretty(&record).unwrap()),
        OutputArg::Human => print!("{human}"),
    }
}

fn list(vs: &[Vertex]) -> String {
    vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

fn write_trace(path: &Option<PathBuf>, kernel: &Kernel) -> Result<(), Fail> {
    if let Some(p) = path {
        std::fs::write(p, kernel.trace.to_log()).with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(())
}

fn solve(args: SolveArgs) -> Result<u8, Fail> {
    let inst = load(&args.input, args.k)?;
    let start = Instant::now();
    let mut stats = Stats::default();
    let mut kernel_info = serde_json::Value::Null;
    let outcome: Outcome = match args.solver {
        SolverArg::Branch => {
            let o = branch::solve(&inst);
            stats.branch_nodes = o.stats().nodes;
            o
        }
        SolverArg::Compress => {
            let target = match args.input.class {
                ClassArg::Cliques => Target::CompleteBlock,
                ClassArg::Cycles => Target::Cactus,
                ClassArg::Biconnected => {
                    return Err(usage("--solver compress requires --class cliques or --class cycles"))
                }
            };
            let (o, cs) = solve_with_stats(&inst.graph, inst.d, inst.k, target);
            stats.rules_applied = cs.rule_applications();
            o
        }
        SolverArg::KernelBranch => {
            let (kernel, o) = solve_with_kernel(&inst);
            write_trace(&args.trace, &kernel)?;
            stats.branch_nodes = o.stats().nodes;
            stats.rules_applied = kernel.trace.steps.len() as u64;
            kernel_info = json!({
                "size": kernel.instance().map(|i| i.graph.order()),
                "k": kernel.instance().map(|i| i.k),
                "trace_path": args.trace.as_ref().map(|p| p.display().to_string()),
            });
            o
        }
        SolverArg::Brute => brute_force(&inst, args.oracle_cap)?,
        SolverArg::Approx => {
            let a = approximate_with_bound(&inst.graph, &inst.pclass, inst.d);
            if a.solution.len() <= inst.k {
                Outcome::Solved(branch::Solution {
                    deleted: a.solution,
                    stats: Default::default(),
                })
            } else if a.lower_bound > inst.k {
                Outcome::Infeasible(Default::default())
            } else {
                return Err(Fail {
                    status: EXIT_INCONCLUSIVE,
                    error: anyhow::anyhow!(
                        "approximation is inconclusive: found {} deletions, lower bound {}",
                        a.solution.len(),
                        a.lower_bound
                    ),
                });
            }
        }
    };
    stats.elapsed_ms = start.elapsed().as_millis();
    let yes = outcome.is_yes();
    let solution = outcome.solution().map(|s| s.to_vec());
    let record = json!({
        "format_version": FORMAT_VERSION,
        "command": "solve",
        "solver": args.solver.to_possible_value().unwrap().get_name(),
        "class": inst.pclass.name(),
        "d": inst.d,
        "k": inst.k,
        "vertices": inst.graph.order(),
        "edges": inst.graph.size(),
        "answer": if yes { "yes" } else { "no" },
        "solution": solution,
        "stats": stats,
        "kernel": kernel_info,
    });
    let human = match &solution {
        Some(s) => format!("YES {} deletions: {}\n", s.len(), list(s)),
        None => "NO\n".to_string(),
    };
    emit(args.input.output, record, human);
    Ok(if yes { EXIT_YES } else { EXIT_NO })
}

fn approx(args: ApproxArgs) -> Result<u8, Fail> {
    let inst = load(&args.input, 0)?;
    let start = Instant::now();
    let a = approximate_with_bound(&inst.graph, &inst.pclass, inst.d);
    let record = json!({
        "format_version": FORMAT_VERSION,
        "command": "approx",
        "class": inst.pclass.name(),
        "d": inst.d,
        "solution": a.solution,
        "size": a.solution.len(),
        "lower_bound": a.lower_bound,
        "elapsed_ms": start.elapsed().as_millis(),
    });
    let human = format!(
        "{} deletions (optimum at least {}): {}\n",
        a.solution.len(),
        a.lower_bound,
        list(&a.solution)
    );
    emit(args.input.output, record, human);
    Ok(0)
}

fn kernelize_cmd(args: KernelizeArgs) -> Result<u8, Fail> {
    let inst = load(&args.input, args.k)?;
    let start = Instant::now();
    let kernel = kernelize(&inst);
    let elapsed = start.elapsed().as_millis();
    match &args.trace {
        Some(_) => write_trace(&args.trace, &kernel)?,
        None if args.input.output == OutputArg::Human => eprint!("{}", kernel.trace.to_log()),
        None => {}
    }
    let (status, human, reduced) = match &kernel.verdict {
        Verdict::No => (EXIT_NO, "NO\n".to_string(), serde_json::Value::Null),
        Verdict::Reduced(out) => (
            0,
            format!("# d={} k={}\n{}", out.d, out.k, write_edge_list(&out.graph)),
            json!({
                "vertices": out.graph.vertices().collect::<Vec<_>>(),
                "edges": out.graph.edges().map(|(u, v)| [u, v]).collect::<Vec<_>>(),
                "d": out.d,
                "k": out.k,
            }),
        ),
    };
    let record = json!({
        "format_version": FORMAT_VERSION,
        "command": "kernelize",
        "class": inst.pclass.name(),
        "answer": if status == EXIT_NO { json!("no") } else { serde_json::Value::Null },
        "size": kernel.instance().map(|i| i.graph.order()),
        "rules_applied": kernel.trace.steps.len(),
        "trace": kernel.trace.to_log().lines().collect::<Vec<_>>(),
        "trace_path": args.trace.as_ref().map(|p| p.display().to_string()),
        "reduced": reduced,
        "elapsed_ms": elapsed,
    });
    emit(args.input.output, record, human);
    Ok(status)
}

fn difftest(args: DifftestArgs) -> Result<u8, Fail> {
    if !(0.0..=1.0).contains(&args.p) {
        return Err(usage("--p must lie in [0, 1]"));
    }
    let gen = GeneratorSpec {
        family: Family::Random { n: args.n, p: args.p },
        seed: args.seed,
    };
    let plan = TrialPlan {
        oracle_cap: args.oracle_cap,
        ..TrialPlan::default()
    };
    let start = Instant::now();
    let report = differential_run(&gen, &plan, &standard_solvers(), args.trials);
    let record = json!({
        "format_version": FORMAT_VERSION,
        "command": "difftest",
        "trials": report.records.len(),
        "mismatches": report.mismatches().map(|r| r.to_string()).collect::<Vec<_>>(),
        "all_agree": report.all_agree(),
        "records": report.records.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
        "elapsed_ms": start.elapsed().as_millis(),
    });
    emit(args.output, record, report.to_text());
    Ok(if report.all_agree() { 0 } else { EXIT_MISMATCH })
}

fn gen(args: GenArgs) -> Result<u8, Fail> {
    if !(0.0..=1.0).contains(&args.p) {
        return Err(usage("--p must lie in [0, 1]"));
    }
    let grid = |seed| {
        generate(&GeneratorSpec {
            family: Family::KxkGrid { k: args.k, p: args.p },
            seed,
        })
    };
    let text = match args.family {
        FamilyArg::Random => write_edge_list(&generate(&GeneratorSpec {
            family: Family::Random { n: args.n, p: args.p },
            seed: args.seed,
        })),
        FamilyArg::Grid => write_edge_list(&grid(args.seed)),
        FamilyArg::Kxk => {
            let (inst, _) = gen_kxk_reduction(&grid(args.seed), args.k)?;
            format!("# class=biconnected d={} k={}\n{}", inst.d, inst.k, write_edge_list(&inst.graph))
        }
    };
    print!("{text}");
    Ok(0)
}

fn run(cli: Cli) -> Result<u8, Fail> {
    match cli.command {
        Command::Solve(a) => solve(a),
        Command::Approx(a) => approx(a),
        Command::Kernelize(a) => kernelize_cmd(a),
        Command::Difftest(a) => difftest(a),
        Command::Gen(a) => gen(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(status) => ExitCode::from(status),
        Err(Fail { status, error }) => {
            eprintln!("error: {error:#}");
            ExitCode::from(status)
        }
    }
}

