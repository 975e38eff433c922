//! Command-line front end.
//!
//! Exit codes: 0 for YES, an attained optimum or success; 1 for NO,
//! infeasible or an invalid solution; 2 for usage and input errors.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::digraph::{parse_instance, parse_walks, serialize_instance, serialize_walks, verify_st_solution, Instance, SolutionWalks};
use crate::exact::{solve_st_exact, solve_stu_exact, solve_tpe_exact, solve_variant_exact, ExactEngine, ExactLimits, Variant};
use crate::gadgets::{build_gadget, gen_fig3, parse_gadget, parse_set_cover, serialize_gadget, walks_to_cover};
use crate::gen::{default_ploughs, gen_random_with, RandomSpec};
use crate::solvers::{solve_all_st, solve_max_st, solve_min_st, solve_st, solve_stu, solve_tpe_report, Answer, SolveParams, SolveReport, DEFAULT_TRIALS};
use crate::tpe::TpeInstance;
use crate::trees::{enumerate_free_trees, orient_tree, parse_tree_code};

pub const SEED_ENV: &str = "SNOWTEAM_SEED";
pub const DEFAULT_SEED: u64 = 1;

#[derive(Parser, Debug)]
#[command(name = "snowteam", version, about = "Snow Team solvers, oracles and gadgets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide or optimize a Snow Team variant.
    Solve(SolveArgs),
    /// Check walks against an instance.
    Verify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        walks: PathBuf,
    },
    /// Build the Set Cover gadget.
    Gadget {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Read a set cover off a solution on a gadget file.
    ExtractCover {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        walks: PathBuf,
    },
    /// Generate an instance.
    Gen(GenArgs),
    /// List free trees or oriented candidates of one order.
    Trees {
        #[arg(long)]
        order: usize,
        #[arg(long)]
        oriented: bool,
        #[arg(long)]
        dedupe: bool,
        /// Print only the number of trees.
        #[arg(long)]
        count: bool,
    },
    /// Run the acceptance checks.
    Selftest,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Problem {
    St,
    AllSt,
    MinSt,
    MaxSt,
    Stu,
    Tpe,
}

#[derive(clap::Args, Debug)]
struct SolveArgs {
    #[arg(long, value_enum)]
    problem: Problem,
    #[arg(long)]
    input: PathBuf,
    /// Plough count for `stu`.
    #[arg(long)]
    k: Option<usize>,
    /// Pattern tree code for `tpe`, e.g. `0 1 1:+-`.
    #[arg(long)]
    tree: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = DEFAULT_TRIALS)]
    trials: u32,
    /// Use the exact oracle instead of the randomized pipeline.
    #[arg(long)]
    exact: bool,
    #[arg(long)]
    json: bool,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Keep directed-isomorphic candidates.
    #[arg(long)]
    no_dedupe: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Family {
    Fig3,
    Random,
}

#[derive(clap::Args, Debug)]
struct GenArgs {
    #[arg(long, value_enum)]
    family: Family,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    arcs: usize,
    /// Probability that a vertex is a facility.
    #[arg(long, default_value_t = 0.5)]
    facilities: f64,
    /// Ploughs to place; defaults to a third of the vertices.
    #[arg(long)]
    ploughs: Option<u32>,
    /// Place ploughs on facilities only.
    #[arg(long)]
    restricted: bool,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug)]
struct CliError(String);

impl<E: std::fmt::Display> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError(e.to_string())
    }
}

#[derive(Serialize)]
struct SolveOutput<'a> {
    problem: &'a str,
    answer: &'a str,
    optimum: Option<usize>,
    failure_bound: f64,
    candidates_tested: u64,
    detections_run: u64,
    exact: bool,
    witness: Option<Vec<Vec<usize>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    embedding: Option<Vec<usize>>,
}

/// Runs the CLI on `argv` (program name first) with the process streams.
pub fn run_cli<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_cli_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_cli_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() { write!(err, "{}", e.render()) } else { write!(out, "{}", e.render()) };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(CliError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError(format!("{}: {e}", path.display())))
}

fn write_to(path: Option<&Path>, text: &str, out: &mut dyn Write) -> Result<(), CliError> {
    match path {
        Some(p) if p != Path::new("-") => std::fs::write(p, text).map_err(|e| CliError(format!("{}: {e}", p.display()))),
        _ => Ok(out.write_all(text.as_bytes())?),
    }
}

fn seed_or_env(seed: Option<u64>) -> Result<u64, CliError> {
    if let Some(s) = seed {
        return Ok(s);
    }
    match std::env::var(SEED_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| CliError(format!("{SEED_ENV}=`{v}` is not an unsigned integer"))),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

fn exit_code(answer: Answer) -> i32 {
    if answer.is_positive() {
        0
    } else {
        1
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<i32, CliError> {
    match cmd {
        Command::Solve(args) => solve(args, out),
        Command::Verify { input, walks } => {
            let inst = parse_instance(&read(&input)?)?;
            let sol = parse_walks(&read(&walks)?)?;
            match verify_st_solution(&inst, &sol) {
                Ok(()) => {
                    writeln!(out, "valid")?;
                    Ok(0)
                }
                Err(d) => {
                    writeln!(out, "invalid: {d}")?;
                    Ok(1)
                }
            }
        }
        Command::Gadget { input, output } => {
            let sc = parse_set_cover(&read(&input)?)?;
            write_to(output.as_deref(), &serialize_gadget(&build_gadget(&sc)), out)?;
            Ok(0)
        }
        Command::ExtractCover { input, walks } => {
            let g = parse_gadget(&read(&input)?)?;
            let sol = parse_walks(&read(&walks)?)?;
            if let Err(d) = verify_st_solution(g.instance(), &sol) {
                writeln!(out, "invalid: {d}")?;
                return Ok(1);
            }
            let cover = walks_to_cover(&g, &sol)?;
            let items: Vec<String> = cover.iter().map(usize::to_string).collect();
            writeln!(out, "{}", items.join(" "))?;
            Ok(0)
        }
        Command::Gen(args) => {
            let inst = match args.family {
                Family::Fig3 => gen_fig3(args.n)?,
                Family::Random => {
                    let spec = RandomSpec {
                        n: args.n,
                        arcs: args.arcs,
                        facility_prob: args.facilities,
                        ploughs: args.ploughs.unwrap_or_else(|| default_ploughs(args.n)),
                        restricted: args.restricted,
                    };
                    gen_random_with(&spec, seed_or_env(args.seed)?)?
                }
            };
            write_to(args.output.as_deref(), &serialize_instance(&inst), out)?;
            Ok(0)
        }
        Command::Trees { order, oriented, dedupe, count } => {
            let mut total = 0usize;
            for tree in enumerate_free_trees(order)? {
                if oriented {
                    for c in orient_tree(&tree, dedupe) {
                        total += 1;
                        if !count {
                            writeln!(out, "{}", c.code())?;
                        }
                    }
                } else {
                    total += 1;
                    if !count {
                        writeln!(out, "{}", tree.code())?;
                    }
                }
            }
            if count {
                writeln!(out, "{total}")?;
            }
            Ok(0)
        }
        Command::Selftest => Ok(if crate::selftest::run_all(out)? { 0 } else { 1 }),
    }
}

fn solve(args: SolveArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let inst = parse_instance(&read(&args.input)?)?;
    let params = SolveParams {
        seed: seed_or_env(args.seed)?,
        trials: args.trials,
        dedupe: !args.no_dedupe,
        exact_threshold: 0,
        jobs: args.jobs.max(1),
    };
    let need_k = || args.k.ok_or_else(|| CliError("--k is required for stu".into()));
    let mut embedding = None;
    let report = if args.exact {
        let limits = ExactLimits::default();
        let (answer, witness) = match args.problem {
            Problem::St | Problem::AllSt => {
                if args.problem == Problem::AllSt && !inst.is_restricted() {
                    return Err(CliError("instance is not restricted: some base is not a facility".into()));
                }
                let (yes, w) = solve_st_exact(&inst, &limits)?;
                (Answer::from_bool(yes), w)
            }
            Problem::MinSt => (solve_variant_exact(&inst, Variant::MinSt, &limits)?, None),
            Problem::MaxSt => (solve_variant_exact(&inst, Variant::MaxSt, &limits)?, None),
            Problem::Stu => {
                let (yes, w) = solve_stu_exact(&inst, need_k()?, &limits, ExactEngine::Auto)?;
                (Answer::from_bool(yes), w)
            }
            Problem::Tpe => {
                let emb = solve_tpe_exact(&tpe_instance(&inst, &args)?)?;
                let answer = Answer::from_bool(emb.is_some());
                embedding = emb;
                (answer, None)
            }
        };
        SolveReport { answer, candidates_tested: 0, detections_run: 0, elapsed: Default::default(), failure_bound: 0.0, witness }
    } else {
        match args.problem {
            Problem::St => solve_st(&inst, &params)?,
            Problem::AllSt => solve_all_st(&inst, &params)?,
            Problem::MinSt => solve_min_st(&inst, &params)?,
            Problem::MaxSt => solve_max_st(&inst, &params)?,
            Problem::Stu => solve_stu(&inst, need_k()?, &params)?,
            Problem::Tpe => solve_tpe_report(&tpe_instance(&inst, &args)?, &params),
        }
    };
    print_report(&args, &report, embedding, out)?;
    Ok(exit_code(report.answer))
}

fn tpe_instance(inst: &Instance, args: &SolveArgs) -> Result<TpeInstance, CliError> {
    let code = args.tree.as_deref().ok_or_else(|| CliError("--tree is required for tpe".into()))?;
    Ok(TpeInstance::new(inst.clone(), parse_tree_code(code)?))
}

fn problem_name(p: Problem) -> &'static str {
    match p {
        Problem::St => "st",
        Problem::AllSt => "all-st",
        Problem::MinSt => "min-st",
        Problem::MaxSt => "max-st",
        Problem::Stu => "stu",
        Problem::Tpe => "tpe",
    }
}

fn print_report(args: &SolveArgs, r: &SolveReport, embedding: Option<Vec<usize>>, out: &mut dyn Write) -> Result<(), CliError> {
    let (answer, optimum) = match r.answer {
        Answer::Yes => ("yes", None),
        Answer::No => ("no", None),
        Answer::Value(v) => ("optimum", Some(v)),
        Answer::Infeasible => ("infeasible", None),
    };
    if args.json {
        let o = SolveOutput {
            problem: problem_name(args.problem),
            answer,
            optimum,
            failure_bound: r.failure_bound,
            candidates_tested: r.candidates_tested,
            detections_run: r.detections_run,
            exact: args.exact || r.witness.is_some(),
            witness: r.witness.as_ref().map(walk_lists),
            embedding,
        };
        writeln!(out, "{}", serde_json::to_string(&o)?)?;
        return Ok(());
    }
    match optimum {
        Some(v) => writeln!(out, "optimum {v}")?,
        None => writeln!(out, "{answer}")?,
    }
    writeln!(out, "failure bound {:e}", r.failure_bound)?;
    writeln!(out, "candidates {} detections {}", r.candidates_tested, r.detections_run)?;
    if let Some(emb) = embedding {
        let vs: Vec<String> = emb.iter().map(usize::to_string).collect();
        writeln!(out, "embedding {}", vs.join(" "))?;
    }
    if let Some(w) = &r.witness {
        write!(out, "{}", serialize_walks(w))?;
    }
    Ok(())
}

fn walk_lists(sol: &SolutionWalks) -> Vec<Vec<usize>> {
    sol.walks.iter().map(|w| w.vertices().to_vec()).collect()
}
