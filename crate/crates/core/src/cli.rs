//! Command-line front end: solve one problem file, compare both methods
//! over many files, or render a recorded trace as an SVG diagram.
//!
//! The exit code of `solve` encodes what the solver concluded, so shell
//! scripts can branch on it without parsing output:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | a certified minimizer was returned |
//! | 2 | the feasible set was proven empty |
//! | 3 | stopped at resolution without an answer either way |
//! | 4 | the trial budget ran out |
//! | 1 | anything else: unreadable files, bad arguments, evaluation errors |
//!
//! `compare` and `plot` exit 0 when their output was produced and 1 on
//! errors; per-problem solver failures inside a comparison are reported
//! in the table, not via the exit code.

use crate::ibba::{self, Recompute, SolverConfig};
use crate::pen::{self, PenaltyConfig};
use crate::problem::ProblemSpec;
use crate::problem_file;
use crate::report::{ComparisonRow, ComparisonTable, RunClass, RunReport};
use crate::svg;
use crate::trace::Trace;
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

pub const EXIT_SOLVED: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_INFEASIBLE: i32 = 2;
pub const EXIT_UNRESOLVED: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

/// Exit code for a finished run of either method.
pub fn exit_code(class: RunClass) -> i32 {
    match class {
        RunClass::Solved => EXIT_SOLVED,
        RunClass::Infeasible => EXIT_INFEASIBLE,
        RunClass::Unresolved => EXIT_UNRESOLVED,
        RunClass::Budget => EXIT_BUDGET,
    }
}

#[derive(Parser)]
#[command(
    name = "indexbound",
    version,
    about = "Global minimization over an interval under ordered Lipschitz constraints"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one problem file and print a run report.
    Solve(SolveArgs),
    /// Run both methods on each file and print a comparison table.
    Compare(CompareArgs),
    /// Render a recorded trace over its problem as an SVG diagram.
    Plot(PlotArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    /// Index branch and bound: evaluates constraints one at a time.
    Ibba,
    /// Sawtooth minimization of a penalized objective.
    Pen,
}

#[derive(Args)]
struct SolveArgs {
    /// Problem file.
    file: PathBuf,
    #[arg(long, value_enum, default_value_t = Method::Ibba)]
    method: Method,
    /// Accuracy: stop once the selected interval is this short.
    /// Defaults to (b - a) / 10000.
    #[arg(long)]
    epsilon: Option<f64>,
    /// Trial budget.
    #[arg(long)]
    max_iter: Option<u64>,
    /// Write the trial-by-trial trace to this file.
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Print the report as JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct CompareArgs {
    /// Problem files, one table row each.
    #[arg(required = true)]
    files: Vec<PathBuf>,
    /// Accuracy for both methods. Defaults to (b - a) / 10000 per problem.
    #[arg(long)]
    epsilon: Option<f64>,
    /// Trial budget for both methods.
    #[arg(long)]
    max_iter: Option<u64>,
    /// Write the table to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Emit the table as JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct PlotArgs {
    /// Trace file written by `solve --trace`.
    trace: PathBuf,
    /// The problem file the trace was produced from.
    file: PathBuf,
    /// Output SVG path.
    #[arg(long)]
    out: PathBuf,
}

/// Parses arguments and runs the selected command, returning the process
/// exit code. The binary is a one-line wrapper around this.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests land here too; only real usage
            // errors get the error exit code.
            let code = if e.use_stderr() { EXIT_ERROR } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let result = match cli.command {
        Command::Solve(args) => cmd_solve(args),
        Command::Compare(args) => cmd_compare(args),
        Command::Plot(args) => cmd_plot(args),
    };
    result.unwrap_or_else(|msg| {
        eprintln!("error: {msg}");
        EXIT_ERROR
    })
}

fn in_file(path: &Path, e: impl std::fmt::Display) -> String {
    format!("{}: {e}", path.display())
}

fn load(path: &Path) -> Result<ProblemSpec, String> {
    let text = fs::read_to_string(path).map_err(|e| in_file(path, e))?;
    let spec = problem_file::from_text(&text).map_err(|e| in_file(path, e))?;
    spec.validate().map_err(|e| in_file(path, e))?;
    Ok(spec)
}

fn default_epsilon(spec: &ProblemSpec) -> f64 {
    1e-4 * (spec.b - spec.a)
}

fn ibba_config(
    args_epsilon: Option<f64>,
    max_iter: Option<u64>,
    spec: &ProblemSpec,
    emit_trace: bool,
) -> SolverConfig {
    let defaults = SolverConfig::default();
    SolverConfig {
        epsilon: args_epsilon.unwrap_or_else(|| default_epsilon(spec)),
        max_iterations: max_iter.unwrap_or(defaults.max_iterations),
        emit_trace,
        recompute: Recompute::Incremental,
    }
}

fn pen_config(
    args_epsilon: Option<f64>,
    max_iter: Option<u64>,
    spec: &ProblemSpec,
    emit_trace: bool,
) -> PenaltyConfig {
    let defaults = PenaltyConfig::default();
    PenaltyConfig {
        epsilon: args_epsilon.unwrap_or_else(|| default_epsilon(spec)),
        max_iterations: max_iter.unwrap_or(defaults.max_iterations),
        emit_trace,
        ..defaults
    }
}

fn cmd_solve(args: SolveArgs) -> Result<i32, String> {
    let spec = load(&args.file)?;
    let emit_trace = args.trace.is_some();
    let (report, trace): (RunReport, Option<Trace>) = match args.method {
        Method::Ibba => {
            let config = ibba_config(args.epsilon, args.max_iter, &spec, emit_trace);
            let outcome = ibba::solve(&spec, &config).map_err(|e| e.to_string())?;
            (RunReport::from_ibba(&spec, &outcome), outcome.trace)
        }
        Method::Pen => {
            let config = pen_config(args.epsilon, args.max_iter, &spec, emit_trace);
            let outcome = pen::tune_penalty(&spec, &config).map_err(|e| e.to_string())?;
            (RunReport::from_pen(&spec, &outcome), outcome.trace)
        }
    };
    if let (Some(path), Some(trace)) = (&args.trace, &trace) {
        fs::write(path, trace.to_text()).map_err(|e| in_file(path, e))?;
    }
    if args.json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.render());
    }
    Ok(exit_code(report.class))
}

fn cmd_compare(args: CompareArgs) -> Result<i32, String> {
    let specs: Vec<ProblemSpec> = args
        .files
        .iter()
        .map(|path| load(path))
        .collect::<Result<_, _>>()?;
    // Problems run in parallel; collect() keeps rows in input order.
    let rows: Vec<ComparisonRow> = specs
        .par_iter()
        .map(|spec| {
            let sc = ibba_config(args.epsilon, args.max_iter, spec, false);
            let ibba = ibba::solve(spec, &sc)
                .map(|o| RunReport::from_ibba(spec, &o))
                .map_err(|e| e.to_string());
            let pc = pen_config(args.epsilon, args.max_iter, spec, false);
            let pen = pen::tune_penalty(spec, &pc)
                .map(|o| RunReport::from_pen(spec, &o))
                .map_err(|e| e.to_string());
            ComparisonRow::new(
                &spec.name,
                pen.as_ref().map_err(String::as_str),
                ibba.as_ref().map_err(String::as_str),
            )
        })
        .collect();
    let table = ComparisonTable::new(rows);
    let text = if args.json {
        format!("{}\n", table.to_json())
    } else {
        table.render()
    };
    match &args.out {
        Some(path) => fs::write(path, text).map_err(|e| in_file(path, e))?,
        None => print!("{text}"),
    }
    Ok(0)
}

fn cmd_plot(args: PlotArgs) -> Result<i32, String> {
    let spec = load(&args.file)?;
    let text = fs::read_to_string(&args.trace).map_err(|e| in_file(&args.trace, e))?;
    let trace = Trace::from_text(&text).map_err(|e| in_file(&args.trace, e))?;
    let diagram = svg::render(&spec, &trace).map_err(|e| e.to_string())?;
    fs::write(&args.out, diagram).map_err(|e| in_file(&args.out, e))?;
    Ok(0)
}
