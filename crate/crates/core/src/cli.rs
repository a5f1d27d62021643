//! Command-line front end. [`run`] takes the argument vector and output
//! streams so it can be driven from tests.
//!
//! Exit codes: 0 success (and `decide` "yes"), 1 `decide` "no" or `verify`
//! violations, 64 usage, 65 unparsable input, 70 size guard, 2 anything else.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::bgep::{bgep_to_cfp, cfp_to_bgep};
use crate::error::CfpError;
use crate::generate::generate;
use crate::instance::CfpInstance;
use crate::io::{
    parse_edge_list, parse_instance, parse_solution_unchecked, write_edge_list, write_instance, write_solution,
};
use crate::objective::evaluate;
use crate::rational::Rational;
use crate::reduction::{decide_cfp1_via_cfp2, decide_extended_efficacy, extend_instance, threshold_transform};
use crate::solution::validate;
use crate::solvers::{self, decide, DecisionQuery, Method, Objective, SolveOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_OTHER: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_PARSE: i32 = 65;
pub const EXIT_GUARD: i32 = 70;

#[derive(Debug, Parser)]
#[command(name = "cfp", version, about = "Cell formation solver and reduction tools")]
struct Cli {
    /// Worker threads for the exact solvers (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ObjectiveArg {
    F1,
    #[value(alias = "f2")]
    Efficacy,
}

impl From<ObjectiveArg> for Objective {
    fn from(o: ObjectiveArg) -> Self {
        match o {
            ObjectiveArg::F1 => Objective::F1,
            ObjectiveArg::Efficacy => Objective::Efficacy,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MethodArg {
    Oracle,
    Exact,
    Heuristic,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Bgep,
    Cfp,
}

#[derive(Debug, clap::Args)]
struct MethodOpts {
    #[arg(long, value_enum, default_value = "exact")]
    method: MethodArg,
    /// Seed for the heuristic start.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Round limit for the heuristic.
    #[arg(long, default_value_t = 1000)]
    max_iters: usize,
    /// Skip folding identical rows and columns.
    #[arg(long)]
    no_merge: bool,
}

impl MethodOpts {
    fn method(&self) -> Method {
        match self.method {
            MethodArg::Oracle => Method::Oracle,
            MethodArg::Exact => Method::Exact,
            MethodArg::Heuristic => Method::Heuristic {
                seed: self.seed,
                max_iters: self.max_iters,
            },
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Optimize an instance and print the report and solution.
    Solve {
        #[arg(long, value_enum)]
        objective: ObjectiveArg,
        #[command(flatten)]
        method: MethodOpts,
        file: PathBuf,
    },
    /// Print the instance extended with the all-ones block.
    Reduce {
        /// Also print the efficacy threshold matching `e + v <= c`.
        #[arg(long)]
        c: Option<u64>,
        /// Print the extended matrix with identical rows and columns folded.
        #[arg(long)]
        merged: bool,
        file: PathBuf,
    },
    /// Convert between the instance format and the edge-list format.
    Convert {
        #[arg(long, value_enum)]
        to: Format,
        file: PathBuf,
    },
    /// Answer a threshold question: prints `yes` (exit 0) or `no` (exit 1).
    Decide {
        #[arg(long, value_enum)]
        objective: ObjectiveArg,
        /// Integer bound on `e + v`, or efficacy bound as `num/den` or exact decimal.
        #[arg(long)]
        threshold: String,
        /// Answer on the extended instance with an efficacy solver.
        #[arg(long)]
        via_reduction: bool,
        #[command(flatten)]
        method: MethodOpts,
        file: PathBuf,
    },
    /// Check a solution against an instance and print its report.
    Verify { instance: PathBuf, solution: PathBuf },
    /// Print a seeded random instance.
    Gen {
        #[arg(short = 'm')]
        machines: usize,
        #[arg(short = 'p')]
        parts: usize,
        /// Probability of a one, as `num/den` or exact decimal.
        #[arg(long)]
        density: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

enum Failure {
    Usage(String),
    Io(String),
    Cfp(CfpError),
}

impl From<CfpError> for Failure {
    fn from(e: CfpError) -> Self {
        Failure::Cfp(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Io(_) => EXIT_OTHER,
            Failure::Cfp(e) => match e {
                CfpError::Parse { .. } => EXIT_PARSE,
                CfpError::Guard(_) => EXIT_GUARD,
                CfpError::InvalidArgument(_) | CfpError::ThresholdOutOfRange(_) => EXIT_USAGE,
                _ => EXIT_OTHER,
            },
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) | Failure::Io(m) => m.clone(),
            Failure::Cfp(e) => e.to_string(),
        }
    }
}

type Outcome = Result<i32, Failure>;

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let text = e.to_string();
                    let first = text.lines().next().unwrap_or("invalid arguments");
                    let first = first.strip_prefix("error: ").unwrap_or(first);
                    let _ = writeln!(err, "error: {first}");
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(cli, out, err) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message());
            f.code()
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("cannot read {}: {e}", path.display())))
}

fn load_instance(path: &Path) -> Result<CfpInstance, Failure> {
    Ok(parse_instance(&read(path)?)?)
}

fn parse_rational(text: &str) -> Result<Rational, Failure> {
    text.parse()
        .map_err(|_| Failure::Usage(format!("{text:?} is not a fraction or exact decimal")))
}

fn execute(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let mut options = SolveOptions {
        threads: cli.threads,
        ..SolveOptions::default()
    };
    if cli.threads == Some(0) {
        return Err(Failure::Usage("--threads must be at least 1".into()));
    }
    match cli.command {
        Command::Solve {
            objective,
            method,
            file,
        } => {
            let instance = load_instance(&file)?;
            options.merge = !method.no_merge;
            let result = solvers::solve(&instance, objective.into(), method.method(), &options)?;
            writeln!(out, "{}", result.report)?;
            writeln!(out, "nodes: {}", result.nodes)?;
            write!(out, "{}", write_solution(&result.best))?;
            Ok(EXIT_OK)
        }
        Command::Reduce { c, merged, file } => {
            let instance = load_instance(&file)?;
            let extended = extend_instance(&instance)?;
            let threshold = c.map(|c| threshold_transform(c, &extended)).transpose()?;
            if let Some(t) = threshold {
                writeln!(out, "# threshold: {t}")?;
            }
            let body = if merged {
                write_instance(&extended.merged().0)
            } else {
                write_instance(&extended.extended)
            };
            write!(out, "{body}")?;
            Ok(EXIT_OK)
        }
        Command::Convert { to, file } => {
            let text = read(&file)?;
            let converted = match to {
                Format::Bgep => write_edge_list(&cfp_to_bgep(&parse_instance(&text)?)?),
                Format::Cfp => write_instance(&bgep_to_cfp(&parse_edge_list(&text)?)?),
            };
            write!(out, "{converted}")?;
            Ok(EXIT_OK)
        }
        Command::Decide {
            objective,
            threshold,
            via_reduction,
            method,
            file,
        } => {
            let instance = load_instance(&file)?;
            options.merge = !method.no_merge;
            let query = match Objective::from(objective) {
                Objective::F1 => DecisionQuery::F1AtMost(threshold.parse().map_err(|_| {
                    Failure::Usage(format!("f1 threshold {threshold:?} is not a non-negative integer"))
                })?),
                Objective::Efficacy => DecisionQuery::efficacy_at_least(parse_rational(&threshold)?)?,
            };
            let method = method.method();
            let solver = |i: &CfpInstance| solvers::solve(i, Objective::Efficacy, method, &options);
            let decision = match (query, via_reduction) {
                (q, false) => decide(&instance, q, method, &options)?,
                (DecisionQuery::F1AtMost(c), true) => decide_cfp1_via_cfp2(&instance, c, solver)?,
                (DecisionQuery::EfficacyAtLeast(t), true) => decide_extended_efficacy(&instance, t, solver)?,
            };
            if decision.is_yes() {
                writeln!(out, "yes")?;
                Ok(EXIT_OK)
            } else {
                writeln!(out, "no")?;
                Ok(EXIT_NO)
            }
        }
        Command::Verify { instance, solution } => {
            let instance = load_instance(&instance)?;
            let solution = parse_solution_unchecked(&read(&solution)?)?;
            let violations = validate(&instance, &solution);
            if violations.iter().any(|v| v.is_structural()) {
                for v in &violations {
                    writeln!(out, "violation: {v}")?;
                }
                return Ok(EXIT_NO);
            }
            for v in &violations {
                writeln!(err, "note: {v}")?;
            }
            writeln!(out, "{}", evaluate(&instance, &solution)?)?;
            Ok(EXIT_OK)
        }
        Command::Gen {
            machines,
            parts,
            density,
            seed,
        } => {
            let density = parse_rational(&density)?;
            write!(out, "{}", write_instance(&generate(machines, parts, density, seed)?))?;
            Ok(EXIT_OK)
        }
    }
}
