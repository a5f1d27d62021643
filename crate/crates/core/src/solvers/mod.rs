//! Optimization and decision procedures for `f1 = e + v` and grouping
//! efficacy.
//!
//! * [`oracle_solve`] enumerates every joint machine/part labeling.
//! * [`exact_solve_f1`] enumerates machine partitions only; given the
//!   machine cells, each part independently picks its cheapest cell.
//! * [`exact_solve_f2`] wraps the same per-part decomposition in a
//!   Dinkelbach loop, since the ratio objective does not decompose.
//! * [`heuristic_solve`] alternates per-side reassignment from a seeded start.

mod decide;
mod exact;
mod heuristic;
mod oracle;
pub mod partition;

use std::fmt;
use std::str::FromStr;

use crate::error::{CfpError, Result};
use crate::objective::ObjectiveReport;
use crate::rational::Rational;
use crate::solution::CfpSolution;

pub use decide::{decide, Decision, DecisionQuery};
pub use exact::{exact_solve_f1, exact_solve_f2};
pub use heuristic::{heuristic_solve, improve};
pub use oracle::oracle_solve;
pub use partition::PartitionIterator;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Objective {
    /// Minimize exceptions plus voids.
    F1,
    /// Maximize grouping efficacy.
    Efficacy,
}

impl FromStr for Objective {
    type Err = CfpError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "f1" => Ok(Objective::F1),
            "efficacy" | "f2" => Ok(Objective::Efficacy),
            _ => Err(CfpError::InvalidArgument(format!("unknown objective {s:?}"))),
        }
    }
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Objective::F1 => "f1",
            Objective::Efficacy => "efficacy",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Oracle,
    Exact,
    Heuristic { seed: u64, max_iters: usize },
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Oracle => "oracle",
            Method::Exact => "exact",
            Method::Heuristic { .. } => "heuristic",
        })
    }
}

/// Guards and switches shared by the solvers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveOptions {
    /// Worker threads for partition fan-out; `None` uses the global pool.
    pub threads: Option<usize>,
    /// Fold identical rows/columns before exact search.
    pub merge: bool,
    /// Also merge for the `f1` objective.
    pub merge_f1: bool,
    /// Largest number of merged rows (or columns, whichever side is
    /// enumerated) the exact solvers accept.
    pub max_enumerated: usize,
    /// Largest `machines + parts` the oracle accepts.
    pub oracle_max_elements: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            threads: None,
            merge: true,
            merge_f1: true,
            max_enumerated: 12,
            oracle_max_elements: 12,
        }
    }
}

impl SolveOptions {
    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = Some(threads);
        self
    }

    pub(crate) fn run<R: Send>(&self, f: impl FnOnce() -> R + Send) -> Result<R> {
        match self.threads {
            None => Ok(f()),
            Some(n) => {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(n.max(1))
                    .build()
                    .map_err(|e| CfpError::InvalidArgument(format!("thread pool: {e}")))?;
                Ok(pool.install(f))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    /// Canonical best solution found.
    pub best: CfpSolution,
    /// `evaluate(instance, best)` on the instance passed to the solver.
    pub report: ObjectiveReport,
    /// Partitions (oracle: joint labelings) examined; heuristic: rounds.
    pub nodes: u64,
    pub method: Method,
    /// Dinkelbach parameters in the order visited; empty for other solvers.
    pub trace: Vec<Rational>,
}

pub fn solve(
    instance: &crate::CfpInstance,
    objective: Objective,
    method: Method,
    options: &SolveOptions,
) -> Result<SolveResult> {
    match (method, objective) {
        (Method::Oracle, _) => oracle_solve(instance, objective, options),
        (Method::Exact, Objective::F1) => exact_solve_f1(instance, options),
        (Method::Exact, Objective::Efficacy) => exact_solve_f2(instance, options),
        (Method::Heuristic { seed, max_iters }, _) => heuristic_solve(instance, objective, seed, max_iters),
    }
}
