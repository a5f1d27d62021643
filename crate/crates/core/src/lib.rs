//! Cell formation: block-diagonalize a binary machine-part incidence matrix.
//!
//! A [`CfpSolution`] labels every machine and part with a cell. Ones outside
//! their cell are exceptions (`e`), zeros inside are voids (`v`). The crate
//! minimizes `f1 = e + v` or maximizes grouping efficacy
//! `(n1 - e) / (n1 + v)`, and provides:
//!
//! * [`bgep`]: the equivalent bipartite graph editing view,
//! * [`preprocess`]: folding identical rows and columns into weights,
//! * [`reduction`]: the padded instance that turns an `f1` threshold into an
//!   efficacy threshold,
//! * [`solvers`]: brute-force oracle, exact partition search and a heuristic,
//! * [`io`] and [`generate`]: text formats and seeded random instances.

pub mod bgep;
pub mod cli;
pub mod error;
pub mod fixtures;
pub mod generate;
pub mod instance;
pub mod io;
pub mod matrix;
pub mod objective;
pub mod preprocess;
pub mod rational;
pub mod reduction;
pub mod solution;
pub mod solvers;

pub use error::{CfpError, Result};
pub use instance::CfpInstance;
pub use matrix::BoolMatrix;
pub use objective::{evaluate, ObjectiveReport};
pub use rational::Rational;
pub use solution::{validate, CfpSolution, Violation};
pub use solvers::{solve, Method, Objective, SolveOptions, SolveResult};
