use std::fmt;

use crate::error::{CfpError, Result};
use crate::instance::CfpInstance;
use crate::rational::Rational;
use crate::solution::{check_structure, CfpSolution};

/// Weighted counts for an (instance, solution) pair.
///
/// `e` counts ones whose machine and part sit in different cells, `v` counts
/// zeros whose machine and part share a cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ObjectiveReport {
    pub n1: u64,
    pub e: u64,
    pub v: u64,
    pub f1: u64,
    /// Grouping efficacy `(n1 - e) / (n1 + v)`; `None` when `n1 + v = 0`.
    pub f2: Option<Rational>,
}

impl ObjectiveReport {
    pub fn from_counts(n1: u64, e: u64, v: u64) -> Self {
        let f2 =
            (n1 + v > 0).then(|| Rational::new(i128::from(n1 - e), i128::from(n1 + v)).expect("positive denominator"));
        ObjectiveReport {
            n1,
            e,
            v,
            f1: e + v,
            f2,
        }
    }

    pub fn efficacy(&self) -> Result<Rational> {
        self.f2.ok_or(CfpError::UndefinedEfficacy)
    }
}

impl fmt::Display for ObjectiveReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n1: {}", self.n1)?;
        writeln!(f, "e: {}", self.e)?;
        writeln!(f, "v: {}", self.v)?;
        writeln!(f, "f1: {}", self.f1)?;
        match self.f2 {
            Some(r) => write!(f, "efficacy: {r}"),
            None => write!(f, "efficacy: undefined"),
        }
    }
}

/// Counts weighted exceptions and voids of `solution` on `instance`.
pub fn evaluate(instance: &CfpInstance, solution: &CfpSolution) -> Result<ObjectiveReport> {
    check_structure(instance, solution)?;
    let rw = instance.row_weights();
    let cw = instance.col_weights();
    let (mut inside_ones, mut v) = (0u64, 0u64);
    for (i, &ci) in solution.machine_cells().iter().enumerate() {
        for (j, &cj) in solution.part_cells().iter().enumerate() {
            if ci == cj {
                let w = rw[i] * cw[j];
                if instance.a(i, j) {
                    inside_ones += w;
                } else {
                    v += w;
                }
            }
        }
    }
    Ok(ObjectiveReport::from_counts(
        instance.n1(),
        instance.n1() - inside_ones,
        v,
    ))
}
