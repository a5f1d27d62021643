use std::cmp::Ordering;

use super::partition::PartitionIterator;
use super::{Method, Objective, SolveOptions, SolveResult};
use crate::error::{CfpError, Result};
use crate::instance::CfpInstance;
use crate::objective::{evaluate, ObjectiveReport};
use crate::solution::CfpSolution;

/// Exhaustive search over every joint labeling of machines and parts.
///
/// Joint labelings are enumerated as restricted growth strings over
/// machines followed by parts, so each solution is visited once in its
/// canonical form and the first optimum met is the lexicographically
/// smallest one.
pub fn oracle_solve(instance: &CfpInstance, objective: Objective, options: &SolveOptions) -> Result<SolveResult> {
    let (m, p) = (instance.machines(), instance.parts());
    let limit = options.oracle_max_elements;
    if m + p > limit {
        return Err(CfpError::Guard(format!(
            "oracle accepts at most {limit} machines plus parts, got {m}x{p}"
        )));
    }
    if objective == Objective::Efficacy && instance.n1() == 0 {
        return Err(CfpError::UndefinedEfficacy);
    }

    let rw = instance.row_weights();
    let cw = instance.col_weights();
    let n1 = instance.n1();
    let mut labels = PartitionIterator::new(m + p, instance.capacity());
    let mut best: Option<(u64, u64, Vec<usize>)> = None;
    let mut nodes = 0u64;
    while let Some(rgs) = labels.advance() {
        nodes += 1;
        let (machines, parts) = rgs.split_at(m);
        let (mut inside, mut v) = (0u64, 0u64);
        for (i, &ci) in machines.iter().enumerate() {
            for (j, &cj) in parts.iter().enumerate() {
                if ci == cj {
                    if instance.a(i, j) {
                        inside += rw[i] * cw[j];
                    } else {
                        v += rw[i] * cw[j];
                    }
                }
            }
        }
        let e = n1 - inside;
        let better = match &best {
            None => true,
            Some((be, bv, _)) => compare(objective, n1, (e, v), (*be, *bv)) == Ordering::Greater,
        };
        if better {
            best = Some((e, v, rgs.to_vec()));
        }
    }
    let (_, _, rgs) = best.expect("at least one labeling exists");
    let (machines, parts) = rgs.split_at(m);
    let solution = CfpSolution::new(machines.to_vec(), parts.to_vec());
    let report: ObjectiveReport = evaluate(instance, &solution)?;
    Ok(SolveResult {
        best: solution,
        report,
        nodes,
        method: Method::Oracle,
        trace: Vec::new(),
    })
}

/// `Greater` when `a` is strictly better than `b`.
fn compare(objective: Objective, n1: u64, a: (u64, u64), b: (u64, u64)) -> Ordering {
    match objective {
        Objective::F1 => (b.0 + b.1).cmp(&(a.0 + a.1)),
        Objective::Efficacy => {
            // (n1 - ea) / (n1 + va)  vs  (n1 - eb) / (n1 + vb)
            let lhs = u128::from(n1 - a.0) * u128::from(n1 + b.1);
            let rhs = u128::from(n1 - b.0) * u128::from(n1 + a.1);
            lhs.cmp(&rhs)
        }
    }
}
