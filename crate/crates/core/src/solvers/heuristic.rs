use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Method, Objective, SolveResult};
use crate::error::{CfpError, Result};
use crate::instance::CfpInstance;
use crate::objective::{evaluate, ObjectiveReport};
use crate::rational::Rational;
use crate::solution::CfpSolution;

/// Alternating improvement from a seeded random labeling.
///
/// Each round reassigns every part to its best cell given the machine cells,
/// then every machine given the part cells. For efficacy, "best" is measured
/// by `(ones inside) - lambda * (zeros inside)` with `lambda` the current
/// efficacy; any assignment scoring at least the current one has efficacy at
/// least `lambda`, so accepted rounds never make things worse. Stops when a
/// round brings no strict improvement or after `max_iters` rounds.
pub fn heuristic_solve(
    instance: &CfpInstance,
    objective: Objective,
    seed: u64,
    max_iters: usize,
) -> Result<SolveResult> {
    if objective == Objective::Efficacy && instance.n1() == 0 {
        return Err(CfpError::UndefinedEfficacy);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cap = instance.capacity();
    let start = CfpSolution::new(
        (0..instance.machines()).map(|_| rng.gen_range(0..cap)).collect(),
        (0..instance.parts()).map(|_| rng.gen_range(0..cap)).collect(),
    );
    let mut result = improve(instance, objective, &start, max_iters)?;
    result.method = Method::Heuristic { seed, max_iters };
    Ok(result)
}

/// The improvement loop of [`heuristic_solve`] from a given start.
pub fn improve(
    instance: &CfpInstance,
    objective: Objective,
    start: &CfpSolution,
    max_iters: usize,
) -> Result<SolveResult> {
    if objective == Objective::Efficacy && instance.n1() == 0 {
        return Err(CfpError::UndefinedEfficacy);
    }
    let transposed = instance.transpose();
    let mut current = start.canonicalize();
    let mut report = evaluate(instance, &current)?;
    let mut rounds = 0u64;
    while rounds < max_iters as u64 {
        rounds += 1;
        let lambda = match objective {
            Objective::F1 => None,
            Objective::Efficacy => Some(report.efficacy()?),
        };
        let parts = reassign(instance, current.machine_cells(), lambda);
        let step = CfpSolution::new(current.machine_cells().to_vec(), parts);
        let machines = reassign(&transposed, step.part_cells(), lambda);
        let next = CfpSolution::new(machines, step.part_cells().to_vec()).canonicalize();
        let next_report = evaluate(instance, &next)?;
        if !improves(objective, &next_report, &report)? {
            break;
        }
        current = next;
        report = next_report;
    }
    Ok(SolveResult {
        best: current,
        report,
        nodes: rounds,
        method: Method::Heuristic { seed: 0, max_iters },
        trace: Vec::new(),
    })
}

fn improves(objective: Objective, new: &ObjectiveReport, old: &ObjectiveReport) -> Result<bool> {
    Ok(match objective {
        Objective::F1 => new.f1 < old.f1,
        Objective::Efficacy => new.efficacy()? > old.efficacy()?,
    })
}

/// Best column labels of `instance` given fixed row labels (any label
/// values). Columns may join any label used by a row, or a label no row
/// uses while the capacity allows one.
fn reassign(instance: &CfpInstance, row_cells: &[usize], lambda: Option<Rational>) -> Vec<usize> {
    let mut labels: Vec<usize> = row_cells.to_vec();
    labels.sort_unstable();
    labels.dedup();
    let fresh = (0..)
        .find(|c| labels.binary_search(c).is_err())
        .expect("unbounded range");
    let fresh_allowed = labels.len() < instance.capacity();
    let rw = instance.row_weights();
    let cw = instance.col_weights();

    (0..instance.parts())
        .map(|j| {
            let u = i128::from(cw[j]);
            let mut inside = vec![0i128; labels.len()];
            let mut zeros = vec![0i128; labels.len()];
            let mut ones_total = 0;
            for (i, &c) in row_cells.iter().enumerate() {
                let k = labels.binary_search(&c).expect("label collected above");
                let w = i128::from(rw[i]);
                if instance.a(i, j) {
                    inside[k] += w;
                    ones_total += w;
                } else {
                    zeros[k] += w;
                }
            }
            let value = |k: usize| match lambda {
                None => -u * (zeros[k] + ones_total - inside[k]),
                Some(l) => u * (l.den() * inside[k] - l.num() * zeros[k]),
            };
            let mut best = (value(0), labels[0]);
            for (k, &label) in labels.iter().enumerate().skip(1) {
                let s = value(k);
                if s > best.0 {
                    best = (s, label);
                }
            }
            if fresh_allowed {
                let s = match lambda {
                    None => -u * ones_total,
                    Some(_) => 0,
                };
                if s > best.0 {
                    best = (s, fresh);
                }
            }
            best.1
        })
        .collect()
}
