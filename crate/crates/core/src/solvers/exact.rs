use rayon::prelude::*;

use super::partition::{blocks_of, PartitionIterator};
use super::{Method, SolveOptions, SolveResult};
use crate::error::{CfpError, Result};
use crate::instance::CfpInstance;
use crate::objective::evaluate;
use crate::preprocess::{merge, unmerge_solution, MergeMap};
use crate::rational::Rational;
use crate::solution::CfpSolution;

/// What a part maximizes when it picks a cell.
#[derive(Debug, Clone, Copy)]
enum Score {
    /// Negated `e + v` contribution.
    F1,
    /// `q * (ones inside) - p * (zeros inside)` for `lambda = p / q`.
    Parametric { p: i128, q: i128 },
}

/// The instance actually searched: merged, and transposed when that makes
/// the enumerated side smaller.
struct Workspace {
    instance: CfpInstance,
    merge_map: Option<MergeMap>,
    transposed: bool,
}

impl Workspace {
    fn prepare(instance: &CfpInstance, merge_rows: bool, options: &SolveOptions) -> Result<Self> {
        let (merged, merge_map) = if merge_rows {
            let (merged, map) = merge(instance);
            (merged, Some(map))
        } else {
            (instance.clone(), None)
        };
        let transposed = merged.parts() < merged.machines();
        let instance = if transposed { merged.transpose() } else { merged };
        let side = instance.machines();
        if side > options.max_enumerated {
            return Err(CfpError::Guard(format!(
                "exact search enumerates partitions of {side} rows/columns after merging, limit is {}",
                options.max_enumerated
            )));
        }
        Ok(Workspace {
            instance,
            merge_map,
            transposed,
        })
    }

    /// Maps a solution of the searched instance back to the caller's instance.
    fn restore(&self, solution: &CfpSolution) -> Result<CfpSolution> {
        let s = if self.transposed {
            solution.transpose()
        } else {
            solution.clone()
        };
        let s = match &self.merge_map {
            Some(map) => unmerge_solution(&s, map)?,
            None => s,
        };
        Ok(s.canonicalize())
    }
}

#[derive(Debug, Clone)]
struct Candidate {
    score: i128,
    solution: CfpSolution,
    nodes: u64,
}

impl Candidate {
    /// Higher score wins; equal scores go to the lexicographically smaller
    /// solution, so the result does not depend on evaluation order.
    fn better(self, other: Candidate) -> Candidate {
        let nodes = self.nodes + other.nodes;
        let mut winner = match self.score.cmp(&other.score) {
            std::cmp::Ordering::Greater => self,
            std::cmp::Ordering::Less => other,
            std::cmp::Ordering::Equal => {
                if self.solution <= other.solution {
                    self
                } else {
                    other
                }
            }
        };
        winner.nodes = nodes;
        winner
    }
}

/// Best part cells for a fixed machine partition. Each part takes the
/// highest-scoring existing cell (lowest index on ties) or, while a label is
/// still free, a fresh part-only cell if that is strictly better.
fn assign_parts(instance: &CfpInstance, machine_cells: &[usize], score: Score) -> (i128, Vec<usize>) {
    let blocks = blocks_of(machine_cells);
    let fresh_allowed = blocks < instance.capacity();
    let (m, p) = (instance.machines(), instance.parts());
    let rw = instance.row_weights();
    let cw = instance.col_weights();

    let mut block_weight = vec![0i128; blocks];
    let mut ones = vec![0i128; blocks * p];
    for i in 0..m {
        let k = machine_cells[i];
        let w = i128::from(rw[i]);
        block_weight[k] += w;
        let row = &mut ones[k * p..(k + 1) * p];
        for (j, slot) in row.iter_mut().enumerate() {
            if instance.a(i, j) {
                *slot += w;
            }
        }
    }

    let mut total = 0i128;
    let mut part_cells = Vec::with_capacity(p);
    for j in 0..p {
        let u = i128::from(cw[j]);
        let ones_total: i128 = (0..blocks).map(|k| ones[k * p + j]).sum();
        let value = |k: usize| {
            let inside = ones[k * p + j];
            let zeros = block_weight[k] - inside;
            match score {
                Score::F1 => -u * (zeros + ones_total - inside),
                Score::Parametric { p: lp, q: lq } => u * (lq * inside - lp * zeros),
            }
        };
        let mut best = (value(0), 0);
        for k in 1..blocks {
            let s = value(k);
            if s > best.0 {
                best = (s, k);
            }
        }
        if fresh_allowed {
            let s = match score {
                Score::F1 => -u * ones_total,
                Score::Parametric { .. } => 0,
            };
            if s > best.0 {
                best = (s, blocks);
            }
        }
        total += best.0;
        part_cells.push(best.1);
    }
    (total, part_cells)
}

fn search(instance: &CfpInstance, score: Score, options: &SolveOptions) -> Result<Candidate> {
    let partitions = PartitionIterator::new(instance.machines(), instance.capacity());
    let best = options.run(|| {
        partitions
            .par_bridge()
            .map(|machine_cells| {
                let (score, part_cells) = assign_parts(instance, &machine_cells, score);
                Candidate {
                    score,
                    solution: CfpSolution::new(machine_cells, part_cells),
                    nodes: 1,
                }
            })
            .reduce_with(Candidate::better)
    })?;
    Ok(best.expect("at least one machine partition"))
}

/// Minimum of `e + v` by enumerating machine partitions.
pub fn exact_solve_f1(instance: &CfpInstance, options: &SolveOptions) -> Result<SolveResult> {
    let ws = Workspace::prepare(instance, options.merge && options.merge_f1, options)?;
    let best = search(&ws.instance, Score::F1, options)?;
    let solution = ws.restore(&best.solution)?;
    let report = evaluate(instance, &solution)?;
    debug_assert_eq!(i128::from(report.f1), -best.score);
    Ok(SolveResult {
        best: solution,
        report,
        nodes: best.nodes,
        method: Method::Exact,
        trace: Vec::new(),
    })
}

/// Maximum grouping efficacy by Dinkelbach iteration.
///
/// For `lambda = p / q` the inner problem maximizes
/// `q * (n1 - e) - p * (n1 + v)`, which splits per part once the machine
/// partition is fixed. Starting from `lambda = 0`, each round moves `lambda`
/// to the efficacy of the inner maximizer; the loop stops when the inner
/// maximum is exactly zero, at which point the maximizer attains `lambda`
/// and no solution exceeds it.
pub fn exact_solve_f2(instance: &CfpInstance, options: &SolveOptions) -> Result<SolveResult> {
    if instance.n1() == 0 {
        return Err(CfpError::UndefinedEfficacy);
    }
    let ws = Workspace::prepare(instance, options.merge, options)?;
    let n1 = i128::from(ws.instance.n1());
    let mut lambda = Rational::ZERO;
    let mut trace = Vec::new();
    let mut nodes = 0;
    // The parameter strictly increases through efficacy values, which are
    // ratios with denominator at most the weighted size, so this bound is loose.
    let max_rounds = ws.instance.weighted_size() + 2;
    let best = loop {
        trace.push(lambda);
        if trace.len() as u64 > max_rounds {
            return Err(CfpError::InvalidInstance(
                "Dinkelbach iteration did not converge".into(),
            ));
        }
        let (p, q) = (lambda.num(), lambda.den());
        let candidate = search(&ws.instance, Score::Parametric { p, q }, options)?;
        nodes += candidate.nodes;
        let gap = candidate
            .score
            .checked_sub(p.checked_mul(n1).ok_or(CfpError::Overflow)?)
            .ok_or(CfpError::Overflow)?;
        debug_assert!(gap >= 0);
        if gap == 0 {
            break candidate;
        }
        let next = evaluate(&ws.instance, &candidate.solution)?.efficacy()?;
        debug_assert!(next > lambda);
        lambda = next;
    };
    let solution = ws.restore(&best.solution)?;
    let report = evaluate(instance, &solution)?;
    debug_assert_eq!(report.f2, Some(lambda));
    Ok(SolveResult {
        best: solution,
        report,
        nodes,
        method: Method::Exact,
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::solvers::{oracle_solve, Objective};

    #[test]
    fn table_one_matches_frozen_optima() {
        let opts = SolveOptions::default();
        let f1 = exact_solve_f1(&fixtures::table1(), &opts).unwrap();
        assert_eq!(f1.report.f1, fixtures::TABLE1_F1_OPT);
        let f2 = exact_solve_f2(&fixtures::table1(), &opts).unwrap();
        assert_eq!(f2.report.efficacy().unwrap(), fixtures::table1_f2_opt());
        assert!(f2.trace.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(*f2.trace.last().unwrap(), fixtures::table1_f2_opt());
    }

    #[test]
    fn block_diagonal_is_free() {
        let inst = CfpInstance::from_rows(&[[1, 1, 0, 0], [1, 1, 0, 0], [0, 0, 1, 1]]).unwrap();
        let opts = SolveOptions::default();
        assert_eq!(exact_solve_f1(&inst, &opts).unwrap().report.f1, 0);
        assert_eq!(exact_solve_f2(&inst, &opts).unwrap().report.f2, Some(Rational::ONE));
    }

    #[test]
    fn all_ones_single_cell() {
        let inst = CfpInstance::new(crate::BoolMatrix::ones(4, 3).unwrap());
        let r = exact_solve_f2(&inst, &SolveOptions::default()).unwrap();
        assert_eq!(r.report.f2, Some(Rational::ONE));
        assert_eq!(r.best, CfpSolution::single_cell(4, 3));
    }

    #[test]
    fn unmerged_search_agrees_and_returns_oracle_witness() {
        // Without merging or transposition the exact solver visits the same
        // canonical solutions as the oracle and breaks ties the same way.
        let opts = SolveOptions {
            merge: false,
            ..SolveOptions::default()
        };
        let inst = fixtures::table1();
        let oracle = oracle_solve(&inst, Objective::Efficacy, &opts).unwrap();
        let exact = exact_solve_f2(&inst, &opts).unwrap();
        assert_eq!(exact.best, oracle.best);
        let oracle = oracle_solve(&inst, Objective::F1, &opts).unwrap();
        let exact = exact_solve_f1(&inst, &opts).unwrap();
        assert_eq!(exact.best, oracle.best);
    }

    #[test]
    fn guards() {
        let opts = SolveOptions {
            max_enumerated: 3,
            ..SolveOptions::default()
        };
        let inst = fixtures::table1();
        assert!(matches!(exact_solve_f1(&inst, &opts), Err(CfpError::Guard(_))));
        let zero = CfpInstance::from_rows(&[[0]]).unwrap();
        assert_eq!(exact_solve_f2(&zero, &opts), Err(CfpError::UndefinedEfficacy));
    }

    #[test]
    fn thread_count_does_not_change_results() {
        let inst = fixtures::table1();
        let one = SolveOptions::default().with_threads(1);
        let four = SolveOptions::default().with_threads(4);
        assert_eq!(
            exact_solve_f2(&inst, &one).unwrap(),
            exact_solve_f2(&inst, &four).unwrap()
        );
        assert_eq!(
            exact_solve_f1(&inst, &one).unwrap(),
            exact_solve_f1(&inst, &four).unwrap()
        );
    }
}
