//! Reducing the `e + v` decision question to an efficacy decision question.
//!
//! An `m x p` instance `A` is padded with an all-ones block of side `mp` on
//! the diagonal (zeros elsewhere), adding `(mp)^2` ones. The big block keeps
//! the efficacy denominator `n1 + v` nearly constant, so on the extended
//! matrix efficacy orders solutions by `e + v`: `f1 <= c` on `A` holds iff
//! some solution on the extended matrix reaches efficacy `1 - c / ñ1`, where
//! `ñ1 = n1 + (mp)^2`.

use std::ops::Range;

use crate::error::{CfpError, Result};
use crate::instance::{default_capacity, CfpInstance};
use crate::matrix::BoolMatrix;
use crate::preprocess::{merge, MergeMap};
use crate::rational::Rational;
use crate::solution::{check_structure, CfpSolution};
use crate::solvers::{Decision, SolveResult};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtendedInstance {
    pub base: CfpInstance,
    pub extended: CfpInstance,
    /// Ones added by the block, `(mp)^2`.
    pub delta_n1: u64,
    pub block_rows: Range<usize>,
    pub block_cols: Range<usize>,
}

/// Side of the all-ones block, `m * p`.
fn block_side(base: &CfpInstance) -> usize {
    base.machines() * base.parts()
}

pub fn extend_instance(instance: &CfpInstance) -> Result<ExtendedInstance> {
    if !instance.is_unweighted() {
        return Err(CfpError::Weighted("the reduction is defined on unweighted instances"));
    }
    if instance.n1() == 0 {
        return Err(CfpError::Trivial("n1 = 0, the minimum of e + v is 0"));
    }
    let (m, p) = (instance.machines(), instance.parts());
    let k = block_side(instance);
    let a = instance.matrix();
    let matrix = BoolMatrix::from_fn(m + k, p + k, |i, j| match (i < m, j < p) {
        (true, true) => a.get(i, j),
        (false, false) => true,
        _ => false,
    })?;
    let extended = CfpInstance::with_weights(matrix, vec![1; m + k], vec![1; p + k])?;
    let delta_n1 = (k as u64) * (k as u64);
    debug_assert_eq!(extended.n1(), instance.n1() + delta_n1);
    Ok(ExtendedInstance {
        base: instance.clone(),
        extended,
        delta_n1,
        block_rows: m..m + k,
        block_cols: p..p + k,
    })
}

impl ExtendedInstance {
    /// `ñ1 = n1 + (mp)^2`.
    pub fn n1(&self) -> u64 {
        self.extended.n1()
    }

    /// The extended matrix with identical rows and columns folded, built
    /// without touching the dense block. Equal to `merge(&self.extended)`.
    pub fn merged(&self) -> (CfpInstance, MergeMap) {
        let (m, p) = (self.base.machines(), self.base.parts());
        let k = block_side(&self.base) as u64;
        let a = self.base.matrix();
        let compact = BoolMatrix::from_fn(m + 1, p + 1, |i, j| match (i < m, j < p) {
            (true, true) => a.get(i, j),
            (false, false) => true,
            _ => false,
        })
        .expect("non-empty");
        let mut row_weights = vec![1; m];
        row_weights.push(k);
        let mut col_weights = vec![1; p];
        col_weights.push(k);
        let compact = CfpInstance::with_weights(compact, row_weights, col_weights)
            .and_then(|c| c.with_capacity(self.extended.capacity()))
            .expect("same totals as the extended instance");
        let (merged, mut map) = merge(&compact);
        let expand = |groups: &mut Vec<Vec<usize>>, base: usize, block: &Range<usize>| {
            for g in groups.iter_mut() {
                if g == &[base] {
                    *g = block.clone().collect();
                }
            }
        };
        expand(&mut map.row_groups, m, &self.block_rows);
        expand(&mut map.col_groups, p, &self.block_cols);
        map.original_rows = self.extended.machines();
        map.original_cols = self.extended.parts();
        (merged, map)
    }
}

/// `1 - c / ñ1` for `0 <= c < mp`.
pub fn threshold_transform(c: u64, extended: &ExtendedInstance) -> Result<Rational> {
    let mp = block_side(&extended.base) as u64;
    if c >= mp {
        return Err(CfpError::ThresholdOutOfRange(format!(
            "c = {c} must be below mp = {mp}; larger thresholds are answered directly"
        )));
    }
    Rational::new(i128::from(c), i128::from(extended.n1()))?.one_minus()
}

/// Extends a base solution with one fresh cell holding the whole block.
pub fn lift_solution(solution: &CfpSolution, extended: &ExtendedInstance) -> Result<CfpSolution> {
    check_structure(&extended.base, solution)?;
    let s = solution.canonicalize();
    let fresh = s.num_cells();
    let k = block_side(&extended.base);
    let mut machines = s.machine_cells().to_vec();
    machines.extend(std::iter::repeat_n(fresh, k));
    let mut parts = s.part_cells().to_vec();
    parts.extend(std::iter::repeat_n(fresh, k));
    Ok(CfpSolution::new(machines, parts).canonicalize())
}

/// Restricts a solution of the extended matrix to the original rows and
/// columns. If the restriction uses more labels than the base capacity, its
/// one-sided cells are folded together, which leaves `e` and `v` unchanged.
pub fn project_solution(solution: &CfpSolution, extended: &ExtendedInstance) -> Result<CfpSolution> {
    check_structure(&extended.extended, solution)?;
    let (m, p) = (extended.base.machines(), extended.base.parts());
    let restricted = CfpSolution::new(
        solution.machine_cells()[..m].to_vec(),
        solution.part_cells()[..p].to_vec(),
    )
    .canonicalize();
    let projected = if restricted.num_cells() > extended.base.capacity() {
        restricted.merge_one_sided()
    } else {
        restricted
    };
    debug_assert!(projected.num_cells() <= extended.base.capacity());
    Ok(projected)
}

/// Decides `min f1 <= c` on `instance` by asking for efficacy `>= 1 - c/ñ1`
/// on the merged extended matrix. `solver` must return an exact efficacy
/// optimum of the instance it is given.
///
/// `n1 = 0` and `c >= mp` are answered without building the extension.
pub fn decide_cfp1_via_cfp2<F>(instance: &CfpInstance, c: u64, solver: F) -> Result<Decision>
where
    F: FnOnce(&CfpInstance) -> Result<SolveResult>,
{
    if !instance.is_unweighted() {
        return Err(CfpError::Weighted("the reduction is defined on unweighted instances"));
    }
    let (m, p) = (instance.machines(), instance.parts());
    if instance.n1() == 0 {
        return Ok(Decision::Yes(zero_edit_solution(instance)));
    }
    if c >= (m * p) as u64 {
        // a single cell has f1 = number of zeros <= mp
        return Ok(Decision::Yes(CfpSolution::single_cell(m, p)));
    }
    let extended = extend_instance(instance)?;
    let threshold = threshold_transform(c, &extended)?;
    decide_on_extension(&extended, threshold, solver)
}

/// Decides whether the extended matrix of `instance` admits efficacy
/// `>= threshold`, returning a projected witness on `instance`.
///
/// With `n1 = 0` the lifted zero-edit solution has efficacy 1, so the answer
/// is yes without building the extension.
pub fn decide_extended_efficacy<F>(instance: &CfpInstance, threshold: Rational, solver: F) -> Result<Decision>
where
    F: FnOnce(&CfpInstance) -> Result<SolveResult>,
{
    if threshold < Rational::ZERO || threshold > Rational::ONE {
        return Err(CfpError::ThresholdOutOfRange(format!(
            "efficacy threshold {threshold} outside [0, 1]"
        )));
    }
    if instance.is_unweighted() && instance.n1() == 0 {
        return Ok(Decision::Yes(zero_edit_solution(instance)));
    }
    decide_on_extension(&extend_instance(instance)?, threshold, solver)
}

fn decide_on_extension<F>(extended: &ExtendedInstance, threshold: Rational, solver: F) -> Result<Decision>
where
    F: FnOnce(&CfpInstance) -> Result<SolveResult>,
{
    let (merged, map) = extended.merged();
    let optimum = solver(&merged)?;
    if optimum.report.efficacy()? < threshold {
        return Ok(Decision::No);
    }
    let full = crate::preprocess::unmerge_solution(&optimum.best, &map)?;
    Ok(Decision::Yes(project_solution(&full, extended)?))
}

/// Machines and parts in separate cells: no exceptions, and no voids when
/// the matrix has no ones.
fn zero_edit_solution(instance: &CfpInstance) -> CfpSolution {
    CfpSolution::new(vec![0; instance.machines()], vec![1; instance.parts()])
}

/// Capacity of the extended matrix, for reference in tests and docs.
pub fn extended_capacity(base: &CfpInstance) -> usize {
    let k = block_side(base);
    default_capacity(base.machines() + k, base.parts() + k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::objective::evaluate;
    use crate::solvers::{exact_solve_f2, SolveOptions};

    #[test]
    fn table_one_extension_layout() {
        let ext = extend_instance(&fixtures::table1()).unwrap();
        assert_eq!((ext.extended.machines(), ext.extended.parts()), (40, 42));
        assert_eq!(ext.delta_n1, 1225);
        assert_eq!(ext.n1(), 1246);
        // 1-indexed rows 6..40 and columns 8..42
        assert_eq!((ext.block_rows.clone(), ext.block_cols.clone()), (5..40, 7..42));
        let a = ext.extended.matrix();
        for i in 0..40 {
            for j in 0..42 {
                let expected = match (i < 5, j < 7) {
                    (true, true) => fixtures::table1().a(i, j),
                    (false, false) => true,
                    _ => false,
                };
                assert_eq!(a.get(i, j), expected, "({i}, {j})");
            }
        }
        assert_eq!(ext.extended.capacity(), extended_capacity(&ext.base));
    }

    #[test]
    fn one_by_one() {
        let inst = CfpInstance::from_rows(&[[1]]).unwrap();
        let ext = extend_instance(&inst).unwrap();
        assert_eq!(ext.extended, CfpInstance::from_rows(&[[1, 0], [0, 1]]).unwrap());
        assert_eq!(ext.delta_n1, 1);
        let lifted = lift_solution(&CfpSolution::single_cell(1, 1), &ext).unwrap();
        assert_eq!(lifted, CfpSolution::new(vec![0, 1], vec![0, 1]));
        let r = evaluate(&ext.extended, &lifted).unwrap();
        assert_eq!((r.e, r.v, r.f2), (0, 0, Some(Rational::ONE)));
        assert_eq!(project_solution(&lifted, &ext).unwrap(), CfpSolution::single_cell(1, 1));
    }

    #[test]
    fn two_by_two_all_ones() {
        let inst = CfpInstance::from_rows(&[[1, 1], [1, 1]]).unwrap();
        let ext = extend_instance(&inst).unwrap();
        assert_eq!((ext.extended.machines(), ext.extended.parts()), (6, 6));
        assert_eq!((ext.delta_n1, ext.n1()), (16, 20));
    }

    #[test]
    fn rejects_trivial_and_weighted() {
        let zero = CfpInstance::from_rows(&[[0, 0]]).unwrap();
        assert!(matches!(extend_instance(&zero), Err(CfpError::Trivial(_))));
        let w = CfpInstance::with_weights(BoolMatrix::ones(1, 1).unwrap(), vec![2], vec![1]).unwrap();
        assert!(matches!(extend_instance(&w), Err(CfpError::Weighted(_))));
    }

    #[test]
    fn thresholds() {
        let ext = extend_instance(&fixtures::table1()).unwrap();
        assert_eq!(threshold_transform(0, &ext).unwrap(), Rational::ONE);
        assert_eq!(threshold_transform(12, &ext).unwrap(), Rational::new(617, 623).unwrap());
        assert_eq!(
            threshold_transform(34, &ext).unwrap(),
            Rational::new(1246 - 35 + 1, 1246).unwrap()
        );
        assert!(threshold_transform(35, &ext).is_err());
    }

    #[test]
    fn lift_table_two() {
        let ext = extend_instance(&fixtures::table1()).unwrap();
        let lifted = lift_solution(&fixtures::table2(), &ext).unwrap();
        assert_eq!(lifted.num_cells(), 4);
        let r = evaluate(&ext.extended, &lifted).unwrap();
        assert_eq!((r.e, r.v), (10, 2));
        assert_eq!(r.f2, Some(Rational::new(103, 104).unwrap()));
        assert_eq!(project_solution(&lifted, &ext).unwrap(), fixtures::table2());
    }

    #[test]
    fn merged_form_matches_merging_the_dense_matrix() {
        for rows in [
            vec![vec![1u8, 0, 1, 0, 0, 1, 1]],
            vec![vec![1, 1], vec![1, 1]],
            vec![vec![0, 1, 0], vec![0, 1, 0], vec![0, 0, 0]],
        ] {
            let ext = extend_instance(&CfpInstance::from_rows(&rows).unwrap()).unwrap();
            assert_eq!(ext.merged(), merge(&ext.extended));
        }
        let ext = extend_instance(&fixtures::table1()).unwrap();
        let (merged, map) = ext.merged();
        assert_eq!((merged.machines(), merged.parts()), (6, 8));
        assert_eq!(merged.row_weights()[5], 35);
        assert_eq!(merged.col_weights()[7], 35);
        assert_eq!(map.row_groups[5].len(), 35);
    }

    #[test]
    fn merged_extended_optimum_projects_to_base_optimum() {
        let ext = extend_instance(&fixtures::table1()).unwrap();
        let (merged, map) = ext.merged();
        let opts = SolveOptions::default();
        let r = exact_solve_f2(&merged, &opts).unwrap();
        let full = crate::preprocess::unmerge_solution(&r.best, &map).unwrap();
        // block rows share a cell in the unmerged solution
        let block = &full.machine_cells()[ext.block_rows.clone()];
        assert!(block.iter().all(|&c| c == block[0]));
        let projected = project_solution(&full, &ext).unwrap();
        let base = evaluate(&fixtures::table1(), &projected).unwrap();
        assert_eq!(base.f1, fixtures::TABLE1_F1_OPT);
        let again = evaluate(&ext.extended, &full).unwrap();
        assert_eq!(again.efficacy().unwrap(), r.report.efficacy().unwrap());
    }

    #[test]
    fn decision_via_reduction() {
        let solver = |i: &CfpInstance| exact_solve_f2(i, &SolveOptions::default());
        let inst = fixtures::table1();
        let Decision::Yes(w) = decide_cfp1_via_cfp2(&inst, 12, solver).unwrap() else {
            panic!("expected yes")
        };
        assert!(evaluate(&inst, &w).unwrap().f1 <= 12);
        assert_eq!(decide_cfp1_via_cfp2(&inst, 0, solver).unwrap(), Decision::No);
        assert_eq!(decide_cfp1_via_cfp2(&inst, 7, solver).unwrap(), Decision::No);
        assert!(decide_cfp1_via_cfp2(&inst, 8, solver).unwrap().is_yes());
        assert!(decide_cfp1_via_cfp2(&inst, 35, |_| unreachable!()).unwrap().is_yes());
        let zero = CfpInstance::from_rows(&[[0, 0], [0, 0]]).unwrap();
        let Decision::Yes(w) = decide_cfp1_via_cfp2(&zero, 0, |_| unreachable!()).unwrap() else {
            panic!("expected yes")
        };
        assert_eq!(evaluate(&zero, &w).unwrap().f1, 0);
    }

    #[test]
    fn efficacy_decision_on_the_extension() {
        let solver = |i: &CfpInstance| exact_solve_f2(i, &SolveOptions::default());
        let inst = fixtures::table1();
        let t = Rational::new(617, 623).unwrap();
        let Decision::Yes(w) = decide_extended_efficacy(&inst, t, solver).unwrap() else {
            panic!("expected yes")
        };
        assert!(evaluate(&inst, &w).unwrap().f1 <= 12);
        let ext = extend_instance(&inst).unwrap();
        let t7 = threshold_transform(7, &ext).unwrap();
        assert_eq!(decide_extended_efficacy(&inst, t7, solver).unwrap(), Decision::No);
        let zero = CfpInstance::from_rows(&[[0, 0]]).unwrap();
        assert!(decide_extended_efficacy(&zero, Rational::ONE, |_| unreachable!())
            .unwrap()
            .is_yes());
        assert!(decide_extended_efficacy(&inst, Rational::new(2, 1).unwrap(), solver).is_err());
    }

    #[test]
    fn tied_f1_optima_lift_to_different_efficacies() {
        // (e, v) = (0, 1) and (1, 0) both minimize e + v, but only the one
        // with more voids maximizes efficacy on the extended matrix.
        let inst = CfpInstance::from_rows(&[[1, 1], [1, 0]]).unwrap();
        let ext = extend_instance(&inst).unwrap();
        let one_cell = CfpSolution::single_cell(2, 2);
        let split = CfpSolution::new(vec![0, 1], vec![0, 0]);
        let a = evaluate(&inst, &one_cell).unwrap();
        let b = evaluate(&inst, &split).unwrap();
        assert_eq!((a.f1, b.f1), (1, 1));
        let fa = evaluate(&ext.extended, &lift_solution(&one_cell, &ext).unwrap()).unwrap();
        let fb = evaluate(&ext.extended, &lift_solution(&split, &ext).unwrap()).unwrap();
        assert_eq!(fa.f2, Some(Rational::new(19, 20).unwrap()));
        assert_eq!(fb.f2, Some(Rational::new(18, 19).unwrap()));
        let best = exact_solve_f2(&ext.extended, &SolveOptions::default()).unwrap();
        assert_eq!(best.report.f2, fa.f2);
    }
}
