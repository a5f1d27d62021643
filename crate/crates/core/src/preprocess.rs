//! Folding identical rows and columns into weighted representatives.
//!
//! Identical rows can always share a cell in some optimal solution, for the
//! efficacy objective and for `e + v` alike; the same holds for columns by
//! transposition. Merging therefore shrinks the search space without losing
//! optima. The merged instance keeps the cell capacity of the original.

use std::collections::HashMap;

use crate::error::{CfpError, Result};
use crate::instance::CfpInstance;
use crate::matrix::BoolMatrix;
use crate::solution::CfpSolution;

/// Which original rows/columns each merged row/column stands for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MergeMap {
    /// `row_groups[r]` lists the original rows folded into merged row `r`,
    /// ascending. Groups appear in order of their first member.
    pub row_groups: Vec<Vec<usize>>,
    pub col_groups: Vec<Vec<usize>>,
    pub original_rows: usize,
    pub original_cols: usize,
    pub original_capacity: usize,
}

impl MergeMap {
    pub fn is_identity(&self) -> bool {
        self.row_groups.len() == self.original_rows && self.col_groups.len() == self.original_cols
    }
}

fn group_identical<K: std::hash::Hash + Eq>(keys: impl Iterator<Item = K>) -> Vec<Vec<usize>> {
    let mut index: HashMap<K, usize> = HashMap::new();
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for (i, key) in keys.enumerate() {
        let g = *index.entry(key).or_insert_with(|| {
            groups.push(Vec::new());
            groups.len() - 1
        });
        groups[g].push(i);
    }
    groups
}

pub fn merge(instance: &CfpInstance) -> (CfpInstance, MergeMap) {
    let a = instance.matrix();
    let row_groups = group_identical((0..a.rows()).map(|i| a.row(i).to_vec()));
    let col_groups = group_identical((0..a.cols()).map(|j| a.column(j)));

    let matrix = BoolMatrix::from_fn(row_groups.len(), col_groups.len(), |r, c| {
        a.get(row_groups[r][0], col_groups[c][0])
    })
    .expect("at least one group on each side");
    let sum = |groups: &[Vec<usize>], w: &[u64]| -> Vec<u64> {
        groups.iter().map(|g| g.iter().map(|&k| w[k]).sum()).collect()
    };
    let merged = CfpInstance::with_weights(
        matrix,
        sum(&row_groups, instance.row_weights()),
        sum(&col_groups, instance.col_weights()),
    )
    .and_then(|m| m.with_capacity(instance.capacity()))
    .expect("merging preserves totals and capacity");

    let map = MergeMap {
        row_groups,
        col_groups,
        original_rows: instance.machines(),
        original_cols: instance.parts(),
        original_capacity: instance.capacity(),
    };
    (merged, map)
}

/// Gives every original row/column the cell of its representative.
pub fn unmerge_solution(solution: &CfpSolution, map: &MergeMap) -> Result<CfpSolution> {
    let (mc, pc) = (solution.machine_cells(), solution.part_cells());
    if mc.len() != map.row_groups.len() || pc.len() != map.col_groups.len() {
        return Err(CfpError::DimensionMismatch(format!(
            "solution is {}x{}, merged instance is {}x{}",
            mc.len(),
            pc.len(),
            map.row_groups.len(),
            map.col_groups.len()
        )));
    }
    let expand = |groups: &[Vec<usize>], cells: &[usize], n: usize| {
        let mut out = vec![0; n];
        for (g, members) in groups.iter().enumerate() {
            for &k in members {
                out[k] = cells[g];
            }
        }
        out
    };
    Ok(CfpSolution::new(
        expand(&map.row_groups, mc, map.original_rows),
        expand(&map.col_groups, pc, map.original_cols),
    ))
}
