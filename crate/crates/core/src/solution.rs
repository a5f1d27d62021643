use std::collections::HashMap;
use std::fmt;

use crate::error::{CfpError, Result};
use crate::instance::CfpInstance;

/// Cell label for every machine and every part.
///
/// Cells are not required to be non-empty on both sides: a cell may hold
/// only machines or only parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CfpSolution {
    machine_cell: Vec<usize>,
    part_cell: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Machine,
    Part,
}

impl Side {
    pub fn name(self) -> &'static str {
        match self {
            Side::Machine => "machine",
            Side::Part => "part",
        }
    }
}

/// One broken invariant found by [`validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    DimensionMismatch {
        side: Side,
        expected: usize,
        found: usize,
    },
    IndexOutOfRange {
        side: Side,
        position: usize,
        index: usize,
        capacity: usize,
    },
    NotCanonical {
        side: Side,
        position: usize,
        expected: usize,
        found: usize,
    },
}

impl Violation {
    /// Dimension and range violations make a solution unusable; a
    /// non-canonical labeling is still evaluable.
    pub fn is_structural(&self) -> bool {
        !matches!(self, Violation::NotCanonical { .. })
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DimensionMismatch { side, expected, found } => write!(
                f,
                "dimension mismatch: {found} {} cells given, instance has {expected}",
                side.name()
            ),
            Violation::IndexOutOfRange {
                side,
                position,
                index,
                capacity,
            } => write!(
                f,
                "index out of range: {} {position} has cell {index}, capacity is {capacity}",
                side.name()
            ),
            Violation::NotCanonical {
                side,
                position,
                expected,
                found,
            } => write!(
                f,
                "not canonical: {} {position} has cell {found}, first-occurrence order gives {expected}",
                side.name()
            ),
        }
    }
}

impl CfpSolution {
    pub fn new(machine_cell: Vec<usize>, part_cell: Vec<usize>) -> Self {
        CfpSolution {
            machine_cell,
            part_cell,
        }
    }

    /// Every machine and part in cell 0.
    pub fn single_cell(machines: usize, parts: usize) -> Self {
        Self::new(vec![0; machines], vec![0; parts])
    }

    pub fn machine_cells(&self) -> &[usize] {
        &self.machine_cell
    }

    pub fn part_cells(&self) -> &[usize] {
        &self.part_cell
    }

    pub fn labels(&self) -> impl Iterator<Item = usize> + '_ {
        self.machine_cell.iter().chain(&self.part_cell).copied()
    }

    /// Number of distinct labels in use.
    pub fn num_cells(&self) -> usize {
        let mut seen: Vec<usize> = self.labels().collect();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }

    /// Relabels cells `0, 1, 2, ...` in order of first occurrence over
    /// machines, then parts.
    pub fn canonicalize(&self) -> CfpSolution {
        let mut map = HashMap::new();
        let mut relabel = |c: usize| {
            let next = map.len();
            *map.entry(c).or_insert(next)
        };
        let machine_cell = self.machine_cell.iter().map(|&c| relabel(c)).collect();
        let part_cell = self.part_cell.iter().map(|&c| relabel(c)).collect();
        CfpSolution {
            machine_cell,
            part_cell,
        }
    }

    pub fn is_canonical(&self) -> bool {
        let mut next = 0;
        for c in self.labels() {
            if c == next {
                next += 1;
            } else if c > next {
                return false;
            }
        }
        true
    }

    /// Folds all machine-only cells into one label and all part-only cells
    /// into another, then canonicalizes. Objective values are unchanged
    /// because one-sided cells contain no matrix entries.
    pub fn merge_one_sided(&self) -> CfpSolution {
        let has_machine: std::collections::HashSet<usize> = self.machine_cell.iter().copied().collect();
        let has_part: std::collections::HashSet<usize> = self.part_cell.iter().copied().collect();
        // Use labels guaranteed to be fresh so they cannot collide with two-sided cells.
        let fresh = self.labels().max().map_or(0, |x| x + 1);
        let machine_cell = self
            .machine_cell
            .iter()
            .map(|&c| if has_part.contains(&c) { c } else { fresh })
            .collect();
        let part_cell = self
            .part_cell
            .iter()
            .map(|&c| if has_machine.contains(&c) { c } else { fresh + 1 })
            .collect();
        CfpSolution {
            machine_cell,
            part_cell,
        }
        .canonicalize()
    }

    /// Reorders machines (rows) and parts (columns): entry `k` of the result
    /// is entry `row_order[k]` / `col_order[k]` of `self`.
    pub fn permute(&self, row_order: &[usize], col_order: &[usize]) -> CfpSolution {
        CfpSolution {
            machine_cell: row_order.iter().map(|&i| self.machine_cell[i]).collect(),
            part_cell: col_order.iter().map(|&j| self.part_cell[j]).collect(),
        }
    }

    pub fn transpose(&self) -> CfpSolution {
        CfpSolution {
            machine_cell: self.part_cell.clone(),
            part_cell: self.machine_cell.clone(),
        }
    }
}

/// Lists every violated invariant of `solution` against `instance`.
/// An empty list means the solution is valid and canonical.
pub fn validate(instance: &CfpInstance, solution: &CfpSolution) -> Vec<Violation> {
    let mut out = Vec::new();
    let capacity = instance.capacity();
    for (side, cells, expected) in [
        (Side::Machine, solution.machine_cells(), instance.machines()),
        (Side::Part, solution.part_cells(), instance.parts()),
    ] {
        if cells.len() != expected {
            out.push(Violation::DimensionMismatch {
                side,
                expected,
                found: cells.len(),
            });
        }
        for (position, &index) in cells.iter().enumerate() {
            if index >= capacity {
                out.push(Violation::IndexOutOfRange {
                    side,
                    position,
                    index,
                    capacity,
                });
            }
        }
    }
    let mut next = 0;
    let positions = solution
        .machine_cells()
        .iter()
        .enumerate()
        .map(|(i, &c)| (Side::Machine, i, c))
        .chain(
            solution
                .part_cells()
                .iter()
                .enumerate()
                .map(|(j, &c)| (Side::Part, j, c)),
        );
    for (side, position, found) in positions {
        if found == next {
            next += 1;
        } else if found > next {
            out.push(Violation::NotCanonical {
                side,
                position,
                expected: next,
                found,
            });
            // Report the first offending label only.
            break;
        }
    }
    out
}

/// Dimension and index-range check used by operations that need an
/// evaluable solution but accept any labeling.
pub(crate) fn check_structure(instance: &CfpInstance, solution: &CfpSolution) -> Result<()> {
    for v in validate(instance, solution) {
        match v {
            Violation::DimensionMismatch { side, expected, found } => {
                return Err(CfpError::DimensionMismatch(format!(
                    "{found} {} cells for {expected} {}s",
                    side.name(),
                    side.name()
                )))
            }
            Violation::IndexOutOfRange {
                side,
                position,
                index,
                capacity,
            } => {
                return Err(CfpError::CellOutOfRange {
                    what: side.name(),
                    position,
                    index,
                    capacity,
                })
            }
            Violation::NotCanonical { .. } => {}
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonicalize_relabels_by_first_occurrence() {
        let s = CfpSolution::new(vec![2, 2, 0], vec![0, 2]);
        let c = s.canonicalize();
        assert_eq!(c.machine_cells(), &[0, 0, 1]);
        assert_eq!(c.part_cells(), &[1, 0]);
        assert!(c.is_canonical());
        assert!(!s.is_canonical());
        assert_eq!(c.canonicalize(), c);
    }

    #[test]
    fn merge_one_sided_collapses_residual_cells() {
        // cells 1 and 3 are machine-only, 4 and 5 are part-only
        let s = CfpSolution::new(vec![0, 1, 3, 0], vec![0, 4, 5]);
        let m = s.merge_one_sided();
        assert_eq!(m.machine_cells(), &[0, 1, 1, 0]);
        assert_eq!(m.part_cells(), &[0, 2, 2]);
    }

    #[test]
    fn validate_reports_every_problem() {
        let inst = CfpInstance::from_rows(&[[1, 0], [0, 1]]).unwrap();
        assert!(validate(&inst, &CfpSolution::new(vec![0, 1], vec![0, 1])).is_empty());

        let short = validate(&inst, &CfpSolution::new(vec![0], vec![0, 1]));
        assert!(matches!(
            short[0],
            Violation::DimensionMismatch {
                side: Side::Machine,
                expected: 2,
                found: 1
            }
        ));

        let capacity = inst.capacity();
        let out = validate(&inst, &CfpSolution::new(vec![0, capacity], vec![0, 1]));
        assert!(out
            .iter()
            .any(|v| matches!(v, Violation::IndexOutOfRange { index, .. } if *index == capacity)));

        let out = validate(&inst, &CfpSolution::new(vec![1, 0], vec![0, 1]));
        assert_eq!(out.len(), 1);
        assert!(!out[0].is_structural());
    }
}
