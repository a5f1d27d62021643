use crate::error::{CfpError, Result};
use crate::matrix::BoolMatrix;

/// Upper bound on `(sum of row weights) * (sum of column weights)`.
///
/// Every count derived from an instance (`n1`, `e`, `v`, the efficacy
/// numerator and denominator) is at most this, so rational comparisons stay
/// within `i128` with a wide margin. Base instances with `m * p <= 10^4` and
/// their extended matrices are well inside it.
pub const MAX_WEIGHTED_CELLS: u64 = 1 << 40;

/// Number of cell labels available for an `m x p` matrix.
///
/// At most `min(m, p)` cells can hold both machines and parts. All
/// machine-only cells can share one label and all part-only cells can share
/// one label without changing any objective. When all `min(m, p)` two-sided
/// cells are in use one of the two sides is exhausted, so one extra label
/// always suffices.
pub fn default_capacity(m: usize, p: usize) -> usize {
    m.min(p) + 1
}

/// A weighted machine-part instance.
///
/// Weights are multiplicities of identical rows/columns folded together by
/// [`crate::preprocess::merge`]; a plain instance has every weight equal to 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CfpInstance {
    matrix: BoolMatrix,
    row_weights: Vec<u64>,
    col_weights: Vec<u64>,
    n1: u64,
    capacity: usize,
}

impl CfpInstance {
    pub fn new(matrix: BoolMatrix) -> Self {
        let (m, p) = (matrix.rows(), matrix.cols());
        Self::with_weights(matrix, vec![1; m], vec![1; p]).expect("unit weights are always valid")
    }

    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self> {
        Ok(Self::new(BoolMatrix::from_rows(rows)?))
    }

    pub fn with_weights(matrix: BoolMatrix, row_weights: Vec<u64>, col_weights: Vec<u64>) -> Result<Self> {
        if row_weights.len() != matrix.rows() || col_weights.len() != matrix.cols() {
            return Err(CfpError::DimensionMismatch(format!(
                "weights {}+{} for a {}x{} matrix",
                row_weights.len(),
                col_weights.len(),
                matrix.rows(),
                matrix.cols()
            )));
        }
        if row_weights.iter().chain(&col_weights).any(|&w| w == 0) {
            return Err(CfpError::InvalidInstance("weights must be positive".into()));
        }
        let total = |w: &[u64]| w.iter().try_fold(0u64, |acc, &x| acc.checked_add(x));
        let cells = total(&row_weights)
            .zip(total(&col_weights))
            .and_then(|(a, b)| a.checked_mul(b))
            .filter(|&c| c <= MAX_WEIGHTED_CELLS)
            .ok_or_else(|| {
                CfpError::InvalidInstance(format!(
                    "weighted size exceeds the supported bound of {MAX_WEIGHTED_CELLS} cells"
                ))
            })?;
        debug_assert!(cells >= 1);
        let mut n1 = 0;
        for (i, &w) in row_weights.iter().enumerate() {
            for (j, &u) in col_weights.iter().enumerate() {
                if matrix.get(i, j) {
                    n1 += w * u;
                }
            }
        }
        let capacity = default_capacity(matrix.rows(), matrix.cols());
        Ok(CfpInstance {
            matrix,
            row_weights,
            col_weights,
            n1,
            capacity,
        })
    }

    /// Overrides the number of available cell labels. Merged instances carry
    /// the capacity of the instance they were merged from.
    pub fn with_capacity(mut self, capacity: usize) -> Result<Self> {
        if capacity == 0 {
            return Err(CfpError::InvalidInstance("capacity must be at least 1".into()));
        }
        self.capacity = capacity;
        Ok(self)
    }

    #[inline]
    pub fn matrix(&self) -> &BoolMatrix {
        &self.matrix
    }

    #[inline]
    pub fn machines(&self) -> usize {
        self.matrix.rows()
    }

    #[inline]
    pub fn parts(&self) -> usize {
        self.matrix.cols()
    }

    #[inline]
    pub fn a(&self, i: usize, j: usize) -> bool {
        self.matrix.get(i, j)
    }

    pub fn row_weights(&self) -> &[u64] {
        &self.row_weights
    }

    pub fn col_weights(&self) -> &[u64] {
        &self.col_weights
    }

    /// Weighted number of ones.
    pub fn n1(&self) -> u64 {
        self.n1
    }

    /// Number of cell labels; valid indices are `0..capacity()`.
    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn is_unweighted(&self) -> bool {
        self.row_weights.iter().chain(&self.col_weights).all(|&w| w == 1)
    }

    pub fn has_default_capacity(&self) -> bool {
        self.capacity == default_capacity(self.machines(), self.parts())
    }

    /// `(sum of row weights) * (sum of column weights)`, the weighted cell count.
    pub fn weighted_size(&self) -> u64 {
        self.row_weights.iter().sum::<u64>() * self.col_weights.iter().sum::<u64>()
    }

    /// Swaps the roles of machines and parts.
    pub fn transpose(&self) -> CfpInstance {
        CfpInstance {
            matrix: self.matrix.transpose(),
            row_weights: self.col_weights.clone(),
            col_weights: self.row_weights.clone(),
            n1: self.n1,
            capacity: self.capacity,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n1_is_weighted() {
        let m = BoolMatrix::from_rows(&[[1, 0], [1, 1]]).unwrap();
        let inst = CfpInstance::with_weights(m, vec![2, 3], vec![5, 7]).unwrap();
        assert_eq!(inst.n1(), 2 * 5 + 3 * 5 + 3 * 7);
        assert!(!inst.is_unweighted());
        assert_eq!(inst.capacity(), 3);
    }

    #[test]
    fn rejects_bad_weights() {
        let m = BoolMatrix::ones(1, 1).unwrap();
        assert!(CfpInstance::with_weights(m.clone(), vec![0], vec![1]).is_err());
        assert!(CfpInstance::with_weights(m.clone(), vec![1, 1], vec![1]).is_err());
        assert!(CfpInstance::with_weights(m, vec![1 << 21], vec![1 << 21]).is_err());
    }
}
