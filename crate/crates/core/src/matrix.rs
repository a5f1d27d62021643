use std::fmt;

use crate::error::{CfpError, Result};

/// Dense machine-part incidence matrix. Row `i` is machine `i`, column `j`
/// is part `j`, and `get(i, j)` is true when the machine processes the part.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BoolMatrix {
    rows: usize,
    cols: usize,
    bits: Vec<bool>,
}

impl BoolMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(CfpError::InvalidInstance(format!(
                "matrix must be at least 1x1, got {rows}x{cols}"
            )));
        }
        Ok(BoolMatrix {
            rows,
            cols,
            bits: vec![false; rows * cols],
        })
    }

    pub fn ones(rows: usize, cols: usize) -> Result<Self> {
        let mut m = Self::zeros(rows, cols)?;
        m.bits.fill(true);
        Ok(m)
    }

    /// Builds a matrix from rows of 0/1 values.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut m = Self::zeros(rows.len(), cols)?;
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(CfpError::InvalidInstance(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            for (j, &x) in row.iter().enumerate() {
                match x {
                    0 => {}
                    1 => m.set(i, j, true),
                    _ => {
                        return Err(CfpError::InvalidInstance(format!(
                            "entry ({i}, {j}) is {x}, expected 0 or 1"
                        )))
                    }
                }
            }
        }
        Ok(m)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Result<Self> {
        let mut m = Self::zeros(rows, cols)?;
        for i in 0..rows {
            for j in 0..cols {
                m.bits[i * cols + j] = f(i, j);
            }
        }
        Ok(m)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        self.bits[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[bool] {
        &self.bits[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<bool> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn transpose(&self) -> BoolMatrix {
        let mut t = BoolMatrix {
            rows: self.cols,
            cols: self.rows,
            bits: vec![false; self.bits.len()],
        };
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    /// Rows in the given order.
    pub fn permute_rows(&self, order: &[usize]) -> BoolMatrix {
        let mut bits = Vec::with_capacity(self.bits.len());
        for &i in order {
            bits.extend_from_slice(self.row(i));
        }
        BoolMatrix {
            rows: order.len(),
            cols: self.cols,
            bits,
        }
    }
}

impl fmt::Debug for BoolMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BoolMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let line: String = self.row(i).iter().map(|&b| if b { '1' } else { '0' }).collect();
            writeln!(f, "  {line}")?;
        }
        Ok(())
    }
}
