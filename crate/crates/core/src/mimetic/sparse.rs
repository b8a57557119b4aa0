use std::io::{self, Write};

use crate::error::{Error, Result};

/// Compressed row storage: each row owns a contiguous run of
/// `(column, value)` pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseMatrix {
    nrows: usize,
    ncols: usize,
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    vals: Vec<f64>,
}

impl SparseMatrix {
    /// Assembles a matrix from per-row entry lists. Column indices must be
    /// below `ncols`.
    pub fn from_rows<I, R>(ncols: usize, rows: I) -> SparseMatrix
    where
        I: IntoIterator<Item = R>,
        R: IntoIterator<Item = (usize, f64)>,
    {
        let mut row_ptr = vec![0];
        let mut cols = Vec::new();
        let mut vals = Vec::new();
        for row in rows {
            for (c, v) in row {
                assert!(c < ncols, "column {c} out of range for {ncols} columns");
                cols.push(c);
                vals.push(v);
            }
            row_ptr.push(cols.len());
        }
        SparseMatrix {
            nrows: row_ptr.len() - 1,
            ncols,
            row_ptr,
            cols,
            vals,
        }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let span = self.row_ptr[i]..self.row_ptr[i + 1];
        self.cols[span.clone()]
            .iter()
            .copied()
            .zip(self.vals[span].iter().copied())
    }

    /// Value at `(i, j)`, zero when not stored.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.row(i).filter(|&(c, _)| c == j).map(|(_, v)| v).sum()
    }

    pub fn apply(&self, x: &[f64]) -> Result<Vec<f64>> {
        let mut y = vec![0.0; self.nrows];
        self.apply_into(x, &mut y)?;
        Ok(y)
    }

    pub fn apply_into(&self, x: &[f64], y: &mut [f64]) -> Result<()> {
        if x.len() != self.ncols {
            return Err(Error::DimensionMismatch {
                expected: self.ncols,
                actual: x.len(),
            });
        }
        if y.len() != self.nrows {
            return Err(Error::DimensionMismatch {
                expected: self.nrows,
                actual: y.len(),
            });
        }
        for (i, out) in y.iter_mut().enumerate() {
            let (lo, hi) = (self.row_ptr[i], self.row_ptr[i + 1]);
            *out = self.cols[lo..hi]
                .iter()
                .zip(&self.vals[lo..hi])
                .map(|(&c, &v)| v * x[c])
                .sum();
        }
        Ok(())
    }

    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        (0..self.nrows)
            .map(|i| {
                let mut r = vec![0.0; self.ncols];
                for (c, v) in self.row(i) {
                    r[c] += v;
                }
                r
            })
            .collect()
    }

    /// Writes one `row col value` line per stored entry, values with 17
    /// significant digits.
    pub fn write_coo<W: Write>(&self, mut w: W) -> io::Result<()> {
        for i in 0..self.nrows {
            for (c, v) in self.row(i) {
                writeln!(w, "{i} {c} {v:.16e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn apply_and_shape_checks() {
        let a = SparseMatrix::from_rows(3, vec![vec![(0, 1.0), (2, 2.0)], vec![], vec![(1, -1.0)]]);
        assert_eq!(a.nrows(), 3);
        assert_eq!(a.nnz(), 3);
        assert_eq!(a.apply(&[1.0, 2.0, 3.0]).unwrap(), vec![7.0, 0.0, -2.0]);
        assert!(matches!(
            a.apply(&[1.0, 2.0]),
            Err(Error::DimensionMismatch {
                expected: 3,
                actual: 2
            })
        ));
        assert_eq!(a.get(0, 2), 2.0);
        assert_eq!(a.get(1, 1), 0.0);
    }

    #[test]
    fn coo_dump_round_trips_values() {
        let a = SparseMatrix::from_rows(2, vec![vec![(1, 1.0 / 3.0)]]);
        let mut buf = Vec::new();
        a.write_coo(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "0 1 3.3333333333333331e-1\n");
        let v: f64 = text.split_whitespace().nth(2).unwrap().parse().unwrap();
        assert_eq!(v, 1.0 / 3.0);
    }
}
