//! Dense row-major matrices over `f64`.

use crate::error::{Error, Result};

/// Dense real matrix with explicit dimensions, stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<f64>,
}

impl DenseMatrix {
    /// Builds a matrix from row-major entries. Rejects empty dimensions,
    /// length mismatches, size overflow, and non-finite entries.
    pub fn new(rows: usize, cols: usize, entries: Vec<f64>) -> Result<Self> {
        let len = checked_len(rows, cols)?;
        if entries.len() != len {
            return Err(Error::Argument(format!(
                "entry count {} does not match {rows}x{cols}",
                entries.len()
            )));
        }
        if entries.iter().any(|v| !v.is_finite()) {
            return Err(Error::Argument("matrix entries must be finite".into()));
        }
        Ok(DenseMatrix { rows, cols, entries })
    }

    /// All-zero matrix.
    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        let len = checked_len(rows, cols)?;
        Ok(DenseMatrix { rows, cols, entries: vec![0.0; len] })
    }

    /// Identity matrix of order `n`.
    pub fn identity(n: usize) -> Result<Self> {
        let mut m = Self::zeros(n, n)?;
        for i in 0..n {
            m.set(i, i, 1.0);
        }
        Ok(m)
    }

    /// Builds a matrix by evaluating `f(row, col)`.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        let mut m = Self::zeros(rows, cols)?;
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Row-major entry slice.
    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> f64 {
        debug_assert!(r < self.rows && c < self.cols);
        self.entries[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: f64) {
        debug_assert!(r < self.rows && c < self.cols);
        self.entries[r * self.cols + c] = v;
    }

    /// Borrow of row `r`.
    #[inline]
    pub fn row(&self, r: usize) -> &[f64] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    /// Column `c` gathered into a vector.
    pub fn col(&self, c: usize) -> Vec<f64> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn transpose(&self) -> DenseMatrix {
        let mut t = DenseMatrix { rows: self.cols, cols: self.rows, entries: vec![0.0; self.entries.len()] };
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    /// Matrix-vector product `A x`.
    pub fn matvec(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.cols {
            return Err(Error::Argument(format!(
                "matvec length {} does not match {} columns",
                x.len(),
                self.cols
            )));
        }
        let mut y = vec![0.0; self.rows];
        for r in 0..self.rows {
            let row = self.row(r);
            let mut acc = 0.0;
            for (a, b) in row.iter().zip(x) {
                acc += a * b;
            }
            y[r] = acc;
        }
        Ok(y)
    }

    /// Matrix product `A B`.
    pub fn matmul(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        if self.cols != other.rows {
            return Err(Error::Argument(format!(
                "matmul inner dimensions {} and {} differ",
                self.cols, other.rows
            )));
        }
        let mut out = DenseMatrix::zeros(self.rows, other.cols)?;
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0.0 {
                    continue;
                }
                let orow = other.row(k);
                let base = i * out.cols;
                for j in 0..other.cols {
                    out.entries[base + j] += a * orow[j];
                }
            }
        }
        Ok(out)
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Submatrix formed by the given column indices, in order.
    pub fn select_columns(&self, cols: &[usize]) -> Result<DenseMatrix> {
        if cols.iter().any(|&c| c >= self.cols) {
            return Err(Error::Argument("column index out of range".into()));
        }
        DenseMatrix::from_fn(self.rows, cols.len(), |r, j| self.get(r, cols[j]))
    }
}

fn checked_len(rows: usize, cols: usize) -> Result<usize> {
    if rows == 0 || cols == 0 {
        return Err(Error::Argument("matrix dimensions must be positive".into()));
    }
    rows.checked_mul(cols)
        .filter(|&len| len <= isize::MAX as usize / std::mem::size_of::<f64>())
        .ok_or_else(|| Error::Sizing(format!("{rows}x{cols} overflows")))
}

/// Infinity norm of a vector.
pub fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

/// Euclidean norm.
pub fn norm2(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// l1 norm of `v` restricted to `idx`.
pub fn l1_on(v: &[f64], idx: &[usize]) -> f64 {
    idx.iter().map(|&i| v[i].abs()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::Rng;

    /// Naive triple-loop product, kept independent of `matmul`/`matvec`.
    fn oracle_matvec(a: &DenseMatrix, x: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; a.rows()];
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                y[i] += a.get(i, j) * x[j];
            }
        }
        y
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(DenseMatrix::new(0, 3, vec![]).is_err());
        assert!(DenseMatrix::new(2, 2, vec![1.0; 3]).is_err());
        assert!(DenseMatrix::new(1, 2, vec![1.0, f64::NAN]).is_err());
        assert!(DenseMatrix::zeros(usize::MAX, 2).is_err());
    }

    #[test]
    fn matvec_matches_triple_loop_oracle() {
        let mut rng = Rng::new(41);
        for case in 0..100 {
            let m = 1 + rng.next_index(6);
            let n = 1 + rng.next_index(6);
            let a = DenseMatrix::from_fn(m, n, |_, _| rng.next_gaussian()).unwrap();
            let x: Vec<f64> = (0..n).map(|_| rng.next_gaussian()).collect();
            let got = a.matvec(&x).unwrap();
            let want = oracle_matvec(&a, &x);
            for (g, w) in got.iter().zip(&want) {
                let scale = w.abs().max(1.0);
                assert!((g - w).abs() <= 1e-13 * scale, "case {case}: {g} vs {w}");
            }
        }
    }

    #[test]
    fn matmul_identity_and_transpose() {
        let a = DenseMatrix::new(2, 3, vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0]).unwrap();
        let i3 = DenseMatrix::identity(3).unwrap();
        assert_eq!(a.matmul(&i3).unwrap(), a);
        let t = a.transpose();
        assert_eq!(t.get(2, 1), 6.0);
        assert_eq!(t.transpose(), a);
    }

    #[test]
    fn select_columns_picks_in_order() {
        let a = DenseMatrix::new(2, 3, vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0]).unwrap();
        let b = a.select_columns(&[2, 0]).unwrap();
        assert_eq!(b.entries(), &[3.0, 1.0, 6.0, 4.0]);
    }
}
