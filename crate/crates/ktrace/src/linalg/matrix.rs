//! Dense row-major complex matrix.
//!
//! This is deliberately a small, fixed-feature type: the crate works with
//! dense Hermitian matrices up to n = 64 and everything downstream (powers,
//! compounds, discriminants) is O(n³) or worse anyway, so there is nothing to
//! gain from sparsity or generic scalars here.

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::fmt;
use std::ops::{Index, IndexMut};

#[derive(Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    /// Row-major storage, `data[i * cols + j]`.
    data: Vec<Complex64>,
}

impl Matrix {
    /// Build from row-major data, validating shape and finiteness. This is
    /// the admission gate: no NaN or infinity ever enters a stored matrix.
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "expected {rows}x{cols} = {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        for (idx, z) in data.iter().enumerate() {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(Error::InvalidArgument(format!(
                    "non-finite entry {z} at ({}, {})",
                    idx / cols.max(1),
                    idx % cols.max(1)
                )));
            }
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Square matrix with the given real numbers on the diagonal.
    pub fn from_real_diag(diag: &[f64]) -> Self {
        let n = diag.len();
        let mut m = Matrix::zeros(n, n);
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = Complex64::new(d, 0.0);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Side length of a square matrix; panics on rectangular input (callers
    /// check shape at their API boundary).
    pub fn n(&self) -> usize {
        assert!(self.is_square(), "n() on a {}x{} matrix", self.rows, self.cols);
        self.rows
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "add shape");
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a + b)
            .collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "sub shape");
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a - b)
            .collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scale(&self, t: Complex64) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * t).collect(),
        }
    }

    pub fn scale_re(&self, t: f64) -> Matrix {
        self.scale(Complex64::new(t, 0.0))
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(
            self.cols, rhs.rows,
            "mul shape: {}x{} * {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self[(i, l)];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * rhs[(l, j)];
                }
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        assert!(self.is_square(), "trace of a rectangular matrix");
        let mut t = Complex64::new(0.0, 0.0);
        for i in 0..self.rows {
            t += self[(i, i)];
        }
        t
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entry magnitude (entrywise max norm).
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, z| m.max(z.norm()))
    }

    /// Submatrix with the given (strictly increasing) row and column indices.
    pub fn submatrix(&self, row_idx: &[usize], col_idx: &[usize]) -> Matrix {
        Matrix::from_fn(row_idx.len(), col_idx.len(), |i, j| {
            self[(row_idx[i], col_idx[j])]
        })
    }

    /// Determinant via LU with partial pivoting. A zero pivot column makes the
    /// determinant exactly zero; no error path.
    pub fn determinant(&self) -> Complex64 {
        assert!(self.is_square(), "determinant of a rectangular matrix");
        let n = self.rows;
        match n {
            0 => return Complex64::new(1.0, 0.0),
            1 => return self[(0, 0)],
            2 => return self[(0, 0)] * self[(1, 1)] - self[(0, 1)] * self[(1, 0)],
            _ => {}
        }
        let mut lu = self.data.clone();
        let mut det = Complex64::new(1.0, 0.0);
        for col in 0..n {
            // Partial pivot: largest magnitude below the diagonal, lowest
            // index on ties, for a deterministic elimination order.
            let mut piv = col;
            let mut best = lu[col * n + col].norm();
            for r in col + 1..n {
                let v = lu[r * n + col].norm();
                if v > best {
                    best = v;
                    piv = r;
                }
            }
            if best == 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            if piv != col {
                for j in 0..n {
                    lu.swap(col * n + j, piv * n + j);
                }
                det = -det;
            }
            let pivot = lu[col * n + col];
            det *= pivot;
            for r in col + 1..n {
                let factor = lu[r * n + col] / pivot;
                if factor.re == 0.0 && factor.im == 0.0 {
                    continue;
                }
                for j in col + 1..n {
                    let sub = factor * lu[col * n + j];
                    lu[r * n + j] -= sub;
                }
            }
        }
        det
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Complex64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, "{:+.4e}{:+.4e}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn rejects_non_finite_entries() {
        let err = Matrix::new(1, 2, vec![c(1.0, 0.0), c(f64::NAN, 0.0)]).unwrap_err();
        assert!(matches!(err, Error::InvalidArgument(_)));
    }

    #[test]
    fn rejects_wrong_length() {
        assert!(matches!(
            Matrix::new(2, 2, vec![c(1.0, 0.0)]),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn adjoint_conjugates_and_transposes() {
        let m = Matrix::new(1, 2, vec![c(1.0, 2.0), c(3.0, -4.0)]).unwrap();
        let a = m.adjoint();
        assert_eq!(a.rows(), 2);
        assert_eq!(a[(0, 0)], c(1.0, -2.0));
        assert_eq!(a[(1, 0)], c(3.0, 4.0));
    }

    #[test]
    fn determinant_of_known_3x3() {
        // det = 1*(1*4 - 2*3) - 2*(0*4 - 2*1) + 3*(0*3 - 1*1) = -2 + 4 - 3 = -1
        let m = Matrix::new(
            3,
            3,
            [1.0, 2.0, 3.0, 0.0, 1.0, 2.0, 1.0, 3.0, 4.0]
                .iter()
                .map(|&x| c(x, 0.0))
                .collect(),
        )
        .unwrap();
        let d = m.determinant();
        assert!((d.re - (-1.0)).abs() < 1e-14 && d.im.abs() < 1e-14);
    }

    #[test]
    fn determinant_detects_singularity_exactly() {
        let m = Matrix::new(
            2,
            2,
            vec![c(1.0, 0.0), c(2.0, 0.0), c(2.0, 0.0), c(4.0, 0.0)],
        )
        .unwrap();
        assert_eq!(m.determinant(), c(0.0, 0.0));
    }

    #[test]
    fn mul_against_hand_product() {
        let a = Matrix::new(2, 2, vec![c(1.0, 1.0), c(0.0, 0.0), c(2.0, 0.0), c(0.0, -1.0)]).unwrap();
        let b = Matrix::new(2, 2, vec![c(1.0, 0.0), c(1.0, 0.0), c(0.0, 2.0), c(3.0, 0.0)]).unwrap();
        let p = a.mul(&b);
        // [[1+i, 0], [2, -i]] * [[1, 1], [2i, 3]]
        assert_eq!(p[(0, 0)], c(1.0, 1.0));
        assert_eq!(p[(0, 1)], c(1.0, 1.0));
        assert_eq!(p[(1, 0)], c(4.0, 0.0)); // 2*1 + (-i)(2i)
        assert_eq!(p[(1, 1)], c(2.0, -3.0)); // 2*1 + (-i)*3
    }
}
