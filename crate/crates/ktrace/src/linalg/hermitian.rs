//! Hermitian matrices with an exact symmetry invariant.
//!
//! The constructor replaces the input by (M + M*)/2 and zeroes imaginary
//! parts on the diagonal, so `h[(i, j)] == h[(j, i)].conj()` holds *bitwise*,
//! not just approximately. Closed operations (real linear combinations,
//! congruences, diagonal extraction, zero-padding) preserve the invariant
//! exactly, which is what lets downstream equality checks (padding
//! consistency, report determinism) work at the bit level.

use super::matrix::Matrix;
use crate::error::{Error, Result};
use num_complex::Complex64;

#[derive(Clone, Debug, PartialEq)]
pub struct HermitianMatrix {
    mat: Matrix,
}

impl HermitianMatrix {
    /// Symmetrize an arbitrary square matrix: H = (M + M*)/2, diagonal
    /// imaginary parts forced to exactly zero.
    ///
    /// IEEE addition is commutative and negation exact, so the two mirror
    /// entries produced here are exact conjugates of one another.
    pub fn new(m: &Matrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::Dimension(format!(
                "hermitian matrix must be square, got {}x{}",
                m.rows(),
                m.cols()
            )));
        }
        let n = m.rows();
        let mut h = Matrix::zeros(n, n);
        for i in 0..n {
            h[(i, i)] = Complex64::new(m[(i, i)].re, 0.0);
            for j in i + 1..n {
                let upper = 0.5 * (m[(i, j)] + m[(j, i)].conj());
                h[(i, j)] = upper;
                h[(j, i)] = upper.conj();
            }
        }
        Ok(HermitianMatrix { mat: h })
    }

    /// Diagonal matrix from real values; trivially Hermitian.
    pub fn from_real_diag(diag: &[f64]) -> Self {
        HermitianMatrix {
            mat: Matrix::from_real_diag(diag),
        }
    }

    pub fn zeros(n: usize) -> Self {
        HermitianMatrix {
            mat: Matrix::zeros(n, n),
        }
    }

    pub fn identity(n: usize) -> Self {
        HermitianMatrix {
            mat: Matrix::identity(n),
        }
    }

    /// Internal constructor for matrices already exactly Hermitian by
    /// construction (we never expose it: callers go through `new`).
    pub(crate) fn from_exact(mat: Matrix) -> Self {
        debug_assert!(mat.is_square());
        debug_assert!({
            let n = mat.rows();
            (0..n).all(|i| {
                mat[(i, i)].im == 0.0
                    && (i..n).all(|j| mat[(i, j)] == mat[(j, i)].conj())
            })
        });
        HermitianMatrix { mat }
    }

    pub fn n(&self) -> usize {
        self.mat.rows()
    }

    pub fn as_matrix(&self) -> &Matrix {
        &self.mat
    }

    pub fn into_matrix(self) -> Matrix {
        self.mat
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.mat[(i, j)]
    }

    /// Real linear combination a·self + b·rhs. Componentwise real scaling and
    /// addition preserve exact conjugate symmetry.
    pub fn linear_combination(&self, a: f64, rhs: &HermitianMatrix, b: f64) -> HermitianMatrix {
        assert_eq!(self.n(), rhs.n(), "linear_combination shape");
        let m = self.mat.scale_re(a).add(&rhs.mat.scale_re(b));
        HermitianMatrix::from_exact(m)
    }

    /// τ·self + (1-τ)·rhs, the midpoint-family combination used by every
    /// concavity check.
    pub fn convex_with(&self, rhs: &HermitianMatrix, tau: f64) -> HermitianMatrix {
        self.linear_combination(tau, rhs, 1.0 - tau)
    }

    pub fn add(&self, rhs: &HermitianMatrix) -> HermitianMatrix {
        self.linear_combination(1.0, rhs, 1.0)
    }

    pub fn scale(&self, t: f64) -> HermitianMatrix {
        HermitianMatrix::from_exact(self.mat.scale_re(t))
    }

    pub fn neg(&self) -> HermitianMatrix {
        self.scale(-1.0)
    }

    /// K* · self · K, re-symmetrized. For Hermitian input the result is
    /// Hermitian up to rounding; symmetrization restores the exact invariant.
    pub fn congruence(&self, k: &Matrix) -> Result<HermitianMatrix> {
        if k.rows() != self.n() {
            return Err(Error::Dimension(format!(
                "congruence: K is {}x{}, matrix is {n}x{n}",
                k.rows(),
                k.cols(),
                n = self.n()
            )));
        }
        let prod = k.adjoint().mul(&self.mat).mul(k);
        HermitianMatrix::new(&prod)
    }

    /// The diagonal part as a (diagonal, real) Hermitian matrix.
    pub fn diag_part(&self) -> HermitianMatrix {
        let d: Vec<f64> = (0..self.n()).map(|i| self.get(i, i).re).collect();
        HermitianMatrix::from_real_diag(&d)
    }

    /// Embed into the top-left block of an m×m zero matrix (m ≥ n).
    pub fn zero_padded(&self, m: usize) -> Result<HermitianMatrix> {
        if m < self.n() {
            return Err(Error::Dimension(format!(
                "cannot pad {}x{} down to {m}x{m}",
                self.n(),
                self.n()
            )));
        }
        let mut out = Matrix::zeros(m, m);
        for i in 0..self.n() {
            for j in 0..self.n() {
                out[(i, j)] = self.get(i, j);
            }
        }
        Ok(HermitianMatrix::from_exact(out))
    }
}
