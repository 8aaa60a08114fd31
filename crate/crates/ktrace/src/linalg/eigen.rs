//! Cyclic Jacobi eigensolver for dense complex Hermitian matrices.
//!
//! Each pivot (p, q) is dephased to a real 2×2 problem and annihilated by a
//! complex Givens rotation; sweeps visit pivots in fixed row-major order, so
//! the computation is sequential and bit-reproducible. Convergence is
//! quadratic once the off-diagonal mass is small; 30 sweeps is far more than
//! n = 64 ever needs, and hitting the cap is reported as an error rather than
//! silently returning garbage.

use super::hermitian::HermitianMatrix;
use super::matrix::Matrix;
use super::tolerance;
use crate::error::{Error, Result};
use num_complex::Complex64;

/// Spectral decomposition A = U Λ U* with eigenvalues sorted descending and
/// eigenvectors in the matching column order.
#[derive(Clone, Debug)]
pub struct EigenDecomposition {
    pub eigenvalues: Vec<f64>,
    /// Unitary matrix whose i-th column is the eigenvector of `eigenvalues[i]`.
    pub vectors: Matrix,
}

impl EigenDecomposition {
    /// U f(Λ) U*, re-symmetrized. The workhorse behind every matrix function.
    pub fn assemble(&self, mapped: &[f64]) -> HermitianMatrix {
        let n = self.eigenvalues.len();
        assert_eq!(mapped.len(), n, "assemble: wrong spectrum length");
        let u = &self.vectors;
        // B = U diag(mapped), then B U*.
        let mut b = u.clone();
        for j in 0..n {
            for i in 0..n {
                b[(i, j)] *= mapped[j];
            }
        }
        let full = b.mul(&u.adjoint());
        HermitianMatrix::new(&full).expect("assemble produces a square matrix")
    }

    /// U diag(w) U* for complex w; result is a general matrix.
    pub fn assemble_complex(&self, mapped: &[Complex64]) -> Matrix {
        let n = self.eigenvalues.len();
        assert_eq!(mapped.len(), n, "assemble_complex: wrong spectrum length");
        let u = &self.vectors;
        let mut b = u.clone();
        for j in 0..n {
            for i in 0..n {
                b[(i, j)] *= mapped[j];
            }
        }
        b.mul(&u.adjoint())
    }

    pub fn reconstruct(&self) -> HermitianMatrix {
        self.assemble(&self.eigenvalues)
    }

    pub fn lambda_max(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn lambda_min(&self) -> f64 {
        *self.eigenvalues.last().expect("non-empty spectrum")
    }
}

/// Square root of the off-diagonal mass Σ_{p≠q} |a_pq|².
fn off_norm(m: &[Complex64], n: usize) -> f64 {
    let mut s = 0.0;
    for p in 0..n {
        for q in p + 1..n {
            s += 2.0 * m[p * n + q].norm_sqr();
        }
    }
    s.sqrt()
}

/// One complex Jacobi rotation annihilating the (p, q) entry.
///
/// With a_pq = |a_pq|·w, the unitary acts on columns p, q as
///   u_p = (c·w)e_p − s·e_q,   u_q = (s·w)e_p + c·e_q,
/// where (c, s) is the classical real rotation for the dephased 2×2 block.
fn rotate(m: &mut [Complex64], v: &mut Matrix, n: usize, p: usize, q: usize) {
    let apq = m[p * n + q];
    if apq.re == 0.0 && apq.im == 0.0 {
        return;
    }
    let app = m[p * n + p].re;
    let aqq = m[q * n + q].re;
    let abs = apq.norm();
    let w = apq / abs;

    // Inner rotation angle: smaller root of t² + 2τt − 1 = 0, |t| ≤ 1.
    let tau = (aqq - app) / (2.0 * abs);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let cw = w * c;
    let sw = w * s;

    for i in 0..n {
        if i == p || i == q {
            continue;
        }
        let aip = m[i * n + p];
        let aiq = m[i * n + q];
        let new_ip = cw * aip - s * aiq;
        let new_iq = sw * aip + c * aiq;
        m[i * n + p] = new_ip;
        m[i * n + q] = new_iq;
        // Mirror entries kept as exact conjugates.
        m[p * n + i] = new_ip.conj();
        m[q * n + i] = new_iq.conj();
    }
    m[p * n + p] = Complex64::new(app - t * abs, 0.0);
    m[q * n + q] = Complex64::new(aqq + t * abs, 0.0);
    m[p * n + q] = Complex64::new(0.0, 0.0);
    m[q * n + p] = Complex64::new(0.0, 0.0);

    // Accumulate V ← V·U.
    for i in 0..v.rows() {
        let vip = v[(i, p)];
        let viq = v[(i, q)];
        v[(i, p)] = cw * vip - s * viq;
        v[(i, q)] = sw * vip + c * viq;
    }
}

/// Eigendecomposition of a Hermitian matrix.
///
/// Deterministic: identical input bits give identical output bits on every
/// run and under any thread count (the solver itself is sequential).
pub fn eigh(a: &HermitianMatrix) -> Result<EigenDecomposition> {
    let n = a.n();
    if n == 0 {
        return Err(Error::InvalidArgument("eigh of an empty matrix".into()));
    }
    if n == 1 {
        return Ok(EigenDecomposition {
            eigenvalues: vec![a.get(0, 0).re],
            vectors: Matrix::identity(1),
        });
    }

    let mut m = a.as_matrix().data().to_vec();
    let mut v = Matrix::identity(n);
    let threshold = tolerance::EIGH_OFFDIAG_REL * a.as_matrix().frobenius_norm();

    let mut converged = false;
    let mut last_off = 0.0;
    for _sweep in 0..tolerance::EIGH_MAX_SWEEPS {
        last_off = off_norm(&m, n);
        if last_off <= threshold {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut m, &mut v, n, p, q);
            }
        }
    }
    if !converged {
        last_off = off_norm(&m, n);
        if last_off > threshold {
            return Err(Error::NoConvergence {
                sweeps: tolerance::EIGH_MAX_SWEEPS,
                off_norm: last_off,
                threshold,
            });
        }
    }
    let _ = last_off;

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| m[i * n + i].re).collect();
    // Stable sort, descending; ties keep pivot order — deterministic.
    order.sort_by(|&i, &j| diag[j].partial_cmp(&diag[i]).expect("finite eigenvalues"));

    let eigenvalues: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
    let vectors = Matrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    Ok(EigenDecomposition {
        eigenvalues,
        vectors,
    })
}
