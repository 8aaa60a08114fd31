//! Spectral matrix functions on Hermitian matrices, singular-value
//! functionals, and the Löwner-order comparator.
//!
//! Positivity handling follows one shared rule set:
//! * PSD inputs may carry tiny negative eigenvalues from rounding; anything
//!   in [-PSD_CLIP_REL·λ_max, 0) is clipped to 0, anything more negative is a
//!   domain error.
//! * PD means λ_min > PD_MIN_REL·max(λ_max, 1); operations that genuinely
//!   need invertibility (log, negative and purely imaginary powers, polar Q)
//!   check it and fail loudly instead of amplifying noise.

use super::eigen::{eigh, EigenDecomposition};
use super::hermitian::HermitianMatrix;
use super::matrix::Matrix;
use super::tolerance;
use crate::error::{Error, Result};
use num_complex::Complex64;

/// Clip rounding-level negative eigenvalues of a nominally PSD spectrum.
/// Input order is preserved.
pub fn psd_clipped_spectrum(eigenvalues: &[f64]) -> Result<Vec<f64>> {
    let lambda_max = eigenvalues.iter().fold(f64::NEG_INFINITY, |m, &x| m.max(x));
    let bound = -tolerance::PSD_CLIP_REL * lambda_max;
    let mut out = Vec::with_capacity(eigenvalues.len());
    for &l in eigenvalues {
        if l >= 0.0 {
            out.push(l);
        } else if l >= bound {
            out.push(0.0);
        } else {
            return Err(Error::NotPsd {
                eigenvalue: l,
                bound,
            });
        }
    }
    Ok(out)
}

/// The positive-definite predicate: λ_min > PD_MIN_REL · max(λ_max, 1).
pub fn is_pd_spectrum(eigenvalues: &[f64]) -> bool {
    let lambda_max = eigenvalues.iter().fold(f64::NEG_INFINITY, |m, &x| m.max(x));
    let lambda_min = eigenvalues.iter().fold(f64::INFINITY, |m, &x| m.min(x));
    lambda_min > tolerance::PD_MIN_REL * lambda_max.max(1.0)
}

fn require_pd(eigenvalues: &[f64]) -> Result<()> {
    if is_pd_spectrum(eigenvalues) {
        Ok(())
    } else {
        let lambda_max = eigenvalues.iter().fold(f64::NEG_INFINITY, |m, &x| m.max(x));
        let lambda_min = eigenvalues.iter().fold(f64::INFINITY, |m, &x| m.min(x));
        Err(Error::NotPd {
            lambda_min,
            threshold: tolerance::PD_MIN_REL * lambda_max.max(1.0),
        })
    }
}

/// Apply a real scalar function to the spectrum: U f(Λ) U*.
pub fn matrix_function(a: &HermitianMatrix, f: impl Fn(f64) -> f64) -> Result<HermitianMatrix> {
    let e = eigh(a)?;
    let mapped = map_spectrum(&e.eigenvalues, f)?;
    Ok(e.assemble(&mapped))
}

fn map_spectrum(eigenvalues: &[f64], f: impl Fn(f64) -> f64) -> Result<Vec<f64>> {
    let mut mapped = Vec::with_capacity(eigenvalues.len());
    for &l in eigenvalues {
        let y = f(l);
        if !y.is_finite() {
            return Err(Error::FunctionDomain {
                eigenvalue: l,
                reason: "scalar function produced a non-finite value".into(),
            });
        }
        mapped.push(y);
    }
    Ok(mapped)
}

/// Real power of a PSD matrix.
///
/// Conventions on the clipped spectrum: 0^p = 0 for p > 0 and 0^0 = 1.
/// Negative powers additionally require the PD predicate.
pub fn matrix_power(a: &HermitianMatrix, p: f64) -> Result<HermitianMatrix> {
    if !p.is_finite() {
        return Err(Error::InvalidArgument(format!("matrix power exponent {p}")));
    }
    let e = eigh(a)?;
    let spectrum = psd_clipped_spectrum(&e.eigenvalues)?;
    if p < 0.0 {
        require_pd(&spectrum)?;
    }
    let mapped = map_spectrum(&spectrum, |l| {
        if l == 0.0 {
            if p == 0.0 {
                1.0
            } else {
                0.0
            }
        } else {
            l.powf(p)
        }
    })?;
    Ok(e.assemble(&mapped))
}

/// Complex power A^w of a PSD matrix, λ^w = exp(w·ln λ) on the spectrum.
///
/// Zero eigenvalues are admitted only while Re(w) > 0 (where λ^w → 0
/// continuously); any other exponent needs the PD predicate.
pub fn matrix_complex_power(a: &HermitianMatrix, w: Complex64) -> Result<Matrix> {
    let e = eigh(a)?;
    let spectrum = psd_clipped_spectrum(&e.eigenvalues)?;
    if w == Complex64::new(0.0, 0.0) {
        return Ok(Matrix::identity(a.n()));
    }
    if w.re <= 0.0 {
        require_pd(&spectrum)?;
    }
    let mut mapped = Vec::with_capacity(spectrum.len());
    for &l in &spectrum {
        let z = if l == 0.0 {
            Complex64::new(0.0, 0.0)
        } else {
            (w * l.ln()).exp()
        };
        if !z.re.is_finite() || !z.im.is_finite() {
            return Err(Error::FunctionDomain {
                eigenvalue: l,
                reason: format!("complex power with exponent {w} overflowed"),
            });
        }
        mapped.push(z);
    }
    Ok(e.assemble_complex(&mapped))
}

/// A^{it} for PD A — a unitary matrix (to rounding).
pub fn matrix_unitary_power(a: &HermitianMatrix, t: f64) -> Result<Matrix> {
    if !t.is_finite() {
        return Err(Error::InvalidArgument(format!("unitary power exponent {t}")));
    }
    matrix_complex_power(a, Complex64::new(0.0, t))
}

/// exp(A) for Hermitian A.
pub fn matrix_exp(a: &HermitianMatrix) -> Result<HermitianMatrix> {
    matrix_function(a, f64::exp)
}

/// exp(w·A) for Hermitian A and complex w — the boundary-line factor
/// exp((1+it)A) used by the interpolation gaps.
pub fn matrix_exp_scaled(a: &HermitianMatrix, w: Complex64) -> Result<Matrix> {
    let e = eigh(a)?;
    let mut mapped = Vec::with_capacity(e.eigenvalues.len());
    for &l in &e.eigenvalues {
        let z = (w * l).exp();
        if !z.re.is_finite() || !z.im.is_finite() {
            return Err(Error::FunctionDomain {
                eigenvalue: l,
                reason: format!("exp({w}·λ) overflowed"),
            });
        }
        mapped.push(z);
    }
    Ok(e.assemble_complex(&mapped))
}

/// log(A) for PD A.
pub fn matrix_log(a: &HermitianMatrix) -> Result<HermitianMatrix> {
    let e = eigh(a)?;
    let spectrum = psd_clipped_spectrum(&e.eigenvalues)?;
    require_pd(&spectrum)?;
    let mapped = map_spectrum(&spectrum, f64::ln)?;
    Ok(e.assemble(&mapped))
}

/// |X| = (X*X)^{1/2}. Accepts rectangular X; the result is cols×cols.
pub fn abs_matrix(x: &Matrix) -> Result<HermitianMatrix> {
    let gram = HermitianMatrix::new(&x.adjoint().mul(x))?;
    let e = eigh(&gram)?;
    let spectrum = psd_clipped_spectrum(&e.eigenvalues)?;
    let mapped = map_spectrum(&spectrum, f64::sqrt)?;
    Ok(e.assemble(&mapped))
}

/// Singular values of X, descending (square roots of the clipped spectrum of
/// X*X).
pub fn singular_values(x: &Matrix) -> Result<Vec<f64>> {
    // Jordan–Wielandt embedding: the eigenvalues of [[0, X], [X*, 0]] are
    // ±σᵢ(X) plus |rows−cols| zeros. The eigensolver delivers them with
    // absolute error ~ε·σ_max, so σ_min keeps relative accuracy ~ε·cond(X)
    // instead of the ε·cond(X)² loss of forming X*X — which matters whenever
    // the smallest singular value enters a determinant-regime quantity.
    let (r, c) = (x.rows(), x.cols());
    let mut jw = Matrix::zeros(r + c, r + c);
    for i in 0..r {
        for j in 0..c {
            jw[(i, r + j)] = x[(i, j)];
            jw[(r + j, i)] = x[(i, j)].conj();
        }
    }
    let e = eigh(&HermitianMatrix::from_exact(jw))?;
    // Eigenvalues are sorted descending; the leading min(r,c) are the
    // singular values, with rounding noise around 0 clipped.
    Ok(e.eigenvalues
        .iter()
        .take(r.min(c))
        .map(|&l| l.max(0.0))
        .collect())
}

/// Schatten p-norm: (Σ σᵢ^p)^{1/p} for finite p ≥ 1, largest singular value
/// for p = ∞.
pub fn schatten_norm(x: &Matrix, p: f64) -> Result<f64> {
    if p.is_nan() || p < 1.0 {
        return Err(Error::InvalidArgument(format!(
            "schatten norm needs p ≥ 1 (or infinity), got {p}"
        )));
    }
    let sv = singular_values(x)?;
    if p.is_infinite() {
        return Ok(sv.first().copied().unwrap_or(0.0));
    }
    let total: f64 = sv.iter().map(|s| s.powf(p)).sum();
    Ok(total.powf(1.0 / p))
}

/// Operator norm (largest singular value).
pub fn operator_norm(x: &Matrix) -> Result<f64> {
    schatten_norm(x, f64::INFINITY)
}

/// Operator norm of a Hermitian matrix: max |λ|.
pub fn herm_op_norm(a: &HermitianMatrix) -> Result<f64> {
    let e = eigh(a)?;
    Ok(e.lambda_max().abs().max(e.lambda_min().abs()))
}

/// Outcome of a tolerance-aware Löwner-order comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LoewnerOrder {
    /// ‖A − B‖ within tolerance of zero.
    Equal,
    /// A ⪰ B - tol.
    Geq,
    /// A ⪯ B + tol.
    Leq,
    /// A − B has eigenvalues on both sides beyond tolerance.
    Incomparable,
}

/// Compare A and B in the Löwner order, with slack tol·max(‖A‖, ‖B‖, 1)
/// (operator norms).
pub fn loewner_cmp(a: &HermitianMatrix, b: &HermitianMatrix, tol: f64) -> Result<LoewnerOrder> {
    if a.n() != b.n() {
        return Err(Error::Dimension(format!(
            "loewner_cmp on {}x{} vs {}x{}",
            a.n(),
            a.n(),
            b.n(),
            b.n()
        )));
    }
    if !(tol >= 0.0) {
        return Err(Error::InvalidArgument(format!("negative tolerance {tol}")));
    }
    let diff = a.linear_combination(1.0, b, -1.0);
    let e = eigh(&diff)?;
    let slack = tol * herm_op_norm(a)?.max(herm_op_norm(b)?).max(1.0);
    let lo = e.lambda_min();
    let hi = e.lambda_max();
    Ok(if lo >= -slack && hi <= slack {
        LoewnerOrder::Equal
    } else if lo >= -slack {
        LoewnerOrder::Geq
    } else if hi <= slack {
        LoewnerOrder::Leq
    } else {
        LoewnerOrder::Incomparable
    })
}

/// Polar decomposition M = Q·|M| with Q unitary; requires invertible M
/// (i.e. |M| passes the PD predicate).
pub fn polar_decompose(m: &Matrix) -> Result<(Matrix, HermitianMatrix)> {
    if !m.is_square() {
        return Err(Error::Dimension(format!(
            "polar decomposition of a {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    let gram = HermitianMatrix::new(&m.adjoint().mul(m))?;
    let e = eigh(&gram)?;
    let spectrum = psd_clipped_spectrum(&e.eigenvalues)?;
    require_pd(&spectrum)?;
    let sv: Vec<f64> = spectrum.iter().map(|&l| l.sqrt()).collect();
    let abs = e.assemble(&sv);
    let inv: Vec<f64> = sv.iter().map(|&s| 1.0 / s).collect();
    let abs_inv = e.assemble(&inv);
    let q = m.mul(abs_inv.as_matrix());
    Ok((q, abs))
}

/// Decompose, keeping the eigensystem for reuse when a caller needs several
/// functions of the same matrix.
pub fn decompose(a: &HermitianMatrix) -> Result<EigenDecomposition> {
    eigh(a)
}
