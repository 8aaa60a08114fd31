//! Mixed discriminants D(A_1, …, A_n): the fully polarized form of the
//! determinant, normalized so that D(A, …, A) = det A.
//!
//! D(A_1, …, A_n) = (1/n!) Σ_{σ ∈ S_n} det[ column j taken from A_{σ(j)} ].
//! For Hermitian inputs the value is real (the σ ↦ σ∘conjugation symmetry
//! pairs each permutation term with its conjugate), so the API returns f64
//! and drops the rounding-level imaginary residue.

use crate::comb::{binomial_capped, factorial, unrank_permutation};
use crate::error::{Error, Result};
use crate::linalg::{HermitianMatrix, Matrix};
use crate::par;
use crate::Gap;

/// Largest n for which the n! permutation sum is enumerated.
pub const MIXED_DISC_MAX_N: usize = 7;

/// Mixed discriminant of n Hermitian n×n matrices.
pub fn mixed_discriminant(matrices: &[&HermitianMatrix]) -> Result<f64> {
    let n = matrices.len();
    if n == 0 {
        return Err(Error::InvalidArgument(
            "mixed discriminant needs at least one matrix".into(),
        ));
    }
    if n > MIXED_DISC_MAX_N {
        return Err(Error::ResourceCap(format!(
            "mixed discriminant enumerates n! terms: n = {n} exceeds {MIXED_DISC_MAX_N}"
        )));
    }
    for m in matrices {
        if m.n() != n {
            return Err(Error::Dimension(format!(
                "mixed discriminant of {n} matrices needs each to be {n}x{n}, got {}x{}",
                m.n(),
                m.n()
            )));
        }
    }
    let n_perm = factorial(n);
    let terms = par::map_indexed(n_perm as usize, |rank| {
        let mut sigma = Vec::with_capacity(n);
        unrank_permutation(n, rank as u64, &mut sigma);
        let mut assembled = Matrix::zeros(n, n);
        for (j, &src) in sigma.iter().enumerate() {
            for i in 0..n {
                assembled[(i, j)] = matrices[src].get(i, j);
            }
        }
        assembled.determinant()
    });
    let total = par::pairwise_sum_complex(&terms);
    Ok(total.re / n_perm as f64)
}

/// Convenience: D with `a` in the first `count_a` slots and `fill` in the
/// rest.
pub fn mixed_discriminant_repeated(
    a: &HermitianMatrix,
    count_a: usize,
    fill: &HermitianMatrix,
) -> Result<f64> {
    let n = a.n();
    if count_a > n {
        return Err(Error::InvalidArgument(format!(
            "cannot place {count_a} copies into {n} slots"
        )));
    }
    let mut slots: Vec<&HermitianMatrix> = Vec::with_capacity(n);
    for _ in 0..count_a {
        slots.push(a);
    }
    for _ in count_a..n {
        slots.push(fill);
    }
    mixed_discriminant(&slots)
}

/// trace_k[A] recovered from mixed discriminants:
/// trace_k[A] = C(n, k) · D(A, …, A, I, …, I) with k copies of A.
pub fn trace_k_from_mixed(a: &HermitianMatrix, k: usize) -> Result<f64> {
    let n = a.n();
    if k == 0 || k > n {
        return Err(Error::InvalidArgument(format!(
            "k = {k} outside 1..={n} for an {n}x{n} matrix"
        )));
    }
    let id = HermitianMatrix::identity(n);
    let d = mixed_discriminant_repeated(a, k, &id)?;
    let choose = binomial_capped(n, k, u64::MAX).ok_or_else(|| {
        Error::ResourceCap(format!("C({n}, {k}) overflows"))
    })? as f64;
    Ok(choose * d)
}

/// Quadratic Alexandrov–Fenchel gap for PSD inputs:
/// D(A, B, C_3, …, C_n)² − D(A, A, C_3, …)·D(B, B, C_3, …) ≥ 0.
/// Returns the gap normalized by the magnitude of the terms involved.
pub fn alexandrov_fenchel_gap(
    a: &HermitianMatrix,
    b: &HermitianMatrix,
    rest: &[&HermitianMatrix],
) -> Result<Gap> {
    let n = a.n();
    if rest.len() != n.saturating_sub(2) {
        return Err(Error::InvalidArgument(format!(
            "need {} trailing matrices for n = {n}, got {}",
            n.saturating_sub(2),
            rest.len()
        )));
    }
    let with = |x: &HermitianMatrix, y: &HermitianMatrix| -> Result<f64> {
        let mut slots: Vec<&HermitianMatrix> = Vec::with_capacity(n);
        slots.push(x);
        slots.push(y);
        slots.extend_from_slice(rest);
        mixed_discriminant(&slots)
    };
    let dab = with(a, b)?;
    let daa = with(a, a)?;
    let dbb = with(b, b)?;
    Ok(Gap::of_terms(
        dab * dab - daa * dbb,
        &[dab * dab, daa * dbb],
    ))
}
