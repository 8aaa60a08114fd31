//! k-traces: the elementary symmetric polynomials of a spectrum, their three
//! independent evaluation routes, and the functional φ(A) = trace_k[A]^{1/k}.
//!
//! For Hermitian A, trace_k[A] = e_k(λ(A)) = Σ (k×k principal minors of A)
//! = trace of the k-th compound of A. The three routes share no code — the
//! eigenvalue route runs through the Jacobi solver, the minors route through
//! LU determinants, the compound route through the wedge-space operator — so
//! agreement between them is a meaningful cross-check rather than a tautology.

use crate::comb::{binomial_capped, unrank_subset};
use crate::error::{Error, Result};
use crate::exterior;
use crate::linalg::{eigh, psd_clipped_spectrum, singular_values, HermitianMatrix, Matrix};
use crate::par;
use num_complex::Complex64;

/// Hard cap on the number of principal minors the MINORS route will sum.
pub const MINORS_CAP: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KTraceMethod {
    /// e_k of the spectrum from the Jacobi solver (the default).
    Eigen,
    /// Direct sum of all C(n, k) principal k×k minors via LU.
    Minors,
    /// Trace of the k-th compound matrix.
    Compound,
}

impl KTraceMethod {
    pub fn name(self) -> &'static str {
        match self {
            KTraceMethod::Eigen => "eigen",
            KTraceMethod::Minors => "minors",
            KTraceMethod::Compound => "compound",
        }
    }
}

/// A k-trace value tagged with the route that produced it.
#[derive(Clone, Copy, Debug)]
pub struct KTraceResult {
    pub value: f64,
    pub method: KTraceMethod,
}

/// e_k(values): sum over all k-element products. Newton-free DP, O(len·k),
/// numerically benign (no alternating-sign recurrences).
pub fn elementary_symmetric(values: &[f64], k: usize) -> Result<f64> {
    if k == 0 || k > values.len() {
        return Err(Error::InvalidArgument(format!(
            "elementary symmetric degree k = {k} outside 1..={}",
            values.len()
        )));
    }
    let mut e = vec![0.0f64; k + 1];
    e[0] = 1.0;
    for &v in values {
        for j in (1..=k.min(values.len())).rev() {
            e[j] += v * e[j - 1];
        }
    }
    Ok(e[k])
}

fn check_k(n: usize, k: usize) -> Result<()> {
    if k == 0 || k > n {
        return Err(Error::InvalidArgument(format!(
            "k = {k} outside 1..={n} for an {n}x{n} matrix"
        )));
    }
    Ok(())
}

/// trace_k[A] by the eigenvalue route.
pub fn trace_k(a: &HermitianMatrix, k: usize) -> Result<f64> {
    check_k(a.n(), k)?;
    let e = eigh(a)?;
    elementary_symmetric(&e.eigenvalues, k)
}

/// trace_k[A] as the sum of all principal k×k minors. Refuses to enumerate
/// more than [`MINORS_CAP`] subsets.
pub fn trace_k_minors(a: &HermitianMatrix, k: usize) -> Result<f64> {
    let n = a.n();
    check_k(n, k)?;
    let count = binomial_capped(n, k, MINORS_CAP).ok_or_else(|| {
        Error::ResourceCap(format!(
            "C({n}, {k}) principal minors exceed the cap of {MINORS_CAP}"
        ))
    })?;
    let dets = par::map_indexed(count as usize, |rank| {
        let mut subset = Vec::with_capacity(k);
        unrank_subset(n, k, rank as u64, &mut subset);
        a.as_matrix().submatrix(&subset, &subset).determinant()
    });
    // Minors of a Hermitian matrix are real; the imaginary residue is
    // rounding noise and is dropped.
    Ok(par::pairwise_sum_complex(&dets).re)
}

/// trace_k[M] for an arbitrary square matrix, via the trace of its k-th
/// compound. This is e_k of the (possibly complex) spectrum of M, which is
/// what makes cyclicity trace_k[AB] = trace_k[BA] testable on non-Hermitian
/// products.
pub fn trace_k_general(m: &Matrix, k: usize) -> Result<Complex64> {
    check_k(m.n(), k)?;
    let op = exterior::compound(m, k)?;
    Ok(op.matrix().trace())
}

/// trace_k[A] by the requested route, tagged with the route.
pub fn trace_k_with_method(
    a: &HermitianMatrix,
    k: usize,
    method: KTraceMethod,
) -> Result<KTraceResult> {
    let value = match method {
        KTraceMethod::Eigen => trace_k(a, k)?,
        KTraceMethod::Minors => trace_k_minors(a, k)?,
        KTraceMethod::Compound => trace_k_general(a.as_matrix(), k)?.re,
    };
    Ok(KTraceResult { value, method })
}

/// φ(A) = trace_k[A]^{1/k} on the PSD cone.
///
/// Rank-deficient inputs with rank < k give exactly 0; indefinite inputs
/// fail the PSD clipping predicate and surface as a domain error.
pub fn phi(a: &HermitianMatrix, k: usize) -> Result<f64> {
    check_k(a.n(), k)?;
    let e = eigh(a)?;
    let spectrum = psd_clipped_spectrum(&e.eigenvalues)?;
    Ok(phi_from_clipped(&spectrum, k))
}

/// φ from an already-clipped (nonnegative) spectrum.
pub(crate) fn phi_from_clipped(spectrum: &[f64], k: usize) -> f64 {
    let ek = elementary_symmetric(spectrum, k).expect("spectrum length checked by caller");
    if ek == 0.0 {
        0.0
    } else {
        ek.powf(1.0 / k as f64)
    }
}

/// (1/p)·log φ(|X|^p) from the singular values of X.
///
/// `p` may be `f64::INFINITY`, where the limit is the log of the geometric
/// mean of the k largest singular values. Finite p must be ≥ 1. Errors if
/// rank(X) < k (the log diverges).
pub fn log_phi_sv_power(x: &Matrix, p: f64, k: usize) -> Result<f64> {
    if p.is_nan() || p < 1.0 {
        return Err(Error::InvalidArgument(format!(
            "boundary norm exponent p = {p}, need p ≥ 1 or infinity"
        )));
    }
    if p.is_infinite() {
        let sv = singular_values(x)?;
        check_k(sv.len(), k)?;
        let mut acc = 0.0;
        for &s in sv.iter().take(k) {
            if s == 0.0 {
                return Err(Error::FunctionDomain {
                    eigenvalue: 0.0,
                    reason: format!("rank < k = {k}: top-k singular product vanishes"),
                });
            }
            acc += s.ln();
        }
        return Ok(acc / k as f64);
    }
    Ok(log_phi_abs_power(x, p, k)? / p)
}

/// log φ(|X|^p) = (1/k)·log trace_k[|X|^p] for finite p > 0.
///
/// Errors if rank(X) < k (the log diverges).
pub fn log_phi_abs_power(x: &Matrix, p: f64, k: usize) -> Result<f64> {
    if !p.is_finite() || p <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "log-functional exponent p = {p}, need finite p > 0"
        )));
    }
    let sv = singular_values(x)?;
    check_k(sv.len(), k)?;
    let powered: Vec<f64> = sv.iter().map(|s| s.powf(p)).collect();
    let ek = elementary_symmetric(&powered, k)?;
    if ek <= 0.0 {
        return Err(Error::FunctionDomain {
            eigenvalue: 0.0,
            reason: format!("rank < k = {k}: k-trace of |X|^p vanishes"),
        });
    }
    Ok(ek.ln() / k as f64)
}

/// φ(|X|^p) for finite p ≥ 1 (0 when rank < k — the functional itself is
/// fine with that; only the log form diverges).
pub fn phi_sv_power(x: &Matrix, p: f64, k: usize) -> Result<f64> {
    if !p.is_finite() || p < 1.0 {
        return Err(Error::InvalidArgument(format!(
            "phi_sv_power needs finite p ≥ 1, got {p}"
        )));
    }
    let sv = singular_values(x)?;
    check_k(sv.len(), k)?;
    let powered: Vec<f64> = sv.iter().map(|s| s.powf(p)).collect();
    let ek = elementary_symmetric(&powered, k)?;
    Ok(if ek == 0.0 {
        0.0
    } else {
        ek.powf(1.0 / k as f64)
    })
}

/// Hölder factor trace_k[|X|^p]^{1/p}; p = ∞ gives the product of the k
/// largest singular values.
pub fn holder_factor(x: &Matrix, p: f64, k: usize) -> Result<f64> {
    if p.is_nan() || p < 1.0 {
        return Err(Error::InvalidArgument(format!(
            "Hölder exponent p = {p}, need p ≥ 1 or infinity"
        )));
    }
    let sv = singular_values(x)?;
    check_k(sv.len(), k)?;
    if p.is_infinite() {
        return Ok(sv.iter().take(k).product());
    }
    let powered: Vec<f64> = sv.iter().map(|s| s.powf(p)).collect();
    let ek = elementary_symmetric(&powered, k)?;
    Ok(ek.powf(1.0 / p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix_exp;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn herm(n: usize, entries: &[Complex64]) -> HermitianMatrix {
        HermitianMatrix::new(&Matrix::new(n, n, entries.to_vec()).unwrap()).unwrap()
    }

    /// Brute-force e_k by enumerating subsets — the oracle the DP is checked
    /// against.
    fn ek_bruteforce(values: &[f64], k: usize) -> f64 {
        let n = values.len();
        let mut total = 0.0;
        for mask in 0u32..(1 << n) {
            if mask.count_ones() as usize != k {
                continue;
            }
            let mut prod = 1.0;
            for (i, &v) in values.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    prod *= v;
                }
            }
            total += prod;
        }
        total
    }

    #[test]
    fn elementary_symmetric_small_cases() {
        assert_eq!(elementary_symmetric(&[1.0, 2.0, 3.0], 2).unwrap(), 11.0);
        assert_eq!(elementary_symmetric(&[1.0, 2.0, 3.0], 1).unwrap(), 6.0);
        assert_eq!(elementary_symmetric(&[1.0, 2.0, 3.0], 3).unwrap(), 6.0);
        assert!(elementary_symmetric(&[1.0], 2).is_err());
        assert!(elementary_symmetric(&[1.0], 0).is_err());
    }

    #[test]
    fn elementary_symmetric_matches_bruteforce() {
        let vals = [0.7, -1.3, 2.1, 0.05, -0.4, 1.9];
        for k in 1..=vals.len() {
            let dp = elementary_symmetric(&vals, k).unwrap();
            let bf = ek_bruteforce(&vals, k);
            assert!(
                (dp - bf).abs() <= 1e-12 * bf.abs().max(1.0),
                "k={k}: {dp} vs {bf}"
            );
        }
    }

    #[test]
    fn trace_k_of_diag_123() {
        let a = HermitianMatrix::from_real_diag(&[1.0, 2.0, 3.0]);
        assert!((trace_k(&a, 1).unwrap() - 6.0).abs() < 1e-14);
        assert!((trace_k(&a, 2).unwrap() - 11.0).abs() < 1e-14);
        assert!((trace_k(&a, 3).unwrap() - 6.0).abs() < 1e-14);
        assert!((trace_k_minors(&a, 2).unwrap() - 11.0).abs() < 1e-14);
    }

    #[test]
    fn k_edges_are_trace_and_determinant() {
        let a = herm(
            3,
            &[
                c(2.0, 0.0),
                c(0.5, 1.0),
                c(0.0, -1.5),
                c(0.5, -1.0),
                c(1.0, 0.0),
                c(0.7, 0.2),
                c(0.0, 1.5),
                c(0.7, -0.2),
                c(-1.0, 0.0),
            ],
        );
        let t1 = trace_k(&a, 1).unwrap();
        assert!((t1 - a.as_matrix().trace().re).abs() < 1e-12);
        let t3 = trace_k(&a, 3).unwrap();
        let det = a.as_matrix().determinant();
        assert!((t3 - det.re).abs() < 1e-11 * det.re.abs().max(1.0));
    }

    #[test]
    fn minors_cap_is_enforced() {
        let a = HermitianMatrix::identity(50);
        assert!(matches!(
            trace_k_minors(&a, 25),
            Err(Error::ResourceCap(_))
        ));
    }

    #[test]
    fn phi_of_diag_is_root_of_ek() {
        let a = HermitianMatrix::from_real_diag(&[1.0, 2.0, 3.0]);
        let v = phi(&a, 2).unwrap();
        assert!((v - 11.0_f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn phi_vanishes_below_rank_and_rejects_indefinite() {
        let a = HermitianMatrix::from_real_diag(&[2.0, 0.0, 0.0]);
        assert_eq!(phi(&a, 2).unwrap(), 0.0);
        let b = HermitianMatrix::from_real_diag(&[2.0, -1.0]);
        assert!(matches!(phi(&b, 2), Err(Error::NotPsd { .. })));
    }

    #[test]
    fn phi_is_positively_homogeneous_of_order_one() {
        let a = herm(
            2,
            &[c(2.0, 0.0), c(0.3, 0.4), c(0.3, -0.4), c(1.0, 0.0)],
        );
        let v = phi(&a, 2).unwrap();
        let v3 = phi(&a.scale(3.0), 2).unwrap();
        assert!((v3 - 3.0 * v).abs() < 1e-12 * v.max(1.0));
    }

    #[test]
    fn zero_padding_changes_nothing_bitwise() {
        let a = herm(
            3,
            &[
                c(1.2, 0.0),
                c(0.3, -0.8),
                c(-0.1, 0.2),
                c(0.3, 0.8),
                c(-0.7, 0.0),
                c(0.45, 0.0),
                c(-0.1, -0.2),
                c(0.45, 0.0),
                c(2.5, 0.0),
            ],
        );
        let padded = a.zero_padded(5).unwrap();
        for k in 1..=3 {
            let plain = trace_k(&a, k).unwrap();
            let pad = trace_k(&padded, k).unwrap();
            assert_eq!(plain.to_bits(), pad.to_bits(), "k = {k}");
        }
    }

    #[test]
    fn log_phi_sv_power_infinite_limit() {
        let x = Matrix::from_real_diag(&[4.0, 2.0, 1.0]);
        // p = ∞: (1/k)·Σ_{top k} ln σ = (ln 4 + ln 2)/2.
        let inf = log_phi_sv_power(&x, f64::INFINITY, 2).unwrap();
        assert!((inf - (4.0f64.ln() + 2.0f64.ln()) / 2.0).abs() < 1e-12);
        // Large finite p approaches it from above; p stays small enough
        // that σ^p does not overflow (4^256 = 2^512 < f64 max).
        let big = log_phi_sv_power(&x, 256.0, 2).unwrap();
        assert!(big >= inf - 1e-12 && (big - inf).abs() < 1e-2);
    }

    #[test]
    fn holder_factor_edges() {
        let x = Matrix::from_real_diag(&[3.0, 2.0, 0.5]);
        // p = 1: trace of |X| restricted to e_k of singulars.
        let f1 = holder_factor(&x, 1.0, 2).unwrap();
        assert!((f1 - (3.0 * 2.0 + 3.0 * 0.5 + 2.0 * 0.5)).abs() < 1e-12);
        let finf = holder_factor(&x, f64::INFINITY, 2).unwrap();
        assert!((finf - 6.0).abs() < 1e-12);
    }

    #[test]
    fn trace_k_of_exponential_equals_ek_of_exp_spectrum() {
        let a = herm(
            2,
            &[c(0.4, 0.0), c(0.1, -0.3), c(0.1, 0.3), c(-0.2, 0.0)],
        );
        let e = eigh(&a).unwrap();
        let expect = elementary_symmetric(
            &e.eigenvalues.iter().map(|l| l.exp()).collect::<Vec<_>>(),
            2,
        )
        .unwrap();
        let via_matrix = trace_k(&matrix_exp(&a).unwrap(), 2).unwrap();
        assert!((expect - via_matrix).abs() < 1e-12 * expect.abs().max(1.0));
    }
}
