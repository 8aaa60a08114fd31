//! Deterministic per-trial random streams and the matrix samplers built on
//! them.
//!
//! Stream keys are derived from (seed, case id, trial index), so each trial
//! owns an independent ChaCha12 stream regardless of execution order — trial
//! 57 draws the same matrices whether the suite runs on one thread or eight,
//! and whether trials 0..56 ran at all.

use crate::error::{Error, Result};
use crate::linalg::{herm_op_norm, HermitianMatrix, Matrix};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn fnv1a(bytes: &[u8]) -> u64 {
    let mut h = 0xcbf2_9ce4_8422_2325u64;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

/// The 256-bit stream key for one (seed, case, trial) triple.
pub fn stream_key(seed: u64, case_id: &str, trial: u64) -> [u8; 32] {
    let mut state = seed;
    splitmix64(&mut state);
    state ^= fnv1a(case_id.as_bytes());
    splitmix64(&mut state);
    state ^= trial;
    let mut key = [0u8; 32];
    for chunk in key.chunks_exact_mut(8) {
        chunk.copy_from_slice(&splitmix64(&mut state).to_le_bytes());
    }
    key
}

/// The random stream for a single verification trial.
pub struct TrialRng {
    rng: ChaCha12Rng,
}

impl TrialRng {
    pub fn new(seed: u64, case_id: &str, trial: u64) -> TrialRng {
        TrialRng {
            rng: ChaCha12Rng::from_seed(stream_key(seed, case_id, trial)),
        }
    }

    /// Uniform draw from [lo, hi).
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.rng.gen::<f64>()
    }

    /// An interpolation parameter kept safely inside the open unit interval.
    pub fn unit_interior(&mut self) -> f64 {
        self.uniform(0.1, 0.9)
    }

    /// A pair (p, q) with 0.1 ≤ p, q and p + q ≤ 0.9.
    pub fn split_exponents(&mut self) -> (f64, f64) {
        let p = self.uniform(0.1, 0.7);
        let q = self.uniform(0.1, 0.9 - p);
        (p, q)
    }

    /// Standard complex Gaussian: E|z|² = 1.
    pub fn complex_gaussian(&mut self) -> Complex64 {
        let re: f64 = self.rng.sample(StandardNormal);
        let im: f64 = self.rng.sample(StandardNormal);
        Complex64::new(re, im).scale(std::f64::consts::FRAC_1_SQRT_2)
    }

    /// A rows×cols matrix of independent standard complex Gaussians.
    pub fn ginibre(&mut self, rows: usize, cols: usize) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for _ in 0..rows * cols {
            data.push(self.complex_gaussian());
        }
        Matrix::new(rows, cols, data).expect("shape is consistent by construction")
    }

    /// A Hermitian matrix (G + G*)/2 from a square Ginibre draw.
    pub fn hermitian(&mut self, n: usize) -> HermitianMatrix {
        let g = self.ginibre(n, n);
        let sym = g.add(&g.adjoint()).scale_re(0.5);
        HermitianMatrix::new(&sym).expect("symmetrized matrix is Hermitian")
    }

    /// A Hermitian matrix rescaled to operator norm at most `cap` (uniformly
    /// drawn target in [cap/5, cap]).
    pub fn bounded_hermitian(&mut self, n: usize, cap: f64) -> HermitianMatrix {
        let target = self.uniform(cap / 5.0, cap);
        let h = self.hermitian(n);
        let norm = herm_op_norm(&h).expect("norm of a sampled Hermitian matrix");
        if norm == 0.0 {
            return HermitianMatrix::zeros(n);
        }
        h.scale(target / norm)
    }

    /// A positive-semidefinite matrix G·G*/n; one draw in ten is made exactly
    /// rank-deficient (a zeroed Ginibre column) to exercise boundary
    /// behavior.
    pub fn psd(&mut self, n: usize) -> HermitianMatrix {
        let drop_column = self.uniform(0.0, 1.0) < 0.1;
        let mut g = self.ginibre(n, n);
        if drop_column && n > 0 {
            for i in 0..n {
                g[(i, n - 1)] = Complex64::new(0.0, 0.0);
            }
        }
        let prod = g.mul(&g.adjoint()).scale_re(1.0 / n as f64);
        HermitianMatrix::new(&prod).expect("Gram matrix is Hermitian")
    }

    /// A positive-definite matrix with condition number at most `cond`:
    /// random unitary basis, spectrum drawn affinely inside
    /// [s/cond, s] for a scale s = exp(U(−0.5, 0.5)).
    pub fn pd(&mut self, n: usize, cond: f64) -> Result<HermitianMatrix> {
        if !(cond >= 1.0) {
            return Err(Error::InvalidArgument(format!(
                "condition cap {cond} must be at least 1"
            )));
        }
        let scale = self.uniform(-0.5, 0.5).exp();
        let lo = scale / cond;
        let mut diag = Vec::with_capacity(n);
        for _ in 0..n {
            diag.push(lo + (scale - lo) * self.rng.gen::<f64>());
        }
        let u = self.unitary(n)?;
        let d = Matrix::from_real_diag(&diag);
        let m = u.mul(&d).mul(&u.adjoint());
        HermitianMatrix::new(&m)
    }

    /// A Haar-ish random unitary: modified Gram–Schmidt on a Ginibre draw,
    /// with one re-orthogonalization pass.
    pub fn unitary(&mut self, n: usize) -> Result<Matrix> {
        let g = self.ginibre(n, n);
        let mut cols: Vec<Vec<Complex64>> = (0..n)
            .map(|j| (0..n).map(|i| g[(i, j)]).collect())
            .collect();
        for j in 0..n {
            for _pass in 0..2 {
                for prev in 0..j {
                    let proj: Complex64 = (0..n)
                        .map(|i| cols[prev][i].conj() * cols[j][i])
                        .sum();
                    for i in 0..n {
                        let adjust = proj * cols[prev][i];
                        cols[j][i] -= adjust;
                    }
                }
            }
            let norm: f64 = cols[j].iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
            if norm < 1e-10 {
                return Err(Error::InvalidArgument(
                    "degenerate draw while orthonormalizing a random unitary".into(),
                ));
            }
            for i in 0..n {
                cols[j][i] /= norm;
            }
        }
        Ok(Matrix::from_fn(n, n, |i, j| cols[j][i]))
    }

    /// A rows×cols contraction U·diag(σ)·V* with σ uniform in [0, 1].
    pub fn contraction(&mut self, rows: usize, cols: usize) -> Result<Matrix> {
        self.contraction_in(rows, cols, 0.0, 1.0)
    }

    /// A contraction with σ uniform in [lo, hi] ⊆ [0, 1]. Cases that feed
    /// the contraction through determinant-regime evaluations (k = n) use a
    /// positive floor so the smallest singular value stays well-conditioned.
    pub fn contraction_in(
        &mut self,
        rows: usize,
        cols: usize,
        lo: f64,
        hi: f64,
    ) -> Result<Matrix> {
        if !(0.0..=1.0).contains(&lo) || !(lo..=1.0).contains(&hi) {
            return Err(Error::InvalidArgument(format!(
                "contraction singular-value range [{lo}, {hi}] must sit inside [0, 1]"
            )));
        }
        let r = rows.min(cols);
        let mut sig = Matrix::zeros(rows, cols);
        for i in 0..r {
            sig[(i, i)] = Complex64::new(self.uniform(lo, hi), 0.0);
        }
        let u = self.unitary(rows)?;
        let v = self.unitary(cols)?;
        Ok(u.mul(&sig).mul(&v.adjoint()))
    }

    /// A commuting pair sharing one random eigenbasis, both with spectra in
    /// [lo, hi].
    pub fn commuting_pair(
        &mut self,
        n: usize,
        lo: f64,
        hi: f64,
    ) -> Result<(HermitianMatrix, HermitianMatrix)> {
        let u = self.unitary(n)?;
        let mut d1 = Vec::with_capacity(n);
        let mut d2 = Vec::with_capacity(n);
        for _ in 0..n {
            d1.push(self.uniform(lo, hi));
            d2.push(self.uniform(lo, hi));
        }
        let a = u.mul(&Matrix::from_real_diag(&d1)).mul(&u.adjoint());
        let b = u.mul(&Matrix::from_real_diag(&d2)).mul(&u.adjoint());
        Ok((HermitianMatrix::new(&a)?, HermitianMatrix::new(&b)?))
    }
}
