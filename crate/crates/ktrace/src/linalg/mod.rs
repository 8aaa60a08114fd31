//! Dense complex linear algebra: matrix/Hermitian types, the Jacobi
//! eigensolver, and spectral matrix functions. Everything else in the crate
//! sits on top of this module.

mod eigen;
mod functions;
mod hermitian;
mod matrix;

pub use eigen::{eigh, EigenDecomposition};
pub use functions::{
    abs_matrix, decompose, herm_op_norm, is_pd_spectrum, loewner_cmp, matrix_complex_power,
    matrix_exp, matrix_exp_scaled, matrix_function, matrix_log, matrix_power,
    matrix_unitary_power, operator_norm, polar_decompose, psd_clipped_spectrum, schatten_norm,
    singular_values, LoewnerOrder,
};
pub use hermitian::HermitianMatrix;
pub use matrix::Matrix;

/// Numeric policy in one place. Relative thresholds are multiplied by the
/// scale stated in each constant's doc.
pub mod tolerance {
    /// Jacobi convergence: off-diagonal Frobenius mass vs. ‖A‖_F.
    pub const EIGH_OFFDIAG_REL: f64 = 1e-14;
    /// Hard cap on Jacobi sweeps before giving up.
    pub const EIGH_MAX_SWEEPS: usize = 30;
    /// Eigenvector orthonormality budget: ‖UU* − I‖_max ≤ this · n.
    pub const UNITARY_INF_REL: f64 = 1e-12;
    /// Reconstruction budget: ‖UΛU* − A‖_max ≤ this · n · ‖A‖.
    pub const RECONSTRUCT_INF_REL: f64 = 1e-11;
    /// PSD clipping: eigenvalues in [-this·λ_max, 0) are treated as 0.
    pub const PSD_CLIP_REL: f64 = 1e-10;
    /// PD predicate: λ_min must exceed this · max(λ_max, 1).
    pub const PD_MIN_REL: f64 = 1e-12;
}
