//! Spectral k-trace functionals and their certified matrix inequalities.
//!
//! The crate computes the k-trace (the k-th elementary symmetric polynomial
//! of the spectrum, equivalently the sum of all k×k principal minors), its
//! concave normalization φ(A) = trace_k[A]^{1/k}, compound and mixed
//! multilinear operators on exterior powers, mixed discriminants, and the
//! interpolation-density integrals behind trace inequalities of
//! Golden–Thompson and Lieb type.
//!
//! Everything numerical is certified rather than assumed: [`verify`] hosts
//! seeded property suites that evaluate both sides of each inequality or
//! identity on randomized well-conditioned instances and report worst-case
//! normalized gaps, with independent evaluation routes cross-checked against
//! each other (spectral vs. minor-sum vs. compound-trace, closed forms vs.
//! quadrature).
//!
//! Heavy loops (minor sums, permutation sums, quadrature nodes, verification
//! trials) go through [`par`], which uses a work-stealing pool when the
//! `parallel` feature (default) is on and plain sequential iteration
//! otherwise — results are bitwise identical either way.

pub mod error;
pub mod par;

mod comb;

pub mod linalg;

pub mod exterior;
pub mod interp;
pub mod io;
pub mod mixed;
pub mod trace;
pub mod verify;

pub use error::{Error, Result};
pub use linalg::{HermitianMatrix, Matrix};

/// A signed inequality slack together with the scale it should be judged
/// against.
///
/// `value` is RHS − LHS (≥ 0 when the inequality holds; ≈ 0 for an
/// identity), and `scale` is max(1, magnitudes of the terms involved), so
/// `normalized()` is a dimensionless defect safe to compare to a tolerance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Gap {
    /// RHS − LHS, in the units of the inequality's terms.
    pub value: f64,
    /// max(1, |terms|...): the magnitude the defect is relative to.
    pub scale: f64,
    /// The convex-combination weight this gap was evaluated at, for checks
    /// that sweep a τ grid; `None` for checks with no τ.
    pub tau: Option<f64>,
}

impl Gap {
    /// Build a gap from its signed value and the terms whose magnitudes set
    /// the scale.
    pub fn of_terms(value: f64, terms: &[f64]) -> Gap {
        let mut scale = 1.0f64;
        for &t in terms {
            let a = t.abs();
            if a > scale {
                scale = a;
            }
        }
        Gap {
            value,
            scale,
            tau: None,
        }
    }

    /// Annotate the gap with the τ it was evaluated at.
    pub fn at_tau(mut self, tau: f64) -> Gap {
        self.tau = Some(tau);
        self
    }

    /// The dimensionless defect value/scale (scale is always ≥ 1).
    pub fn normalized(&self) -> f64 {
        self.value / self.scale
    }
}

#[cfg(test)]
mod tests {
    use super::Gap;

    #[test]
    fn gap_scale_floors_at_one() {
        let g = Gap::of_terms(1e-12, &[1e-30, -2e-31]);
        assert_eq!(g.scale, 1.0);
        assert_eq!(g.normalized(), 1e-12);
        let g = Gap::of_terms(-3.0, &[5.0, -80.0]);
        assert_eq!(g.scale, 80.0);
        assert_eq!(g.normalized(), -3.0 / 80.0);
    }
}
