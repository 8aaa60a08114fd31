//! Error type shared across the crate.
//!
//! Domain errors carry the numbers that triggered them (offending eigenvalue,
//! violated bound) so callers can report something actionable instead of a
//! bare "invalid input".

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Shape or size mismatch between operands.
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// An argument violated a documented precondition.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A scalar function was applied to a spectrum point where it is
    /// undefined or non-finite.
    #[error("scalar function undefined at eigenvalue {eigenvalue:e}: {reason}")]
    FunctionDomain { eigenvalue: f64, reason: String },

    /// The positive-semidefinite predicate failed beyond the clipping bound.
    #[error(
        "matrix is not positive semidefinite: eigenvalue {eigenvalue:e} lies below \
         the clipping bound {bound:e}"
    )]
    NotPsd { eigenvalue: f64, bound: f64 },

    /// The positive-definite predicate failed.
    #[error(
        "matrix is not positive definite: smallest eigenvalue {lambda_min:e} \
         does not exceed {threshold:e}"
    )]
    NotPd { lambda_min: f64, threshold: f64 },

    /// The cyclic Jacobi sweep cap was reached before the off-diagonal mass
    /// fell under the convergence threshold.
    #[error(
        "eigensolver did not converge within {sweeps} sweeps \
         (off-diagonal norm {off_norm:e}, threshold {threshold:e})"
    )]
    NoConvergence {
        sweeps: usize,
        off_norm: f64,
        threshold: f64,
    },

    /// A combinatorial size cap was exceeded (number of minors, basis size,
    /// permutation count, ...).
    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),

    /// A request that is well-defined mathematically but deliberately outside
    /// this implementation (e.g. the Dirac boundary weight as a pointwise
    /// density).
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// A boundary-line integrand failed at a quadrature node.
    #[error("integrand evaluation failed at node t = {node}: {source}")]
    Evaluation {
        node: f64,
        #[source]
        source: Box<Error>,
    },

    /// Malformed matrix/report JSON.
    #[error("json: {0}")]
    Json(String),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Wrap an error produced while evaluating an integrand at node `t`.
    pub fn at_node(self, node: f64) -> Error {
        Error::Evaluation {
            node,
            source: Box::new(self),
        }
    }
}
