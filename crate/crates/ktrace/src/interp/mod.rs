//! Interpolation densities on the unit strip and the quadrature machinery
//! used to evaluate boundary integrals against them.
//!
//! The density family is
//!   β_θ(t) = sin(πθ) / (2θ·(cosh(πt) + cos(πθ))),  θ ∈ (0, 1),
//! with the θ→0 limit β₀(t) = π / (2(cosh(πt) + 1)). The θ→1 limit is a
//! Dirac mass at t = 0 and is not a pointwise density: callers substitute
//! the exact point evaluation instead of asking for quadrature, and
//! [`beta_density`] rejects θ = 1.

mod gaps;

pub use gaps::{
    golden_thompson_log_gap, jensen_linear_gap, jensen_log_gap, multivariate_gt_gap, sbt_gap,
    stein_hirschman_gap, t_operator, t_operator_quadrature, three_matrix_gt_gap, ExpProductFamily,
    PowerProductFamily, SandwichChainFamily, StripFamily, TwoSidedChainFamily, MGT_MAX_M,
    SBT_MAX_M, THREE_MATRIX_NORM_CAP,
};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::par;
use num_complex::Complex64;
use std::f64::consts::PI;

/// β_θ(t) for θ ∈ [0, 1). θ = 1 is a Dirac mass, not a density, and is
/// reported as unsupported; callers handle it by exact point evaluation.
pub fn beta_density(theta: f64, t: f64) -> Result<f64> {
    if !theta.is_finite() || !(0.0..=1.0).contains(&theta) {
        return Err(Error::InvalidArgument(format!(
            "interpolation parameter theta = {theta} outside [0, 1]"
        )));
    }
    if theta == 1.0 {
        return Err(Error::Unsupported(
            "beta density at theta = 1 is a Dirac mass; evaluate the integrand at t = 0 instead"
                .into(),
        ));
    }
    if theta == 0.0 {
        return Ok(PI / (2.0 * ((PI * t).cosh() + 1.0)));
    }
    Ok((PI * theta).sin() / (2.0 * theta * ((PI * t).cosh() + (PI * theta).cos())))
}

/// Number of Gauss–Legendre nodes per panel in the standard rule.
pub const NODES_PER_PANEL: usize = 16;
/// Number of panels per half-line in the standard rule (24 panels total).
pub const PANELS_PER_HALF: usize = 12;
/// Truncation half-width: β_θ decays like e^{−π|t|}, so the tail beyond
/// |t| = 12 is below 1e-15.
pub const TRUNCATION: f64 = 12.0;
/// Geometric growth ratio of panel widths away from t = 0. The densities
/// peak at the origin with width ~ (1−θ), so panels are graded steeply: the
/// panel touching 0 is ≈ 0.0018 wide (resolving the near-Dirac spike up to
/// θ ≈ 0.999 to better than 1e-11) and the outermost ≈ 6.3, where the
/// integrand has decayed below 1e-8 of its peak.
const PANEL_GROWTH: f64 = 2.1;

/// A fixed quadrature rule on [−T, T]: composite Gauss–Legendre with
/// geometrically graded panels, densest at the origin.
#[derive(Clone, Debug)]
pub struct QuadratureRule {
    /// (node, weight) pairs in ascending node order.
    points: Vec<(f64, f64)>,
    panels_per_half: usize,
}

impl QuadratureRule {
    /// The standard rule: 24 panels × 16 nodes on [−12, 12].
    pub fn standard() -> Self {
        Self::with_panels(PANELS_PER_HALF)
    }

    /// A rule with a custom number of panels per half-line (same grading,
    /// same truncation, same per-panel order).
    pub fn with_panels(panels_per_half: usize) -> Self {
        assert!(panels_per_half >= 1, "need at least one panel per half-line");
        let (xs, ws) = gauss_legendre(NODES_PER_PANEL);
        // Geometric panel widths, normalized to fill [0, T].
        let mut widths = Vec::with_capacity(panels_per_half);
        let mut w = 1.0f64;
        let mut total = 0.0f64;
        for _ in 0..panels_per_half {
            widths.push(w);
            total += w;
            w *= PANEL_GROWTH;
        }
        for w in &mut widths {
            *w *= TRUNCATION / total;
        }
        let mut bounds = Vec::with_capacity(panels_per_half + 1);
        bounds.push(0.0f64);
        let mut acc = 0.0f64;
        for w in &widths {
            acc += w;
            bounds.push(acc);
        }
        *bounds.last_mut().unwrap() = TRUNCATION;

        let mut points = Vec::with_capacity(2 * panels_per_half * NODES_PER_PANEL);
        // Negative half, outermost panel first, so nodes end up ascending.
        for p in (0..panels_per_half).rev() {
            let (a, b) = (-bounds[p + 1], -bounds[p]);
            push_panel(&mut points, a, b, &xs, &ws);
        }
        for p in 0..panels_per_half {
            let (a, b) = (bounds[p], bounds[p + 1]);
            push_panel(&mut points, a, b, &xs, &ws);
        }
        QuadratureRule {
            points,
            panels_per_half,
        }
    }

    /// The same rule with every panel split in two — used for convergence
    /// checks: a converged integral moves by less than 1e-9·scale.
    pub fn refined(&self) -> Self {
        Self::with_panels_split(self.panels_per_half)
    }

    fn with_panels_split(panels_per_half: usize) -> Self {
        // Rebuild the graded layout, then bisect each panel.
        let coarse = Self::with_panels(panels_per_half);
        let (xs, ws) = gauss_legendre(NODES_PER_PANEL);
        let mut points = Vec::with_capacity(2 * coarse.points.len());
        // Recover panel boundaries from the coarse layout.
        let mut bounds = vec![0.0f64];
        {
            let mut w = 1.0f64;
            let mut total = 0.0f64;
            let mut widths = Vec::new();
            for _ in 0..panels_per_half {
                widths.push(w);
                total += w;
                w *= PANEL_GROWTH;
            }
            let mut acc = 0.0;
            for w in &widths {
                acc += w * TRUNCATION / total;
                bounds.push(acc);
            }
            *bounds.last_mut().unwrap() = TRUNCATION;
        }
        let mut halves = Vec::new();
        for p in 0..panels_per_half {
            let mid = 0.5 * (bounds[p] + bounds[p + 1]);
            halves.push((bounds[p], mid));
            halves.push((mid, bounds[p + 1]));
        }
        for &(a, b) in halves.iter().rev() {
            push_panel(&mut points, -b, -a, &xs, &ws);
        }
        for &(a, b) in halves.iter() {
            push_panel(&mut points, a, b, &xs, &ws);
        }
        QuadratureRule {
            points,
            panels_per_half: 2 * panels_per_half,
        }
    }

    pub fn node_count(&self) -> usize {
        self.points.len()
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        self.points.iter().map(|&(x, _)| x)
    }

    /// ∫ f(t) dt over [−T, T]. Node evaluations may run concurrently; the
    /// summation is a fixed-order pairwise tree, so the result is bit-stable
    /// across thread counts. The first failing node (in node order) aborts
    /// the integral.
    pub fn integrate<F>(&self, f: F) -> Result<f64>
    where
        F: Fn(f64) -> Result<f64> + Sync,
    {
        let evals = par::map_indexed(self.points.len(), |i| {
            let (x, w) = self.points[i];
            f(x).map(|v| w * v)
        });
        let mut terms = Vec::with_capacity(evals.len());
        for (i, e) in evals.into_iter().enumerate() {
            match e {
                Ok(v) => terms.push(v),
                Err(err) => return Err(err.at_node(self.points[i].0)),
            }
        }
        Ok(par::pairwise_sum(&terms))
    }

    /// ∫ β_θ(t) f(t) dt.
    pub fn integrate_density<F>(&self, theta: f64, f: F) -> Result<f64>
    where
        F: Fn(f64) -> Result<f64> + Sync,
    {
        // Validate θ once up front (rejects θ = 1 and out-of-range).
        beta_density(theta, 0.0)?;
        self.integrate(|t| {
            let b = beta_density(theta, t)?;
            Ok(b * f(t)?)
        })
    }

    /// ∫ w(t) F(t) dt for a matrix-valued integrand, summed entrywise in a
    /// fixed-order pairwise tree.
    pub fn integrate_matrix<F, W>(&self, weight: W, f: F) -> Result<Matrix>
    where
        F: Fn(f64) -> Result<Matrix> + Sync,
        W: Fn(f64) -> Result<f64> + Sync,
    {
        let evals = par::map_indexed(self.points.len(), |i| -> Result<Matrix> {
            let (x, w) = self.points[i];
            let wt = weight(x)?;
            Ok(f(x)?.scale_re(w * wt))
        });
        let mut terms: Vec<Matrix> = Vec::with_capacity(evals.len());
        for (i, e) in evals.into_iter().enumerate() {
            match e {
                Ok(m) => terms.push(m),
                Err(err) => return Err(err.at_node(self.points[i].0)),
            }
        }
        if terms.is_empty() {
            return Err(Error::InvalidArgument("empty quadrature rule".into()));
        }
        let rows = terms[0].rows();
        let cols = terms[0].cols();
        let mut out = Matrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                let entry: Vec<Complex64> = terms.iter().map(|m| m[(i, j)]).collect();
                out[(i, j)] = par::pairwise_sum_complex(&entry);
            }
        }
        Ok(out)
    }
}

fn push_panel(points: &mut Vec<(f64, f64)>, a: f64, b: f64, xs: &[f64], ws: &[f64]) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    for (&x, &w) in xs.iter().zip(ws) {
        points.push((center + half * x, half * w));
    }
}

/// Gauss–Legendre nodes and weights on [−1, 1], by Newton iteration on the
/// Legendre recurrence. Nodes ascend.
fn gauss_legendre(order: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(order >= 2);
    let n = order as f64;
    let mut xs = vec![0.0f64; order];
    let mut ws = vec![0.0f64; order];
    for i in 0..order {
        // Tricomi-style initial guess for the i-th root (descending).
        let mut x = (PI * (i as f64 + 0.75) / (n + 0.5)).cos();
        for _ in 0..100 {
            let (p, d) = legendre_and_derivative(order, x);
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        // One polishing step, then the weight from the settled root.
        let (p, d) = legendre_and_derivative(order, x);
        let x = x - p / d;
        let dp = legendre_and_derivative(order, x).1;
        xs[order - 1 - i] = x;
        ws[order - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    (xs, ws)
}

/// (P_n(x), P'_n(x)) via the three-term recurrence.
fn legendre_and_derivative(order: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0f64;
    let mut p1 = x;
    for j in 2..=order {
        let jf = j as f64;
        let p2 = ((2.0 * jf - 1.0) * x * p1 - (jf - 1.0) * p0) / jf;
        p0 = p1;
        p1 = p2;
    }
    let d = order as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}
