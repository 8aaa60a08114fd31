//! Certified gaps for the strip-interpolation inequality, its Jensen
//! variants, and the Golden–Thompson extensions built on them.
//!
//! Every function here returns a [`Gap`] whose `value` is RHS − LHS of the
//! inequality it certifies; nonnegative (within tolerance) means the
//! inequality held on that instance. Holomorphy of the supplied families is
//! a hypothesis, not something verified numerically: only the boundary
//! lines Re z ∈ {0, 1} and the single interior point θ are ever evaluated.

use super::{beta_density, QuadratureRule};
use crate::error::{Error, Result};
use crate::linalg::{
    eigh, herm_op_norm, matrix_exp, polar_decompose, psd_clipped_spectrum, tolerance,
    EigenDecomposition, HermitianMatrix, Matrix,
};
use crate::trace::{log_phi_abs_power, log_phi_sv_power, phi, phi_from_clipped, phi_sv_power};
use crate::Gap;
use num_complex::Complex64;

/// Largest family size for the singular-value product inequality.
pub const SBT_MAX_M: usize = 4;
/// Largest family size for the multivariate Golden–Thompson gap.
pub const MGT_MAX_M: usize = 4;
/// Operator-norm cap on the three inputs of the three-matrix
/// Golden–Thompson gap (keeps the exponentials well-conditioned).
pub const THREE_MATRIX_NORM_CAP: f64 = 5.0;

/// Relative spectral floor used to lift positive-semidefinite inputs to
/// strictly positive ones where imaginary matrix powers require it.
const PD_SPECTRUM_FLOOR_REL: f64 = 1e-13;

fn cx(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// A holomorphic family z ↦ G(z) on the unit strip, together with the
/// interpolation data (θ, p₀, p₁) of the inequality instance it feeds.
pub trait StripFamily: Sync {
    /// G(z). Callers only use Re(z) ∈ {0, 1} and the interior point θ.
    fn eval(&self, z: Complex64) -> Result<Matrix>;
    /// Interior interpolation point.
    fn theta(&self) -> f64;
    /// Exponent on the Re(z) = 0 boundary; may be `f64::INFINITY`.
    fn p0(&self) -> f64;
    /// Exponent on the Re(z) = 1 boundary; may be `f64::INFINITY`.
    fn p1(&self) -> f64;
    /// The interpolated exponent: 1/p_θ = (1−θ)/p₀ + θ/p₁.
    fn p_theta(&self) -> f64 {
        let inv = (1.0 - self.theta()) * recip_or_zero(self.p0())
            + self.theta() * recip_or_zero(self.p1());
        if inv == 0.0 {
            f64::INFINITY
        } else {
            1.0 / inv
        }
    }
}

fn recip_or_zero(p: f64) -> f64 {
    if p.is_infinite() {
        0.0
    } else {
        1.0 / p
    }
}

/// One positive-semidefinite factor, eigendecomposed once so complex powers
/// cost only a reassembly per evaluation.
struct SpectralFactor {
    eig: EigenDecomposition,
    /// PSD-clipped spectrum, descending, aligned with `eig.vectors` columns.
    spectrum: Vec<f64>,
}

impl SpectralFactor {
    fn new(h: &HermitianMatrix) -> Result<Self> {
        let eig = eigh(h)?;
        let spectrum = psd_clipped_spectrum(&eig.eigenvalues)?;
        Ok(SpectralFactor { eig, spectrum })
    }

    /// Like `new`, but lifts zero eigenvalues to a small relative floor so
    /// that imaginary powers stay defined (documented clipping-to-PD).
    fn new_lifted(h: &HermitianMatrix) -> Result<Self> {
        let mut f = Self::new(h)?;
        let lmax = f.spectrum.first().copied().unwrap_or(0.0);
        if lmax <= 0.0 {
            return Err(Error::InvalidArgument(
                "zero matrix cannot be lifted to a positive-definite factor".into(),
            ));
        }
        let floor = PD_SPECTRUM_FLOOR_REL * lmax;
        for l in &mut f.spectrum {
            if *l < floor {
                *l = floor;
            }
        }
        Ok(f)
    }

    fn require_pd(self) -> Result<Self> {
        if self.spectrum.last().copied().unwrap_or(0.0) <= 0.0 {
            return Err(Error::NotPd {
                lambda_min: self.spectrum.last().copied().unwrap_or(0.0),
                threshold: 0.0,
            });
        }
        Ok(self)
    }

    /// The matrix power A^w = U diag(λᵢ^w) U*.
    fn power(&self, w: Complex64) -> Result<Matrix> {
        let mut vals = Vec::with_capacity(self.spectrum.len());
        for &l in &self.spectrum {
            let v = if l == 0.0 {
                if w.re > 0.0 {
                    cx(0.0, 0.0)
                } else {
                    return Err(Error::FunctionDomain {
                        eigenvalue: 0.0,
                        reason: format!("power with exponent Re(w) = {} at a zero eigenvalue", w.re),
                    });
                }
            } else {
                (w * l.ln()).exp()
            };
            if !v.re.is_finite() || !v.im.is_finite() {
                return Err(Error::FunctionDomain {
                    eigenvalue: l,
                    reason: format!("power {w} overflowed"),
                });
            }
            vals.push(v);
        }
        Ok(self.eig.assemble_complex(&vals))
    }
}

fn product(mats: impl IntoIterator<Item = Matrix>) -> Option<Matrix> {
    let mut iter = mats.into_iter();
    let first = iter.next()?;
    Some(iter.fold(first, |acc, m| acc.mul(&m)))
}

fn require_unit_interval(name: &str, v: f64) -> Result<()> {
    if !(v > 0.0 && v <= 1.0) {
        return Err(Error::InvalidArgument(format!(
            "{name} = {v} outside (0, 1]"
        )));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Families
// ---------------------------------------------------------------------------

/// The chain G(z) = X^{rz/2} C^{−rz/2} Q |M|^{z/s} with M = C^{rs/2} K = Q|M|.
///
/// Its left boundary is unitary (all three factors become imaginary powers
/// of positive-definite matrices), so the instance runs with p₀ = ∞, p₁ = 2,
/// θ = s. At z = s the value satisfies φ(|G(s)|^{2/s}) = φ((K*X^{rs}K)^{1/s})
/// exactly, which [`SandwichChainFamily::interior_identity`] exposes as a
/// consistency oracle.
pub struct SandwichChainFamily {
    x: SpectralFactor,
    c: SpectralFactor,
    q: Matrix,
    m_abs: SpectralFactor,
    kmat: Matrix,
    r: f64,
    s: f64,
}

impl SandwichChainFamily {
    pub fn new(
        x: &HermitianMatrix,
        c: &HermitianMatrix,
        kmat: &Matrix,
        r: f64,
        s: f64,
    ) -> Result<Self> {
        require_unit_interval("power r", r)?;
        require_unit_interval("power s", s)?;
        let n = x.n();
        if c.n() != n || kmat.rows() != n || kmat.cols() != n {
            return Err(Error::Dimension(
                "chain family needs X, C, K of one square size".into(),
            ));
        }
        let xf = SpectralFactor::new(x)?.require_pd()?;
        let cf = SpectralFactor::new(c)?.require_pd()?;
        let m = cf.power(cx(r * s / 2.0, 0.0))?.mul(kmat);
        let (q, m_abs) = polar_decompose(&m)?;
        let m_abs = SpectralFactor::new(&m_abs)?.require_pd()?;
        Ok(SandwichChainFamily {
            x: xf,
            c: cf,
            q,
            m_abs,
            kmat: kmat.clone(),
            r,
            s,
        })
    }

    /// Both sides of the exact identity φ(|G(s)|^{2/s}) = φ((K*X^{rs}K)^{1/s}),
    /// returned as (strip side, direct side).
    pub fn interior_identity(&self, k: usize) -> Result<(f64, f64)> {
        let strip = phi_sv_power(&self.eval(cx(self.s, 0.0))?, 2.0 / self.s, k)?;
        let xrs = self.x.power(cx(self.r * self.s, 0.0))?;
        let xrs_h = HermitianMatrix::new(&xrs)?;
        let sandwich = xrs_h.congruence(&self.kmat)?;
        let e = eigh(&sandwich)?;
        let clipped = psd_clipped_spectrum(&e.eigenvalues)?;
        let powered: Vec<f64> = clipped.iter().map(|l| l.powf(1.0 / self.s)).collect();
        let direct = phi_from_clipped(&powered, k);
        Ok((strip, direct))
    }
}

impl StripFamily for SandwichChainFamily {
    fn eval(&self, z: Complex64) -> Result<Matrix> {
        let a = self.x.power(z * (self.r / 2.0))?;
        let b = self.c.power(-z * (self.r / 2.0))?;
        let d = self.m_abs.power(z / self.s)?;
        Ok(a.mul(&b).mul(&self.q).mul(&d))
    }

    fn theta(&self) -> f64 {
        self.s
    }

    fn p0(&self) -> f64 {
        f64::INFINITY
    }

    fn p1(&self) -> f64 {
        2.0
    }
}

/// The two-sided chain
/// G(z) = X^{rsz/2} C^{−rsz/2} M C^{−rs(1−z)/2} X^{rs(1−z)/2}
/// with M = C^{ps/2} K C^{qs/2} and r = p + q, run at θ = p/r with
/// p₀ = p₁ = p_θ = 2/s (all finite — the instance that exercises the
/// finite-exponent Jensen forms).
pub struct TwoSidedChainFamily {
    x: SpectralFactor,
    c: SpectralFactor,
    m: Matrix,
    kmat: Matrix,
    p: f64,
    q: f64,
    s: f64,
}

impl TwoSidedChainFamily {
    pub fn new(
        x: &HermitianMatrix,
        c: &HermitianMatrix,
        kmat: &Matrix,
        p: f64,
        q: f64,
        s: f64,
    ) -> Result<Self> {
        require_unit_interval("power p", p)?;
        require_unit_interval("power q", q)?;
        require_unit_interval("power s", s)?;
        if p + q > 1.0 + 1e-12 {
            return Err(Error::InvalidArgument(format!(
                "need p + q ≤ 1, got {p} + {q}"
            )));
        }
        let n = x.n();
        if c.n() != n || kmat.rows() != n || kmat.cols() != n {
            return Err(Error::Dimension(
                "chain family needs X, C, K of one square size".into(),
            ));
        }
        let xf = SpectralFactor::new(x)?.require_pd()?;
        let cf = SpectralFactor::new(c)?.require_pd()?;
        let m = cf
            .power(cx(p * s / 2.0, 0.0))?
            .mul(kmat)
            .mul(&cf.power(cx(q * s / 2.0, 0.0))?);
        Ok(TwoSidedChainFamily {
            x: xf,
            c: cf,
            m,
            kmat: kmat.clone(),
            p,
            q,
            s,
        })
    }

    /// Both sides of the exact identity
    /// φ(|G(p/r)|^{2/s}) = φ((X^{qs/2}K*X^{ps}KX^{qs/2})^{1/s}).
    pub fn interior_identity(&self, k: usize) -> Result<(f64, f64)> {
        let strip = phi_sv_power(&self.eval(cx(self.theta(), 0.0))?, 2.0 / self.s, k)?;
        let xqs = self.x.power(cx(self.q * self.s / 2.0, 0.0))?;
        let xps = self.x.power(cx(self.p * self.s, 0.0))?;
        let inner = xqs
            .adjoint()
            .mul(&self.kmat.adjoint())
            .mul(&xps)
            .mul(&self.kmat)
            .mul(&xqs);
        let inner_h = HermitianMatrix::new(&inner)?;
        let e = eigh(&inner_h)?;
        let clipped = psd_clipped_spectrum(&e.eigenvalues)?;
        let powered: Vec<f64> = clipped.iter().map(|l| l.powf(1.0 / self.s)).collect();
        let direct = phi_from_clipped(&powered, k);
        Ok((strip, direct))
    }
}

impl StripFamily for TwoSidedChainFamily {
    fn eval(&self, z: Complex64) -> Result<Matrix> {
        let rs = (self.p + self.q) * self.s;
        let one_minus_z = cx(1.0, 0.0) - z;
        let a = self.x.power(z * (rs / 2.0))?;
        let b = self.c.power(-z * (rs / 2.0))?;
        let d = self.c.power(-one_minus_z * (rs / 2.0))?;
        let e = self.x.power(one_minus_z * (rs / 2.0))?;
        Ok(a.mul(&b).mul(&self.m).mul(&d).mul(&e))
    }

    fn theta(&self) -> f64 {
        self.p / (self.p + self.q)
    }

    fn p0(&self) -> f64 {
        2.0 / self.s
    }

    fn p1(&self) -> f64 {
        2.0 / self.s
    }
}

/// The ordered power product G(z) = Π_j A_j^z over positive factors, with
/// caller-chosen interpolation data (θ, p₀, p₁). Its left boundary is a
/// product of unitaries.
pub struct PowerProductFamily {
    factors: Vec<SpectralFactor>,
    theta: f64,
    p0: f64,
    p1: f64,
}

impl PowerProductFamily {
    pub fn new(mats: &[&HermitianMatrix], theta: f64, p0: f64, p1: f64) -> Result<Self> {
        if mats.is_empty() {
            return Err(Error::InvalidArgument(
                "power product needs at least one factor".into(),
            ));
        }
        let n = mats[0].n();
        let mut factors = Vec::with_capacity(mats.len());
        for m in mats {
            if m.n() != n {
                return Err(Error::Dimension(
                    "power product needs factors of one size".into(),
                ));
            }
            factors.push(SpectralFactor::new_lifted(m)?);
        }
        Ok(PowerProductFamily {
            factors,
            theta,
            p0,
            p1,
        })
    }
}

impl StripFamily for PowerProductFamily {
    fn eval(&self, z: Complex64) -> Result<Matrix> {
        let mut mats = Vec::with_capacity(self.factors.len());
        for f in &self.factors {
            mats.push(f.power(z)?);
        }
        Ok(product(mats).expect("nonempty by construction"))
    }

    fn theta(&self) -> f64 {
        self.theta
    }

    fn p0(&self) -> f64 {
        self.p0
    }

    fn p1(&self) -> f64 {
        self.p1
    }
}

/// The ordered exponential product G(z) = Π_j exp(z·A_j) over Hermitian
/// matrices (any signature): the family behind the multivariate
/// Golden–Thompson bound.
pub struct ExpProductFamily {
    eigs: Vec<EigenDecomposition>,
}

impl ExpProductFamily {
    pub fn new(mats: &[&HermitianMatrix]) -> Result<Self> {
        if mats.is_empty() {
            return Err(Error::InvalidArgument(
                "exponential product needs at least one factor".into(),
            ));
        }
        let n = mats[0].n();
        let mut eigs = Vec::with_capacity(mats.len());
        for m in mats {
            if m.n() != n {
                return Err(Error::Dimension(
                    "exponential product needs factors of one size".into(),
                ));
            }
            eigs.push(eigh(m)?);
        }
        Ok(ExpProductFamily { eigs })
    }

    /// Π_j exp(z·A_j) in index order.
    pub fn eval(&self, z: Complex64) -> Result<Matrix> {
        let mut mats = Vec::with_capacity(self.eigs.len());
        for e in &self.eigs {
            let vals: Vec<Complex64> = e.eigenvalues.iter().map(|&l| (z * l).exp()).collect();
            for v in &vals {
                if !v.re.is_finite() || !v.im.is_finite() {
                    return Err(Error::FunctionDomain {
                        eigenvalue: 0.0,
                        reason: format!("exponential overflowed at z = {z}"),
                    });
                }
            }
            mats.push(e.assemble_complex(&vals));
        }
        Ok(product(mats).expect("nonempty by construction"))
    }
}

// ---------------------------------------------------------------------------
// Strip-inequality gaps
// ---------------------------------------------------------------------------

/// Gap of the log-interpolation inequality
///   (1/p_θ)·log φ(|G(θ)|^{p_θ})
///     ≤ ∫ [ (1−θ)·β_{1−θ}(t)·(1/p₀)·log φ(|G(it)|^{p₀})
///         + θ·β_θ(t)·(1/p₁)·log φ(|G(1+it)|^{p₁}) ] dt,
/// where an infinite exponent means the limiting boundary functional
/// (the log of the geometric mean of the top k singular values).
pub fn stein_hirschman_gap<F>(family: &F, k: usize, rule: &QuadratureRule) -> Result<Gap>
where
    F: StripFamily + ?Sized,
{
    let theta = family.theta();
    if !(theta > 0.0 && theta < 1.0) {
        return Err(Error::Unsupported(format!(
            "interpolation point theta = {theta} must lie strictly inside (0, 1)"
        )));
    }
    let p0 = family.p0();
    let p1 = family.p1();
    let p_theta = family.p_theta();
    let lhs = log_phi_sv_power(&family.eval(cx(theta, 0.0))?, p_theta, k)?;
    let rhs = rule.integrate(|t| {
        let b0 = beta_density(1.0 - theta, t)?;
        let b1 = beta_density(theta, t)?;
        let l0 = log_phi_sv_power(&family.eval(cx(0.0, t))?, p0, k)?;
        let l1 = log_phi_sv_power(&family.eval(cx(1.0, t))?, p1, k)?;
        Ok((1.0 - theta) * b0 * l0 + theta * b1 * l1)
    })?;
    Ok(Gap::of_terms(rhs - lhs, &[lhs, rhs]))
}

/// Gap of the rescaled (Jensen-ready) log form
///   log φ(|G(θ)|^{p_θ}) ≤ ∫ [ c₀·β_{1−θ}·log φ(|G(it)|^{p₀})
///                           + c₁·β_θ·log φ(|G(1+it)|^{p₁}) ] dt,
/// c₀ = (1−θ)p_θ/p₀, c₁ = θp_θ/p₁ (the coefficients integrate to one).
/// Infinite boundary exponents are handled by their finite limits.
pub fn jensen_log_gap<F>(family: &F, k: usize, rule: &QuadratureRule) -> Result<Gap>
where
    F: StripFamily + ?Sized,
{
    let theta = family.theta();
    if !(theta > 0.0 && theta < 1.0) {
        return Err(Error::Unsupported(format!(
            "interpolation point theta = {theta} must lie strictly inside (0, 1)"
        )));
    }
    let p0 = family.p0();
    let p1 = family.p1();
    let p_theta = family.p_theta();
    if !p_theta.is_finite() {
        return Err(Error::Unsupported(
            "rescaled form needs a finite interpolated exponent".into(),
        ));
    }
    let lhs = log_phi_abs_power(&family.eval(cx(theta, 0.0))?, p_theta, k)?;
    let rhs = rule.integrate(|t| {
        let b0 = beta_density(1.0 - theta, t)?;
        let b1 = beta_density(theta, t)?;
        let g0 = family.eval(cx(0.0, t))?;
        let g1 = family.eval(cx(1.0, t))?;
        let term0 = if p0.is_finite() {
            ((1.0 - theta) * p_theta / p0) * b0 * log_phi_abs_power(&g0, p0, k)?
        } else {
            (1.0 - theta) * p_theta * b0 * log_phi_sv_power(&g0, f64::INFINITY, k)?
        };
        let term1 = if p1.is_finite() {
            (theta * p_theta / p1) * b1 * log_phi_abs_power(&g1, p1, k)?
        } else {
            theta * p_theta * b1 * log_phi_sv_power(&g1, f64::INFINITY, k)?
        };
        Ok(term0 + term1)
    })?;
    Ok(Gap::of_terms(rhs - lhs, &[lhs, rhs]))
}

/// Gap of the linear (post-Jensen) form
///   φ(|G(θ)|^{p_θ}) ≤ ∫ [ c₀·β_{1−θ}·φ(|G(it)|^{p₀})
///                       + c₁·β_θ·φ(|G(1+it)|^{p₁}) ] dt.
/// Requires finite exponents throughout.
pub fn jensen_linear_gap<F>(family: &F, k: usize, rule: &QuadratureRule) -> Result<Gap>
where
    F: StripFamily + ?Sized,
{
    let theta = family.theta();
    if !(theta > 0.0 && theta < 1.0) {
        return Err(Error::Unsupported(format!(
            "interpolation point theta = {theta} must lie strictly inside (0, 1)"
        )));
    }
    let p0 = family.p0();
    let p1 = family.p1();
    let p_theta = family.p_theta();
    if !p0.is_finite() || !p1.is_finite() || !p_theta.is_finite() {
        return Err(Error::Unsupported(
            "linear form needs finite exponents on both boundary lines".into(),
        ));
    }
    let c0 = (1.0 - theta) * p_theta / p0;
    let c1 = theta * p_theta / p1;
    let lhs = phi_sv_power(&family.eval(cx(theta, 0.0))?, p_theta, k)?;
    let rhs = rule.integrate(|t| {
        let b0 = beta_density(1.0 - theta, t)?;
        let b1 = beta_density(theta, t)?;
        let v0 = phi_sv_power(&family.eval(cx(0.0, t))?, p0, k)?;
        let v1 = phi_sv_power(&family.eval(cx(1.0, t))?, p1, k)?;
        Ok(c0 * b0 * v0 + c1 * b1 * v1)
    })?;
    Ok(Gap::of_terms(rhs - lhs, &[lhs, rhs]))
}

// ---------------------------------------------------------------------------
// Golden–Thompson family
// ---------------------------------------------------------------------------

/// Gap of the singular-value product bound
///   log φ(|Π_j A_j^r|^{p/r}) ≤ ∫ β_r(t)·log φ(|Π_j A_j^{1+it}|^p) dt
/// for positive semidefinite A_j (lifted to strictly positive by a relative
/// spectral floor), r ∈ (0, 1], finite p ≥ 1. At r = 1 the density is a
/// Dirac mass and the right side is the exact point evaluation at t = 0.
pub fn sbt_gap(
    mats: &[&HermitianMatrix],
    r: f64,
    p: f64,
    k: usize,
    rule: &QuadratureRule,
) -> Result<Gap> {
    if mats.is_empty() || mats.len() > SBT_MAX_M {
        return Err(Error::InvalidArgument(format!(
            "family size {} outside 1..={SBT_MAX_M}",
            mats.len()
        )));
    }
    require_unit_interval("power r", r)?;
    if !p.is_finite() || p < 1.0 {
        return Err(Error::InvalidArgument(format!(
            "exponent p = {p}, need finite p ≥ 1"
        )));
    }
    let family = PowerProductFamily::new(mats, r, f64::INFINITY, p)?;
    let lhs = log_phi_abs_power(&family.eval(cx(r, 0.0))?, p / r, k)?;
    let rhs = if r == 1.0 {
        // β₁ is a Dirac mass at t = 0: exact point evaluation.
        log_phi_abs_power(&family.eval(cx(1.0, 0.0))?, p, k)?
    } else {
        rule.integrate_density(r, |t| log_phi_abs_power(&family.eval(cx(1.0, t))?, p, k))?
    };
    Ok(Gap::of_terms(rhs - lhs, &[lhs, rhs]))
}

/// Gap of the multivariate Golden–Thompson bound
///   log φ((exp Σ_j A_j)^p) ≤ ∫ β₀(t)·log φ(|Π_j exp((1+it)A_j)|^p) dt
/// for Hermitian A_j with operator norm ≤ 5, finite p ≥ 1.
pub fn multivariate_gt_gap(
    mats: &[&HermitianMatrix],
    p: f64,
    k: usize,
    rule: &QuadratureRule,
) -> Result<Gap> {
    if mats.is_empty() || mats.len() > MGT_MAX_M {
        return Err(Error::InvalidArgument(format!(
            "family size {} outside 1..={MGT_MAX_M}",
            mats.len()
        )));
    }
    if !p.is_finite() || p < 1.0 {
        return Err(Error::InvalidArgument(format!(
            "exponent p = {p}, need finite p ≥ 1"
        )));
    }
    for m in mats {
        let norm = herm_op_norm(m)?;
        if norm > THREE_MATRIX_NORM_CAP + 1e-9 {
            return Err(Error::InvalidArgument(format!(
                "operator norm {norm} exceeds the cap of {THREE_MATRIX_NORM_CAP}"
            )));
        }
    }
    let n = mats[0].n();
    let mut sum = HermitianMatrix::zeros(n);
    for m in mats {
        sum = sum.add(m);
    }
    let e = eigh(&sum)?;
    let lhs = {
        let powered: Vec<f64> = e.eigenvalues.iter().map(|&l| (p * l).exp()).collect();
        let v = phi_from_clipped(&powered, k);
        v.ln()
    };
    let family = ExpProductFamily::new(mats)?;
    let rhs = rule.integrate_density(0.0, |t| {
        log_phi_abs_power(&family.eval(cx(1.0, t))?, p, k)
    })?;
    Ok(Gap::of_terms(rhs - lhs, &[lhs, rhs]))
}

/// Log-form gap of the two-matrix Golden–Thompson inequality
///   log φ(exp(A + B)) ≤ log φ(exp(A)·exp(B)),
/// with the right side evaluated on the similar Hermitian matrix
/// exp(B/2)·exp(A)·exp(B/2).
pub fn golden_thompson_log_gap(
    a: &HermitianMatrix,
    b: &HermitianMatrix,
    k: usize,
) -> Result<Gap> {
    let sum_eig = eigh(&a.add(b))?;
    let lhs = {
        let powered: Vec<f64> = sum_eig.eigenvalues.iter().map(|&l| l.exp()).collect();
        phi_from_clipped(&powered, k).ln()
    };
    let ea = matrix_exp(a)?;
    let eb2 = matrix_exp(&b.scale(0.5))?;
    let symmetrized = ea.congruence(eb2.as_matrix())?;
    let rhs = phi(&symmetrized, k)?.ln();
    Ok(Gap::of_terms(rhs - lhs, &[lhs, rhs]))
}

// ---------------------------------------------------------------------------
// The kernel operator and the three-matrix bound
// ---------------------------------------------------------------------------

/// The kernel operator T_A[B] = ∫₀^∞ (A + tI)⁻¹ B (A + tI)⁻¹ dt for
/// positive-definite A, computed in closed form: in A's eigenbasis the
/// entries are B̃ᵢⱼ·(log λᵢ − log λⱼ)/(λᵢ − λⱼ), with the diagonal limit
/// B̃ᵢᵢ/λᵢ.
pub fn t_operator(a: &HermitianMatrix, b: &HermitianMatrix) -> Result<HermitianMatrix> {
    if a.n() != b.n() {
        return Err(Error::Dimension(format!(
            "kernel operator needs equal sizes, got {} and {}",
            a.n(),
            b.n()
        )));
    }
    let e = eigh(a)?;
    let lmax = e.lambda_max().abs().max(1.0);
    if e.lambda_min() <= tolerance::PD_MIN_REL * lmax {
        return Err(Error::NotPd {
            lambda_min: e.lambda_min(),
            threshold: tolerance::PD_MIN_REL * lmax,
        });
    }
    let n = a.n();
    let btilde = b.congruence(&e.vectors)?;
    let mut ttilde = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let kernel = log_divided_difference(e.eigenvalues[i], e.eigenvalues[j]);
            ttilde[(i, j)] = btilde.get(i, j) * kernel;
        }
    }
    let ttilde_h = HermitianMatrix::new(&ttilde)?;
    // Back to the original basis: U·T̃·U* = (U*)*·T̃·(U*).
    ttilde_h.congruence(&e.vectors.adjoint())
}

/// The stable symmetric divided difference (log x − log y)/(x − y) for
/// positive arguments, with the diagonal limit 1/x. Written through
/// u = (x−y)/(x+y) so nearby arguments lose no precision.
fn log_divided_difference(x: f64, y: f64) -> f64 {
    let sum = x + y;
    let u = (x - y) / sum;
    if u.abs() < 1e-2 {
        // atanh(u)/u = 1 + u²/3 + u⁴/5 + u⁶/7 + u⁸/9 + O(u¹⁰); the tail is
        // below 1e-20 for |u| < 1e-2.
        let u2 = u * u;
        (2.0 / sum)
            * (1.0
                + u2 * (1.0 / 3.0 + u2 * (1.0 / 5.0 + u2 * (1.0 / 7.0 + u2 * (1.0 / 9.0)))))
    } else {
        (x.ln() - y.ln()) / (x - y)
    }
}

/// The quadrature representation of the kernel operator,
///   T_A[B] = ∫ β₀(t)·(A⁻¹)^{(1+it)/2} B (A⁻¹)^{(1−it)/2} dt,
/// used as an independent oracle for [`t_operator`].
pub fn t_operator_quadrature(
    a: &HermitianMatrix,
    b: &HermitianMatrix,
    rule: &QuadratureRule,
) -> Result<HermitianMatrix> {
    if a.n() != b.n() {
        return Err(Error::Dimension(format!(
            "kernel operator needs equal sizes, got {} and {}",
            a.n(),
            b.n()
        )));
    }
    let e = eigh(a)?;
    let lmax = e.lambda_max().abs().max(1.0);
    if e.lambda_min() <= tolerance::PD_MIN_REL * lmax {
        return Err(Error::NotPd {
            lambda_min: e.lambda_min(),
            threshold: tolerance::PD_MIN_REL * lmax,
        });
    }
    let assemble_inv_power = |w: Complex64| -> Matrix {
        let vals: Vec<Complex64> = e
            .eigenvalues
            .iter()
            .map(|&l| (-w * l.ln()).exp())
            .collect();
        e.assemble_complex(&vals)
    };
    let integrated = rule.integrate_matrix(
        |t| beta_density(0.0, t),
        |t| {
            let left = assemble_inv_power(cx(0.5, 0.5 * t));
            let right = assemble_inv_power(cx(0.5, -0.5 * t));
            Ok(left.mul(b.as_matrix()).mul(&right))
        },
    )?;
    HermitianMatrix::new(&integrated)
}

/// Gap of the three-matrix Golden–Thompson bound
///   φ(exp(A + B + C)) ≤ φ(exp(A)·T_{exp(−B)}[exp(C)])
/// for Hermitian inputs with operator norm ≤ 5. The right side is evaluated
/// on the similar Hermitian matrix exp(A/2)·T·exp(A/2).
pub fn three_matrix_gt_gap(
    a: &HermitianMatrix,
    b: &HermitianMatrix,
    c: &HermitianMatrix,
    k: usize,
) -> Result<Gap> {
    for (name, m) in [("first", a), ("second", b), ("third", c)] {
        let norm = herm_op_norm(m)?;
        if norm > THREE_MATRIX_NORM_CAP + 1e-9 {
            return Err(Error::InvalidArgument(format!(
                "{name} input has operator norm {norm}, cap is {THREE_MATRIX_NORM_CAP}"
            )));
        }
    }
    let sum_eig = eigh(&a.add(b).add(c))?;
    let lhs = {
        let powered: Vec<f64> = sum_eig.eigenvalues.iter().map(|&l| l.exp()).collect();
        phi_from_clipped(&powered, k)
    };
    let t = t_operator(&matrix_exp(&b.neg())?, &matrix_exp(c)?)?;
    let ea2 = matrix_exp(&a.scale(0.5))?;
    let symmetrized = t.congruence(ea2.as_matrix())?;
    let rhs = phi(&symmetrized, k)?;
    Ok(Gap::of_terms(rhs - lhs, &[lhs, rhs]))
}
