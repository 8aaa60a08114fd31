//! Seeded property-based verification suites.
//!
//! Each [`Case`] certifies one inequality or identity: a trial draws
//! randomized matrices from its own deterministic stream, evaluates both
//! sides, and reports the normalized gap. The per-trial streams are keyed by
//! (seed, case id, trial index), so results are bitwise independent of
//! thread count and execution order; reports pin their `millis` field to 0
//! so serialized output is byte-stable too.

pub mod rng;

mod cases;

use crate::error::{Error, Result};
use crate::linalg::HermitianMatrix;
use crate::{Gap, par};
use rng::TrialRng;
use serde::Serialize;

/// Tolerance for gaps whose two sides are computed by closed-form linear
/// algebra only.
pub const ALGEBRAIC_TOL: f64 = 1e-9;
/// Tolerance for gaps with a quadrature on one side.
pub const QUADRATURE_TOL: f64 = 1e-7;

/// Shared knobs for a verification run.
#[derive(Debug, Clone)]
pub struct TrialConfig {
    /// Matrix size for samplers (cases with tighter caps clamp it down).
    pub n: usize,
    /// Index of the spectral functional trace_k / φ.
    pub k: usize,
    /// Second dimension for rectangular-map cases; `None` picks a default.
    pub m: Option<usize>,
    /// Trials per case; 0 skips.
    pub trials: u64,
    /// Master seed; trial streams derive from (seed, case id, trial).
    pub seed: u64,
    /// Convex-combination weights exercised by concavity cases.
    pub tau_grid: Vec<f64>,
    /// Condition-number cap for positive-definite draws.
    pub cond_cap: f64,
    /// Overrides the per-case tolerance when set.
    pub tol_override: Option<f64>,
}

impl Default for TrialConfig {
    fn default() -> Self {
        TrialConfig {
            n: 4,
            k: 2,
            m: None,
            trials: 100,
            seed: 42,
            tau_grid: vec![0.1, 0.3, 0.5, 0.7, 0.9],
            cond_cap: 1e4,
            tol_override: None,
        }
    }
}

impl TrialConfig {
    /// Check the documented ranges: 1 ≤ k ≤ n ≤ 8, cond_cap ≥ 1, weights
    /// strictly inside (0, 1).
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.n > 8 {
            return Err(Error::InvalidArgument(format!(
                "verification size n = {} outside 1..=8",
                self.n
            )));
        }
        if self.k == 0 || self.k > self.n {
            return Err(Error::InvalidArgument(format!(
                "index k = {} outside 1..={}",
                self.k, self.n
            )));
        }
        if let Some(m) = self.m {
            if m == 0 || m > 8 {
                return Err(Error::InvalidArgument(format!(
                    "second dimension m = {m} outside 1..=8"
                )));
            }
        }
        if !(self.cond_cap >= 1.0) {
            return Err(Error::InvalidArgument(format!(
                "condition cap {} must be at least 1",
                self.cond_cap
            )));
        }
        if self.tau_grid.is_empty() {
            return Err(Error::InvalidArgument(
                "convex-weight grid must be nonempty".into(),
            ));
        }
        for &t in &self.tau_grid {
            if !(t > 0.0 && t < 1.0) {
                return Err(Error::InvalidArgument(format!(
                    "convex weight {t} outside the open interval (0, 1)"
                )));
            }
        }
        if let Some(tol) = self.tol_override {
            if !(tol > 0.0 && tol.is_finite()) {
                return Err(Error::InvalidArgument(format!(
                    "tolerance override {tol} must be positive and finite"
                )));
            }
        }
        Ok(())
    }
}

/// How a case's gaps are judged.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    /// Inequality: normalized gap must be ≥ −tol.
    AtLeastZero,
    /// Identity: |normalized gap| must be ≤ tol.
    Zero,
}

/// Which tolerance class a case belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseKind {
    /// Closed-form linear algebra on both sides.
    Algebraic,
    /// A quadrature approximation on at least one side.
    Quadrature,
}

impl CaseKind {
    pub fn tolerance(self) -> f64 {
        match self {
            CaseKind::Algebraic => ALGEBRAIC_TOL,
            CaseKind::Quadrature => QUADRATURE_TOL,
        }
    }
}

/// One registered verification case.
pub struct Case {
    /// Stable identifier used on the command line and in reports.
    pub id: &'static str,
    /// One-line statement of what is being certified.
    pub title: &'static str,
    pub kind: CaseKind,
    pub sense: Sense,
    /// True for deliberate falsification cases: the "inequality" is known to
    /// be false and the suite must find violations. Excluded from `run_all`.
    pub expected_failure: bool,
    pub(crate) run: fn(&TrialConfig, u64, &mut TrialRng) -> Result<Vec<Gap>>,
}

/// Outcome of one case run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Passed,
    Failed,
    Skipped,
}

/// One failing trial.
#[derive(Debug, Clone, Serialize)]
pub struct Failure {
    pub trial: u64,
    /// τ of the violating check when it swept a convex-combination grid.
    pub tau: Option<f64>,
    /// Normalized gap; absent when the trial errored before producing one.
    pub gap: Option<f64>,
    pub scale: f64,
    pub message: String,
}

/// The result of running one case.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub case: String,
    pub status: Status,
    pub trials: u64,
    /// Signed normalized gap of the worst trial (0 when nothing ran).
    pub worst_gap: f64,
    /// Scale of that worst gap.
    pub scale: f64,
    pub tolerance: f64,
    pub failures: Vec<Failure>,
    /// Pinned to 0 so serialized reports are byte-stable.
    pub millis: u64,
}

/// Concavity defect of a scalar map at one convex combination:
/// f(τ·x₁ + (1−τ)·x₂) − (τ·f(x₁) + (1−τ)·f(x₂)), ≥ 0 iff midpoint-concave
/// on this triple.
pub fn midpoint_concavity_gap<F>(
    f: F,
    x1: &HermitianMatrix,
    x2: &HermitianMatrix,
    tau: f64,
) -> Result<Gap>
where
    F: Fn(&HermitianMatrix) -> Result<f64>,
{
    let f1 = f(x1)?;
    let f2 = f(x2)?;
    let mid = f(&x1.convex_with(x2, tau))?;
    let combo = tau * f1 + (1.0 - tau) * f2;
    Ok(Gap::of_terms(mid - combo, &[mid, f1, f2]).at_tau(tau))
}

/// Joint-concavity defect of a two-argument scalar map at one convex
/// combination of argument pairs.
pub fn midpoint_joint_concavity_gap<F>(
    f: F,
    x1: (&HermitianMatrix, &HermitianMatrix),
    x2: (&HermitianMatrix, &HermitianMatrix),
    tau: f64,
) -> Result<Gap>
where
    F: Fn(&HermitianMatrix, &HermitianMatrix) -> Result<f64>,
{
    let f1 = f(x1.0, x1.1)?;
    let f2 = f(x2.0, x2.1)?;
    let mid_a = x1.0.convex_with(x2.0, tau);
    let mid_b = x1.1.convex_with(x2.1, tau);
    let fm = f(&mid_a, &mid_b)?;
    let combo = tau * f1 + (1.0 - tau) * f2;
    Ok(Gap::of_terms(fm - combo, &[fm, f1, f2]).at_tau(tau))
}

/// Joint-concavity defect for a map of arbitrarily many matrix arguments,
/// combined slotwise with one shared τ.
pub fn midpoint_concavity_gap_multi<F>(
    f: F,
    xs1: &[HermitianMatrix],
    xs2: &[HermitianMatrix],
    tau: f64,
) -> Result<Gap>
where
    F: Fn(&[HermitianMatrix]) -> Result<f64>,
{
    assert_eq!(xs1.len(), xs2.len(), "argument tuples must match in length");
    let f1 = f(xs1)?;
    let f2 = f(xs2)?;
    let mids: Vec<HermitianMatrix> = xs1
        .iter()
        .zip(xs2)
        .map(|(a, b)| a.convex_with(b, tau))
        .collect();
    let fm = f(&mids)?;
    let combo = tau * f1 + (1.0 - tau) * f2;
    Ok(Gap::of_terms(fm - combo, &[fm, f1, f2]).at_tau(tau))
}

/// All registered cases, in reporting order.
pub fn registry() -> &'static [Case] {
    cases::REGISTRY
}

/// Look a case up by id.
pub fn find_case(id: &str) -> Option<&'static Case> {
    registry().iter().find(|c| c.id == id)
}

/// Run one case under `cfg`. Configuration errors surface as `Err`; trial
/// failures land in the report.
pub fn run_case(case: &Case, cfg: &TrialConfig) -> Result<VerificationReport> {
    cfg.validate()?;
    let tol = cfg.tol_override.unwrap_or(case.kind.tolerance());
    if cfg.trials == 0 {
        return Ok(VerificationReport {
            case: case.id.to_string(),
            status: Status::Skipped,
            trials: 0,
            worst_gap: 0.0,
            scale: 1.0,
            tolerance: tol,
            failures: Vec::new(),
            millis: 0,
        });
    }
    let outcomes: Vec<Result<Vec<Gap>>> = par::map_indexed(cfg.trials as usize, |t| {
        let trial = t as u64;
        let mut rng = TrialRng::new(cfg.seed, case.id, trial);
        (case.run)(cfg, trial, &mut rng)
    });

    let mut worst: Option<Gap> = None;
    let mut failures = Vec::new();
    for (t, outcome) in outcomes.into_iter().enumerate() {
        let trial = t as u64;
        match outcome {
            Err(e) => failures.push(Failure {
                trial,
                tau: None,
                gap: None,
                scale: 1.0,
                message: e.to_string(),
            }),
            Ok(gaps) => {
                for g in gaps {
                    let worse = match (case.sense, worst) {
                        (_, None) => true,
                        (Sense::AtLeastZero, Some(w)) => g.normalized() < w.normalized(),
                        (Sense::Zero, Some(w)) => g.normalized().abs() > w.normalized().abs(),
                    };
                    if worse {
                        worst = Some(g);
                    }
                    let violated = match case.sense {
                        Sense::AtLeastZero => g.normalized() < -tol,
                        Sense::Zero => g.normalized().abs() > tol,
                    };
                    if violated {
                        failures.push(Failure {
                            trial,
                            tau: g.tau,
                            gap: Some(g.normalized()),
                            scale: g.scale,
                            message: match case.sense {
                                Sense::AtLeastZero => format!(
                                    "normalized gap {:.3e} below -{tol:.1e}",
                                    g.normalized()
                                ),
                                Sense::Zero => format!(
                                    "identity defect {:.3e} beyond {tol:.1e}",
                                    g.normalized()
                                ),
                            },
                        });
                    }
                }
            }
        }
    }
    let status = if failures.is_empty() {
        Status::Passed
    } else {
        Status::Failed
    };
    Ok(VerificationReport {
        case: case.id.to_string(),
        status,
        trials: cfg.trials,
        worst_gap: worst.map(|g| g.normalized()).unwrap_or(0.0),
        scale: worst.map(|g| g.scale).unwrap_or(1.0),
        tolerance: tol,
        failures,
        millis: 0,
    })
}

/// Run every registered case except deliberate falsification cases, in
/// registry order.
pub fn run_all(cfg: &TrialConfig) -> Result<Vec<VerificationReport>> {
    cfg.validate()?;
    let mut reports = Vec::new();
    for case in registry() {
        if case.expected_failure {
            continue;
        }
        reports.push(run_case(case, cfg)?);
    }
    Ok(reports)
}

/// Serialize reports with the run's seed into a byte-stable JSON document.
pub fn reports_to_json(seed: u64, reports: &[VerificationReport]) -> String {
    #[derive(Serialize)]
    struct Doc<'a> {
        seed: u64,
        passed: bool,
        cases: &'a [VerificationReport],
    }
    let passed = reports.iter().all(|r| r.status != Status::Failed);
    serde_json::to_string_pretty(&Doc {
        seed,
        passed,
        cases: reports,
    })
    .expect("report serialization cannot fail")
}
