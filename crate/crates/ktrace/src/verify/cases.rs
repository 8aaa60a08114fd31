//! The registered verification cases.
//!
//! Each case draws randomized instances from its own per-trial stream and
//! returns the gaps of the inequality (or identity) it certifies. Cases
//! whose mathematics caps the dimension (mixed discriminants, compound
//! sizes) clamp the configured `n` down rather than erroring, so one shared
//! configuration can drive the whole registry.

use super::rng::TrialRng;
use super::{
    midpoint_concavity_gap, midpoint_concavity_gap_multi, midpoint_joint_concavity_gap, Case,
    CaseKind, Sense, TrialConfig,
};
use crate::error::Result;
use crate::exterior::{additive_compound, compound};
use crate::interp::{
    jensen_linear_gap, jensen_log_gap, multivariate_gt_gap, sbt_gap, stein_hirschman_gap,
    three_matrix_gt_gap, QuadratureRule, SandwichChainFamily, TwoSidedChainFamily,
};
use crate::linalg::{
    eigh, herm_op_norm, matrix_exp, matrix_function, matrix_log, matrix_power, HermitianMatrix,
};
use crate::mixed::{alexandrov_fenchel_gap, mixed_discriminant, trace_k_from_mixed};
use crate::trace::{holder_factor, phi, trace_k, trace_k_general, trace_k_minors};
use crate::{comb, Gap};

pub(super) static REGISTRY: &[Case] = &[
    Case {
        id: "prop1-holder",
        title: "Hölder inequality |trace_k[AB]| ≤ trace_k[|A|^p]^{1/p}·trace_k[|B|^q]^{1/q}",
        kind: CaseKind::Algebraic,
        sense: Sense::AtLeastZero,
        expected_failure: false,
        run: prop1_holder,
    },
    Case {
        id: "lemma31",
        title: "concavity of A ↦ φ((K*A^{rs}K)^{1/s}) on the PSD cone",
        kind: CaseKind::Algebraic,
        sense: Sense::AtLeastZero,
        expected_failure: false,
        run: lemma31,
    },
    Case {
        id: "thm32",
        title: "joint concavity of (A,B) ↦ φ((B^{qs/2}K*A^{ps}KB^{qs/2})^{1/s})",
        kind: CaseKind::Algebraic,
        sense: Sense::AtLeastZero,
        expected_failure: false,
        run: thm32,
    },
    Case {
        id: "thm33",
        title: "joint concavity of (A_j) ↦ φ(exp(H + Σ p_j·log A_j))",
        kind: CaseKind::Algebraic,
        sense: Sense::AtLeastZero,
        expected_failure: false,
        run: thm33,
    },
    Case {
        id: "cor39",
        title: "concavity of the exponent-rescaled variants of the two joint maps",
        kind: CaseKind::Algebraic,
        sense: Sense::AtLeastZero,
        expected_failure: false,
        run: cor39,
    },
    Case {
        id: "cor310",
        title: "joint concavity of (A_j) ↦ φ((Σ_j K_j*A_j^{rs}K_j)^{1/s})",
        kind: CaseKind::Algebraic,
        sense: Sense::AtLeastZero,
        expected_failure: false,
        run: cor310,
    },
    Case {
        id: "lemma35-alt",
        title: "monotonicity in t of t ↦ trace_k[(B^{t/2}A^tB^{t/2})^{1/t}]",
        kind: CaseKind::Algebraic,
        sense: Sense::AtLeastZero,
        expected_failure: false,
        run: lemma35_alt,
    },
    Case {
        id: "lemma36-gt",
        title: "trace_k[exp(A+B)] ≤ trace_k[exp(A)·exp(B)], equality when [A,B] = 0",
        kind: CaseKind::Algebraic,
        sense: Sense::AtLeastZero,
        expected_failure: false,
        run: lemma36_gt,
    },
    Case {
        id: "lemma37-pb",
        title: "convexity of A ↦ log trace_k[exp(A)] on Hermitian matrices",
        kind: CaseKind::Algebraic,
        sense: Sense::AtLeastZero,
        expected_failure: false,
        run: lemma37_pb,
    },
    Case {
        id: "lemma43-diag",
        title: "pinching bound φ(A) ≤ φ(diag(A)) on the PSD cone",
        kind: CaseKind::Algebraic,
        sense: Sense::AtLeastZero,
        expected_failure: false,
        run: lemma43_diag,
    },
    Case {
        id: "thm44-preserve",
        title: "monotone scalar functions preserve φ-order; concave ones preserve concavity",
        kind: CaseKind::Algebraic,
        sense: Sense::AtLeastZero,
        expected_failure: false,
        run: thm44_preserve,
    },
    Case {
        id: "sec22-bounds",
        title: "Σ top-k λ ≤ log trace_k[exp A] ≤ Σ top-k λ + log C(n,k), and the mirrored chain",
        kind: CaseKind::Algebraic,
        sense: Sense::AtLeastZero,
        expected_failure: false,
        run: sec22_bounds,
    },
    Case {
        id: "appC-lowner",
        title: "operator concavity of A ↦ A^r for r ∈ (0, 1]",
        kind: CaseKind::Algebraic,
        sense: Sense::AtLeastZero,
        expected_failure: false,
        run: appc_lowner,
    },
    Case {
        id: "appD-homog",
        title: "concavity of φ along affine PSD lines persists under the square root",
        kind: CaseKind::Algebraic,
        sense: Sense::AtLeastZero,
        expected_failure: false,
        run: appd_homog,
    },
    Case {
        id: "lemma34-sh",
        title: "strip interpolation bound and its Jensen forms on chain families",
        kind: CaseKind::Quadrature,
        sense: Sense::AtLeastZero,
        expected_failure: false,
        run: lemma34_sh,
    },
    Case {
        id: "lemma41-sbt",
        title: "log φ(|ΠA_j^r|^{p/r}) ≤ ∫β_r(t)·log φ(|ΠA_j^{1+it}|^p) dt",
        kind: CaseKind::Quadrature,
        sense: Sense::AtLeastZero,
        expected_failure: false,
        run: lemma41_sbt,
    },
    Case {
        id: "thm42-mgt",
        title: "multivariate Golden–Thompson bound with the β₀ weight",
        kind: CaseKind::Quadrature,
        sense: Sense::AtLeastZero,
        expected_failure: false,
        run: thm42_mgt,
    },
    Case {
        id: "sec41-3mgt",
        title: "three-matrix Golden–Thompson bound through the kernel operator",
        kind: CaseKind::Quadrature,
        sense: Sense::AtLeastZero,
        expected_failure: false,
        run: sec41_3mgt,
    },
    Case {
        id: "oracle-ktrace",
        title: "three-way trace_k agreement: spectral, minor-sum, compound-trace",
        kind: CaseKind::Algebraic,
        sense: Sense::Zero,
        expected_failure: false,
        run: oracle_ktrace,
    },
    Case {
        id: "lemmaB1",
        title: "compound(exp A) = exp(additive compound of A)",
        kind: CaseKind::Algebraic,
        sense: Sense::Zero,
        expected_failure: false,
        run: lemma_b1,
    },
    Case {
        id: "af",
        title: "Alexandrov–Fenchel gap D(A,B,·)² − D(A,A,·)·D(B,B,·) ≥ 0",
        kind: CaseKind::Algebraic,
        sense: Sense::AtLeastZero,
        expected_failure: false,
        run: af,
    },
    Case {
        id: "bm",
        title: "Brunn–Minkowski concavity of A ↦ D(A×k, rest)^{1/k}",
        kind: CaseKind::Algebraic,
        sense: Sense::AtLeastZero,
        expected_failure: false,
        run: bm,
    },
    Case {
        id: "eq36",
        title: "trace_k[A] = C(n,k)·D(A×k, I×(n−k))",
        kind: CaseKind::Algebraic,
        sense: Sense::Zero,
        expected_failure: false,
        run: eq36,
    },
    Case {
        id: "anti-gt",
        title: "deliberately false reversal of the Golden–Thompson inequality",
        kind: CaseKind::Algebraic,
        sense: Sense::AtLeastZero,
        expected_failure: true,
        run: anti_gt,
    },
];

/// Push an identity defect as a ± pair, so a nonnegativity-judged case fails
/// whenever |defect| exceeds tolerance.
fn push_identity(out: &mut Vec<Gap>, gap: Gap) {
    out.push(gap);
    out.push(Gap {
        value: -gap.value,
        ..gap
    });
}

fn prop1_holder(cfg: &TrialConfig, _trial: u64, rng: &mut TrialRng) -> Result<Vec<Gap>> {
    let n = cfg.n;
    let k = cfg.k;
    let a = rng.ginibre(n, n);
    let b = rng.ginibre(n, n);
    let lhs = trace_k_general(&a.mul(&b), k)?.norm();
    let mut gaps = Vec::new();
    for (p, q) in [(1.0, f64::INFINITY), (2.0, 2.0), (3.0, 1.5)] {
        let rhs = holder_factor(&a, p, k)? * holder_factor(&b, q, k)?;
        gaps.push(Gap::of_terms(rhs - lhs, &[rhs, lhs]));
    }
    Ok(gaps)
}

fn lemma31(cfg: &TrialConfig, _trial: u64, rng: &mut TrialRng) -> Result<Vec<Gap>> {
    let n = cfg.n;
    let k = cfg.k;
    let kmat = rng.contraction(n, n)?;
    let x1 = rng.pd(n, cfg.cond_cap)?;
    let x2 = rng.pd(n, cfg.cond_cap)?;
    let mut gaps = Vec::new();
    for s in [0.3, 0.7, 1.0] {
        for r in [0.3, 0.7, 1.0] {
            let f = |a: &HermitianMatrix| -> Result<f64> {
                let inner = matrix_power(a, r * s)?.congruence(&kmat)?;
                phi(&matrix_power(&inner, 1.0 / s)?, k)
            };
            for &tau in &cfg.tau_grid {
                gaps.push(midpoint_concavity_gap(f, &x1, &x2, tau)?);
            }
        }
    }
    Ok(gaps)
}

fn thm32(cfg: &TrialConfig, _trial: u64, rng: &mut TrialRng) -> Result<Vec<Gap>> {
    let n = cfg.n;
    let m = cfg.m.unwrap_or(n);
    let k = cfg.k.min(m);
    let kmat = rng.contraction(n, m)?;
    let a1 = rng.pd(n, cfg.cond_cap)?;
    let b1 = rng.pd(m, cfg.cond_cap)?;
    let a2 = rng.pd(n, cfg.cond_cap)?;
    let b2 = rng.pd(m, cfg.cond_cap)?;
    let mut gaps = Vec::new();
    for (s, p, q) in [(1.0, 0.5, 0.5), (0.5, 0.3, 0.4), (0.7, 0.2, 0.8)] {
        let f = |a: &HermitianMatrix, b: &HermitianMatrix| -> Result<f64> {
            let inner = matrix_power(a, p * s)?.congruence(&kmat)?;
            let bq = matrix_power(b, q * s / 2.0)?;
            let full = inner.congruence(bq.as_matrix())?;
            phi(&matrix_power(&full, 1.0 / s)?, k)
        };
        for &tau in &cfg.tau_grid {
            gaps.push(midpoint_joint_concavity_gap(f, (&a1, &b1), (&a2, &b2), tau)?);
        }
    }
    Ok(gaps)
}

fn thm33(cfg: &TrialConfig, _trial: u64, rng: &mut TrialRng) -> Result<Vec<Gap>> {
    let n = cfg.n;
    let k = cfg.k;
    let mut gaps = Vec::new();
    for m_count in 1..=3usize {
        let h = rng.bounded_hermitian(n, 1.0);
        let raw: Vec<f64> = (0..m_count).map(|_| rng.uniform(0.1, 1.0)).collect();
        let total: f64 = raw.iter().sum();
        let ps: Vec<f64> = raw.iter().map(|u| 0.9 * u / total).collect();
        let xs1: Vec<HermitianMatrix> = (0..m_count)
            .map(|_| rng.pd(n, cfg.cond_cap))
            .collect::<Result<_>>()?;
        let xs2: Vec<HermitianMatrix> = (0..m_count)
            .map(|_| rng.pd(n, cfg.cond_cap))
            .collect::<Result<_>>()?;
        let f = |xs: &[HermitianMatrix]| -> Result<f64> {
            let mut expo = h.clone();
            for (x, &pj) in xs.iter().zip(&ps) {
                expo = expo.add(&matrix_log(x)?.scale(pj));
            }
            phi(&matrix_exp(&expo)?, k)
        };
        for &tau in &cfg.tau_grid {
            gaps.push(midpoint_concavity_gap_multi(&f, &xs1, &xs2, tau)?);
        }
    }
    Ok(gaps)
}

fn cor39(cfg: &TrialConfig, _trial: u64, rng: &mut TrialRng) -> Result<Vec<Gap>> {
    let n = cfg.n;
    let k = cfg.k;
    // The 1/(p+q) rescaling amplifies relative rounding error by up to
    // 1/(p+q); keep the sum away from 0 and the inputs well-conditioned so
    // the k = n determinant regime stays inside the algebraic tolerance.
    let cond = cfg.cond_cap.min(100.0);
    let kmat = rng.contraction_in(n, n, 0.3, 1.0)?;
    let p = rng.uniform(0.2, 0.6);
    let q = rng.uniform(0.2, (0.9 - p).min(0.6));
    let s = rng.unit_interior();
    let h = rng.bounded_hermitian(n, 1.0);
    let a1 = rng.pd(n, cond)?;
    let b1 = rng.pd(n, cond)?;
    let a2 = rng.pd(n, cond)?;
    let b2 = rng.pd(n, cond)?;
    // Rescaled two-slot power map: φ(...)^{1/(p+q)}.
    let f_power = |a: &HermitianMatrix, b: &HermitianMatrix| -> Result<f64> {
        let inner = matrix_power(a, p * s)?.congruence(&kmat)?;
        let bq = matrix_power(b, q * s / 2.0)?;
        let full = inner.congruence(bq.as_matrix())?;
        Ok(phi(&matrix_power(&full, 1.0 / s)?, k)?.powf(1.0 / (p + q)))
    };
    // Rescaled exponential map: φ(exp(H + p·log A + q·log B))^{1/(p+q)}.
    let f_exp = |xs: &[HermitianMatrix]| -> Result<f64> {
        let expo = h
            .add(&matrix_log(&xs[0])?.scale(p))
            .add(&matrix_log(&xs[1])?.scale(q));
        Ok(phi(&matrix_exp(&expo)?, k)?.powf(1.0 / (p + q)))
    };
    let xs1 = vec![a1.clone(), b1.clone()];
    let xs2 = vec![a2.clone(), b2.clone()];
    let mut gaps = Vec::new();
    for &tau in &cfg.tau_grid {
        gaps.push(midpoint_joint_concavity_gap(
            f_power,
            (&a1, &b1),
            (&a2, &b2),
            tau,
        )?);
        gaps.push(midpoint_concavity_gap_multi(&f_exp, &xs1, &xs2, tau)?);
    }
    Ok(gaps)
}

fn cor310(cfg: &TrialConfig, _trial: u64, rng: &mut TrialRng) -> Result<Vec<Gap>> {
    let n = cfg.n;
    let k = cfg.k;
    let m_count = cfg.m.unwrap_or(3).clamp(1, 4);
    let r = rng.unit_interior();
    let s = rng.unit_interior();
    let kmats: Vec<crate::Matrix> = (0..m_count)
        .map(|_| rng.contraction(n, n))
        .collect::<Result<_>>()?;
    let xs1: Vec<HermitianMatrix> = (0..m_count)
        .map(|_| rng.pd(n, cfg.cond_cap))
        .collect::<Result<_>>()?;
    let xs2: Vec<HermitianMatrix> = (0..m_count)
        .map(|_| rng.pd(n, cfg.cond_cap))
        .collect::<Result<_>>()?;
    let f = |xs: &[HermitianMatrix]| -> Result<f64> {
        let mut acc = HermitianMatrix::zeros(n);
        for (x, kj) in xs.iter().zip(&kmats) {
            acc = acc.add(&matrix_power(x, r * s)?.congruence(kj)?);
        }
        phi(&matrix_power(&acc, 1.0 / s)?, k)
    };
    let mut gaps = Vec::new();
    for &tau in &cfg.tau_grid {
        gaps.push(midpoint_concavity_gap_multi(&f, &xs1, &xs2, tau)?);
    }
    Ok(gaps)
}

fn lemma35_alt(cfg: &TrialConfig, _trial: u64, rng: &mut TrialRng) -> Result<Vec<Gap>> {
    let n = cfg.n;
    let k = cfg.k;
    // The grid reaches t = 4; fourth powers of the condition number must
    // stay well inside f64 range and eigensolver accuracy.
    let cond = cfg.cond_cap.min(10.0);
    let a = rng.pd(n, cond)?;
    let b = rng.pd(n, cond)?;
    let g = |t: f64| -> Result<f64> {
        let at = matrix_power(&a, t)?;
        let bt2 = matrix_power(&b, t / 2.0)?;
        let prod = at.congruence(bt2.as_matrix())?;
        trace_k(&matrix_power(&prod, 1.0 / t)?, k)
    };
    let grid = [0.25, 0.5, 1.0, 2.0, 4.0];
    let mut vals = Vec::with_capacity(grid.len());
    for t in grid {
        vals.push(g(t)?);
    }
    Ok(vals
        .windows(2)
        .map(|w| Gap::of_terms(w[1] - w[0], &[w[0], w[1]]))
        .collect())
}

fn lemma36_gt(cfg: &TrialConfig, _trial: u64, rng: &mut TrialRng) -> Result<Vec<Gap>> {
    let n = cfg.n;
    let k = cfg.k;
    let gt_pair = |a: &HermitianMatrix, b: &HermitianMatrix| -> Result<(f64, f64)> {
        let lhs = trace_k(&matrix_exp(&a.add(b))?, k)?;
        let sym = matrix_exp(a)?.congruence(matrix_exp(&b.scale(0.5))?.as_matrix())?;
        let rhs = trace_k(&sym, k)?;
        Ok((lhs, rhs))
    };
    let a = rng.bounded_hermitian(n, 2.0);
    let b = rng.bounded_hermitian(n, 2.0);
    let (lhs, rhs) = gt_pair(&a, &b)?;
    let mut gaps = vec![Gap::of_terms(rhs - lhs, &[lhs, rhs])];
    // Commuting pairs attain equality.
    let (ca, cb) = rng.commuting_pair(n, -1.5, 1.5)?;
    let (cl, cr) = gt_pair(&ca, &cb)?;
    push_identity(&mut gaps, Gap::of_terms(cr - cl, &[cl, cr]));
    Ok(gaps)
}

fn lemma37_pb(cfg: &TrialConfig, _trial: u64, rng: &mut TrialRng) -> Result<Vec<Gap>> {
    let n = cfg.n;
    let k = cfg.k;
    let x1 = rng.bounded_hermitian(n, 3.0);
    let x2 = rng.bounded_hermitian(n, 3.0);
    let f = |a: &HermitianMatrix| -> Result<f64> { Ok(trace_k(&matrix_exp(a)?, k)?.ln()) };
    let mut gaps = Vec::new();
    for &tau in &cfg.tau_grid {
        // Convexity: flip the sign of the concavity defect.
        let g = midpoint_concavity_gap(f, &x1, &x2, tau)?;
        gaps.push(Gap {
            value: -g.value,
            ..g
        });
    }
    Ok(gaps)
}

fn lemma43_diag(cfg: &TrialConfig, _trial: u64, rng: &mut TrialRng) -> Result<Vec<Gap>> {
    let a = rng.psd(cfg.n);
    let lhs = phi(&a, cfg.k)?;
    let rhs = phi(&a.diag_part(), cfg.k)?;
    Ok(vec![Gap::of_terms(rhs - lhs, &[lhs, rhs])])
}

fn thm44_preserve(cfg: &TrialConfig, _trial: u64, rng: &mut TrialRng) -> Result<Vec<Gap>> {
    let n = cfg.n;
    let k = cfg.k;
    let c = rng.uniform(0.5, 2.0);
    let scalar = |idx: usize, x: f64| -> f64 {
        match idx {
            0 => x,
            1 => x.min(c),
            2 => (1.0 + x.exp()).ln(),
            _ => x.max(0.0).sqrt(),
        }
    };
    let mut gaps = Vec::new();
    // Monotone functions preserve the φ-order on Löwner-ordered pairs.
    let a = rng.psd(n);
    let bigger = a.add(&rng.psd(n));
    for idx in 0..4 {
        let fa = phi(&matrix_function(&a, |x| scalar(idx, x))?, k)?;
        let fb = phi(&matrix_function(&bigger, |x| scalar(idx, x))?, k)?;
        gaps.push(Gap::of_terms(fb - fa, &[fa, fb]));
    }
    // Concave functions (identity, capped identity, square root) give a
    // midpoint-concave φ∘f; the softplus is convex and is excluded.
    let x1 = rng.psd(n);
    let x2 = rng.psd(n);
    for idx in [0usize, 1, 3] {
        let f = |m: &HermitianMatrix| -> Result<f64> {
            phi(&matrix_function(m, |x| scalar(idx, x))?, k)
        };
        for &tau in &cfg.tau_grid {
            gaps.push(midpoint_concavity_gap(f, &x1, &x2, tau)?);
        }
    }
    Ok(gaps)
}

fn sec22_bounds(cfg: &TrialConfig, _trial: u64, rng: &mut TrialRng) -> Result<Vec<Gap>> {
    let n = cfg.n;
    let k = cfg.k;
    let a = rng.bounded_hermitian(n, 5.0);
    let e = eigh(&a)?;
    let top: f64 = e.eigenvalues.iter().take(k).sum();
    let bottom: f64 = e.eigenvalues.iter().rev().take(k).sum();
    let log_binom = (comb::binomial(n, k) as f64).ln();
    let log_upper = trace_k(&matrix_exp(&a)?, k)?.ln();
    let log_lower = trace_k(&matrix_exp(&a.neg())?, k)?.ln();
    Ok(vec![
        Gap::of_terms(log_upper - top, &[top, log_upper]),
        Gap::of_terms(top + log_binom - log_upper, &[top, log_upper, log_binom]),
        Gap::of_terms(log_lower + bottom, &[bottom, log_lower]),
        Gap::of_terms(-bottom + log_binom - log_lower, &[bottom, log_lower, log_binom]),
    ])
}

fn appc_lowner(cfg: &TrialConfig, _trial: u64, rng: &mut TrialRng) -> Result<Vec<Gap>> {
    let n = cfg.n;
    let x1 = rng.psd(n);
    let x2 = rng.psd(n);
    let mut gaps = Vec::new();
    for r in [0.25, 0.5, 0.75, 1.0] {
        let p1 = matrix_power(&x1, r)?;
        let p2 = matrix_power(&x2, r)?;
        let scale1 = herm_op_norm(&p1)?;
        let scale2 = herm_op_norm(&p2)?;
        for &tau in &cfg.tau_grid {
            let mid = matrix_power(&x1.convex_with(&x2, tau), r)?;
            let combo = p1.linear_combination(tau, &p2, 1.0 - tau);
            let diff = mid.linear_combination(1.0, &combo, -1.0);
            let lambda_min = eigh(&diff)?.lambda_min();
            gaps.push(Gap::of_terms(lambda_min, &[scale1, scale2]).at_tau(tau));
        }
    }
    Ok(gaps)
}

fn appd_homog(cfg: &TrialConfig, _trial: u64, rng: &mut TrialRng) -> Result<Vec<Gap>> {
    let n = cfg.n;
    let k = cfg.k;
    let a = rng.psd(n);
    let b = rng.psd(n);
    let f = |u: f64| -> Result<f64> { phi(&a.linear_combination(1.0, &b, u), k) };
    let u1 = rng.uniform(0.0, 2.0);
    let u2 = rng.uniform(0.0, 2.0);
    let f1 = f(u1)?;
    let f2 = f(u2)?;
    let mut gaps = Vec::new();
    for &tau in &cfg.tau_grid {
        let fm = f(tau * u1 + (1.0 - tau) * u2)?;
        // φ restricted to an affine PSD line is concave...
        gaps.push(Gap::of_terms(fm - tau * f1 - (1.0 - tau) * f2, &[fm, f1, f2]).at_tau(tau));
        // ...and stays concave under the square root (order-1 homogeneity).
        let (g1, g2, gm) = (f1.sqrt(), f2.sqrt(), fm.sqrt());
        gaps.push(Gap::of_terms(gm - tau * g1 - (1.0 - tau) * g2, &[gm, g1, g2]).at_tau(tau));
    }
    Ok(gaps)
}

fn lemma34_sh(cfg: &TrialConfig, _trial: u64, rng: &mut TrialRng) -> Result<Vec<Gap>> {
    let n = cfg.n;
    let k = cfg.k;
    let cond = cfg.cond_cap.min(50.0);
    let rule = QuadratureRule::standard();
    let mut gaps = Vec::new();

    let x = rng.pd(n, cond)?;
    let anchor = rng.pd(n, cond)?;
    let kmat = rng.contraction_in(n, n, 0.3, 1.0)?;
    let r = rng.unit_interior();
    let s = rng.unit_interior();
    let sandwich = SandwichChainFamily::new(&x, &anchor, &kmat, r, s)?;
    gaps.push(stein_hirschman_gap(&sandwich, k, &rule)?);
    let (strip, direct) = sandwich.interior_identity(k)?;
    push_identity(&mut gaps, Gap::of_terms(strip - direct, &[strip, direct]));

    let x2 = rng.pd(n, cond)?;
    let anchor2 = rng.pd(n, cond)?;
    let kmat2 = rng.contraction_in(n, n, 0.3, 1.0)?;
    let (p, q) = rng.split_exponents();
    let s2 = rng.unit_interior();
    let two_sided = TwoSidedChainFamily::new(&x2, &anchor2, &kmat2, p, q, s2)?;
    gaps.push(stein_hirschman_gap(&two_sided, k, &rule)?);
    gaps.push(jensen_log_gap(&two_sided, k, &rule)?);
    gaps.push(jensen_linear_gap(&two_sided, k, &rule)?);
    let (strip2, direct2) = two_sided.interior_identity(k)?;
    push_identity(&mut gaps, Gap::of_terms(strip2 - direct2, &[strip2, direct2]));
    Ok(gaps)
}

fn lemma41_sbt(cfg: &TrialConfig, trial: u64, rng: &mut TrialRng) -> Result<Vec<Gap>> {
    let n = cfg.n;
    let k = cfg.k;
    let cond = cfg.cond_cap.min(100.0);
    let rule = QuadratureRule::standard();
    let m_count = 2 + (trial % 2) as usize;
    let mats: Vec<HermitianMatrix> = (0..m_count)
        .map(|_| rng.pd(n, cond))
        .collect::<Result<_>>()?;
    let refs: Vec<&HermitianMatrix> = mats.iter().collect();
    let r = rng.unit_interior();
    let p = rng.uniform(1.0, 3.0);
    let mut gaps = vec![sbt_gap(&refs, r, p, k, &rule)?];
    // One factor: both sides coincide and the gap is pure quadrature error.
    push_identity(&mut gaps, sbt_gap(&refs[..1], r, p, k, &rule)?);
    // r = 1 is the Dirac boundary: the point evaluation makes the gap
    // exactly zero.
    push_identity(&mut gaps, sbt_gap(&refs, 1.0, p, k, &rule)?);
    Ok(gaps)
}

fn thm42_mgt(cfg: &TrialConfig, trial: u64, rng: &mut TrialRng) -> Result<Vec<Gap>> {
    let n = cfg.n;
    let k = cfg.k;
    let rule = QuadratureRule::standard();
    let m_count = 2 + (trial % 2) as usize;
    let mats: Vec<HermitianMatrix> = (0..m_count)
        .map(|_| rng.bounded_hermitian(n, 2.0))
        .collect();
    let refs: Vec<&HermitianMatrix> = mats.iter().collect();
    let p = rng.uniform(1.0, 2.5);
    let mut gaps = vec![multivariate_gt_gap(&refs, p, k, &rule)?];
    // Commuting families attain equality.
    let (ca, cb) = rng.commuting_pair(n, -1.0, 1.0)?;
    push_identity(&mut gaps, multivariate_gt_gap(&[&ca, &cb], p, k, &rule)?);
    Ok(gaps)
}

fn sec41_3mgt(cfg: &TrialConfig, _trial: u64, rng: &mut TrialRng) -> Result<Vec<Gap>> {
    let n = cfg.n;
    let k = cfg.k;
    let a = rng.bounded_hermitian(n, 1.5);
    let b = rng.bounded_hermitian(n, 1.5);
    let c = rng.bounded_hermitian(n, 1.5);
    Ok(vec![three_matrix_gt_gap(&a, &b, &c, k)?])
}

fn oracle_ktrace(cfg: &TrialConfig, _trial: u64, rng: &mut TrialRng) -> Result<Vec<Gap>> {
    let n = cfg.n.min(6);
    let a = rng.hermitian(n);
    let mut gaps = Vec::new();
    for k in 1..=n {
        let spectral = trace_k(&a, k)?;
        let minors = trace_k_minors(&a, k)?;
        let compound_trace = trace_k_general(a.as_matrix(), k)?;
        gaps.push(Gap::of_terms(minors - spectral, &[spectral, minors]));
        gaps.push(Gap::of_terms(
            compound_trace.re - spectral,
            &[spectral, compound_trace.re],
        ));
        gaps.push(Gap::of_terms(compound_trace.im, &[spectral]));
    }
    Ok(gaps)
}

fn lemma_b1(cfg: &TrialConfig, _trial: u64, rng: &mut TrialRng) -> Result<Vec<Gap>> {
    let n = cfg.n.min(5);
    let k = cfg.k.min(n);
    let a = rng.bounded_hermitian(n, 2.0);
    let lhs = compound(matrix_exp(&a)?.as_matrix(), k)?;
    let additive = additive_compound(a.as_matrix(), k)?;
    let additive_h = HermitianMatrix::new(additive.matrix())?;
    let rhs = matrix_exp(&additive_h)?;
    let defect = lhs.matrix().sub(rhs.as_matrix()).max_abs();
    let scale = lhs.matrix().max_abs().max(rhs.as_matrix().max_abs());
    Ok(vec![Gap::of_terms(defect, &[scale])])
}

fn af(cfg: &TrialConfig, _trial: u64, rng: &mut TrialRng) -> Result<Vec<Gap>> {
    let n = cfg.n.min(4).max(2);
    let a = rng.psd(n);
    let b = rng.psd(n);
    let rest: Vec<HermitianMatrix> = (0..n - 2)
        .map(|_| rng.pd(n, cfg.cond_cap.min(100.0)))
        .collect::<Result<_>>()?;
    let rest_refs: Vec<&HermitianMatrix> = rest.iter().collect();
    Ok(vec![alexandrov_fenchel_gap(&a, &b, &rest_refs)?])
}

fn bm(cfg: &TrialConfig, _trial: u64, rng: &mut TrialRng) -> Result<Vec<Gap>> {
    let n = cfg.n.min(4);
    let k = cfg.k.min(n);
    let rest: Vec<HermitianMatrix> = (0..n - k)
        .map(|_| rng.pd(n, cfg.cond_cap.min(100.0)))
        .collect::<Result<_>>()?;
    let x1 = rng.psd(n);
    let x2 = rng.psd(n);
    let f = |a: &HermitianMatrix| -> Result<f64> {
        let mut slots: Vec<&HermitianMatrix> = Vec::with_capacity(n);
        for _ in 0..k {
            slots.push(a);
        }
        for fixed in &rest {
            slots.push(fixed);
        }
        // D ≥ 0 on these inputs; clip roundoff-negative values before the
        // fractional power.
        Ok(mixed_discriminant(&slots)?.max(0.0).powf(1.0 / k as f64))
    };
    let mut gaps = Vec::new();
    for &tau in &cfg.tau_grid {
        gaps.push(midpoint_concavity_gap(f, &x1, &x2, tau)?);
    }
    Ok(gaps)
}

fn eq36(cfg: &TrialConfig, _trial: u64, rng: &mut TrialRng) -> Result<Vec<Gap>> {
    let n = cfg.n.min(6);
    let a = rng.hermitian(n);
    let mut gaps = Vec::new();
    for k in 1..=n {
        let via_mixed = trace_k_from_mixed(&a, k)?;
        let direct = trace_k(&a, k)?;
        gaps.push(Gap::of_terms(via_mixed - direct, &[direct, via_mixed]));
    }
    Ok(gaps)
}

fn anti_gt(cfg: &TrialConfig, _trial: u64, rng: &mut TrialRng) -> Result<Vec<Gap>> {
    let n = cfg.n;
    let k = cfg.k;
    let a = rng.bounded_hermitian(n, 2.0);
    let b = rng.bounded_hermitian(n, 2.0);
    let product_side = trace_k(
        &matrix_exp(&a)?.congruence(matrix_exp(&b.scale(0.5))?.as_matrix())?,
        k,
    )?;
    let sum_side = trace_k(&matrix_exp(&a.add(&b))?, k)?;
    // Claims trace_k[exp(A)exp(B)] ≤ trace_k[exp(A+B)] — false in general.
    Ok(vec![Gap::of_terms(
        sum_side - product_side,
        &[product_side, sum_side],
    )])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::{run_case, Status};

    fn quick_cfg() -> TrialConfig {
        TrialConfig {
            n: 3,
            k: 2,
            trials: 4,
            tau_grid: vec![0.3, 0.7],
            ..TrialConfig::default()
        }
    }

    #[test]
    fn every_regular_case_passes_a_smoke_run() {
        let cfg = quick_cfg();
        for case in super::REGISTRY {
            if case.expected_failure {
                continue;
            }
            let report = run_case(case, &cfg).unwrap();
            assert_eq!(
                report.status,
                Status::Passed,
                "case {} failed: worst {} (tol {}), failures {:?}",
                case.id,
                report.worst_gap,
                report.tolerance,
                report.failures
            );
        }
    }

    #[test]
    fn anti_gt_is_falsified_quickly() {
        let case = crate::verify::find_case("anti-gt").unwrap();
        let cfg = TrialConfig {
            n: 3,
            k: 2,
            trials: 100,
            ..TrialConfig::default()
        };
        let report = run_case(case, &cfg).unwrap();
        assert_eq!(report.status, Status::Failed);
        assert!(!report.failures.is_empty());
        assert!(report.worst_gap < -report.tolerance);
    }
}
