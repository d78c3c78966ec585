//! Power moments `s_n = int lambda^n dmu`, Hankel positivity, the Carleman
//! series and growth-class diagnostics for the cyclic vector.
//!
//! Moments are stored as `(sign, ln|s_n|)` so that closed-form sequences of
//! very high order (the Gaussian up to order `2 * 10^4`, say) stay
//! representable.

use nalgebra::{DMatrix, SymmetricEigen};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::measure::{Density, SpectralMeasure};
use crate::numeric::{linear_fit, log_sum_exp, pairwise_sum};
use crate::space::DiscretizedSpace;

/// Slack used when re-checking log-convexity of computed even moments.
const LOG_CONVEXITY_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MomentSequence {
    /// `ln|s_n|`, `-inf` for vanishing moments.
    log_abs: Vec<f64>,
    sign: Vec<i8>,
    /// Set when the requested order exceeds the polynomial exactness of the
    /// quadrature the moments were computed from.
    pub exactness_warning: bool,
    pub origin: MomentOrigin,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MomentOrigin {
    Quadrature,
    ClosedForm,
    Raw,
}

impl MomentSequence {
    /// Wraps raw values without checking any moment-sequence invariant.
    pub fn from_values(values: &[f64]) -> Self {
        MomentSequence {
            log_abs: values.iter().map(|v| v.abs().ln()).collect(),
            sign: values.iter().map(|v| sign_of(*v)).collect(),
            exactness_warning: false,
            origin: MomentOrigin::Raw,
        }
    }

    /// Highest order `N`.
    pub fn order(&self) -> usize {
        self.log_abs.len() - 1
    }

    pub fn len(&self) -> usize {
        self.log_abs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.log_abs.is_empty()
    }

    /// `s_n`; may be infinite for closed-form sequences beyond `f64` range.
    pub fn get(&self, n: usize) -> f64 {
        self.sign[n] as f64 * self.log_abs[n].exp()
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.len()).map(|n| self.get(n)).collect()
    }

    pub fn log_abs(&self, n: usize) -> f64 {
        self.log_abs[n]
    }

    pub fn sign(&self, n: usize) -> i8 {
        self.sign[n]
    }

    /// Checks `s_0 > 0`, `s_2n >= 0` and log-convexity of the even moments.
    pub fn check_invariants(&self) -> Result<()> {
        if self.sign[0] <= 0 {
            return Err(Error::Degeneration("s_0 must be positive".into()));
        }
        for n in (0..self.len()).step_by(2) {
            if self.sign[n] < 0 {
                return Err(Error::Degeneration(format!("even moment s_{n} is negative")));
            }
        }
        for n in (2..self.len().saturating_sub(2)).step_by(2) {
            let (a, b, c) = (self.log_abs[n - 2], self.log_abs[n], self.log_abs[n + 2]);
            if b.is_finite() && 2.0 * b > a + c + LOG_CONVEXITY_SLACK * (1.0 + b.abs()) {
                return Err(Error::Degeneration(format!("even moments are not log-convex at order {n}")));
            }
        }
        Ok(())
    }
}

fn sign_of(v: f64) -> i8 {
    if v > 0.0 {
        1
    } else if v < 0.0 {
        -1
    } else {
        0
    }
}

/// `s_n = sum_i w_i lambda_i^n` for `n = 0..=order`.
pub fn compute_moments(space: &DiscretizedSpace, order: usize) -> Result<MomentSequence> {
    let mut powers = space.weights().to_vec();
    let mut log_abs = Vec::with_capacity(order + 1);
    let mut sign = Vec::with_capacity(order + 1);
    for n in 0..=order {
        if n > 0 {
            for (p, x) in powers.iter_mut().zip(space.nodes()) {
                *p *= x;
            }
        }
        let s = pairwise_sum(&powers);
        if !s.is_finite() || powers.iter().any(|p| !p.is_finite()) {
            return Err(Error::MomentOverflow(n));
        }
        log_abs.push(s.abs().ln());
        sign.push(sign_of(s));
    }
    let exactness_warning = space.exactness_degree().is_none_or(|d| order > d);
    let seq = MomentSequence { log_abs, sign, exactness_warning, origin: MomentOrigin::Quadrature };
    seq.check_invariants()?;
    Ok(seq)
}

/// Moments from closed forms, in log domain. Supported: atoms, uniform
/// parts, centred whole-line Gaussians and log-normals on `(0, inf)`.
pub fn closed_form_moments(mu: &SpectralMeasure, order: usize) -> Result<MomentSequence> {
    let mut log_abs = Vec::with_capacity(order + 1);
    let mut sign = Vec::with_capacity(order + 1);
    // ln((2k-1)!!), filled on demand
    let mut ln_dfact = vec![0.0];
    for n in 0..=order {
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        let mut push = |s: i8, l: f64| match s {
            1 => pos.push(l),
            -1 => neg.push(l),
            _ => {}
        };
        for a in mu.atoms() {
            if n == 0 {
                push(1, a.w.ln());
            } else if a.x != 0.0 {
                push(odd_sign(a.x, n), a.w.ln() + n as f64 * a.x.abs().ln());
            }
        }
        for p in mu.parts() {
            let (lo, hi) = (p.support.lo, p.support.hi);
            match &p.density {
                Density::Uniform { level } => {
                    // level * (hi^{n+1} - lo^{n+1}) / (n+1)
                    let k = (n + 1) as f64;
                    let base = level.ln() - k.ln();
                    if hi != 0.0 {
                        push(odd_sign(hi, n + 1), base + k * hi.abs().ln());
                    }
                    if lo != 0.0 {
                        push(-odd_sign(lo, n + 1), base + k * lo.abs().ln());
                    }
                }
                Density::Gaussian { mean, std, mass } if *mean == 0.0 && !lo.is_finite() && !hi.is_finite() => {
                    if n % 2 == 0 {
                        let k = n / 2;
                        while ln_dfact.len() <= k {
                            let j = ln_dfact.len();
                            let next = ln_dfact[j - 1] + ((2 * j - 1) as f64).ln();
                            ln_dfact.push(next);
                        }
                        push(1, mass.ln() + n as f64 * std.ln() + ln_dfact[k]);
                    }
                }
                Density::Lognormal { mu: m, sigma, mass } if lo <= 0.0 && !hi.is_finite() => {
                    let nf = n as f64;
                    push(1, mass.ln() + nf * m + 0.5 * nf * nf * sigma * sigma);
                }
                _ => {
                    return Err(Error::NoClosedForm(format!(
                        "{:?} part on [{lo}, {hi}] has no closed-form moments",
                        p.kind
                    )))
                }
            }
        }
        let lp = log_sum_exp(&pos);
        let ln = log_sum_exp(&neg);
        let (s, l) = if lp > ln {
            (1, lp + (-(ln - lp).exp()).ln_1p())
        } else if ln > lp {
            (-1, ln + (-(lp - ln).exp()).ln_1p())
        } else {
            (0, f64::NEG_INFINITY)
        };
        sign.push(if l == f64::NEG_INFINITY { 0 } else { s });
        log_abs.push(l);
    }
    let seq = MomentSequence { log_abs, sign, exactness_warning: false, origin: MomentOrigin::ClosedForm };
    seq.check_invariants()?;
    Ok(seq)
}

/// Sign of `x^k`.
fn odd_sign(x: f64, k: usize) -> i8 {
    if x < 0.0 && k % 2 == 1 {
        -1
    } else {
        1
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HankelReport {
    /// Smallest eigenvalue of the scaled `H_k` for `k = 1, 2, ...`.
    pub min_eigenvalues: Vec<f64>,
    /// Spectral norm of each scaled `H_k`.
    pub norms: Vec<f64>,
    pub is_moment_sequence: bool,
    pub first_failure_size: Option<usize>,
    pub tol: f64,
}

pub const DEFAULT_HANKEL_TOL: f64 = 1e-10;

/// Positive semidefiniteness of the Hankel matrices `H_k = [s_{i+j}]`,
/// `k = 1..=N/2+1`. Each `H_k` is first scaled to `D^{-1/2} H_k D^{-1/2}` with
/// `D = diag(|s_{2i}|)`, a congruence that preserves semidefiniteness; the
/// tolerance is relative to the norm of the scaled matrix. The scaling is
/// done in log domain, so large moments do not overflow.
pub fn hankel_psd_check(s: &MomentSequence, tol: f64) -> Result<HankelReport> {
    if s.order() < 2 {
        return Err(Error::InvalidArgument("Hankel check needs moments up to order 2".into()));
    }
    if let Some(n) = (0..=s.order()).find(|&n| s.log_abs(n).is_nan() || s.log_abs(n) == f64::INFINITY) {
        return Err(Error::MomentOverflow(n));
    }
    let half_log_diag: Vec<f64> = (0..=s.order() / 2)
        .map(|i| if s.sign(2 * i) == 0 { 0.0 } else { 0.5 * s.log_abs(2 * i) })
        .collect();
    let mut report =
        HankelReport { min_eigenvalues: Vec::new(), norms: Vec::new(), is_moment_sequence: true, first_failure_size: None, tol };
    for k in 1..=s.order() / 2 + 1 {
        let h = DMatrix::from_fn(k, k, |i, j| {
            s.sign(i + j) as f64 * (s.log_abs(i + j) - half_log_diag[i] - half_log_diag[j]).exp()
        });
        let eig = SymmetricEigen::new(h).eigenvalues;
        let min = eig.iter().cloned().fold(f64::INFINITY, f64::min);
        let norm = eig.iter().fold(0.0f64, |m, e| m.max(e.abs()));
        if min < -tol * norm && report.first_failure_size.is_none() {
            report.first_failure_size = Some(k);
            report.is_moment_sequence = false;
        }
        report.min_eigenvalues.push(min);
        report.norms.push(norm);
    }
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CarlemanVerdict {
    SatisfiedAtHorizon,
    ConvergentTail,
    FiniteSupportDeterminate,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CarlemanReport {
    /// `s_{2n}^{-1/(2n)}` for `n = 1..=m`.
    pub terms: Vec<f64>,
    pub partial_sums: Vec<f64>,
    /// Least-squares exponent of `terms ~ n^p` over the last half.
    pub power_exponent: f64,
    /// Geometric ratio of the terms over the last half.
    pub geometric_ratio: f64,
    /// Bound on the remaining tail when the terms decay geometrically.
    pub tail_bound: Option<f64>,
    pub verdict: CarlemanVerdict,
}

pub const DEFAULT_CARLEMAN_TOL: f64 = 1e-6;

/// Carleman series `sum_{n>=1} s_{2n}^{-1/(2n)}` with a trend verdict fitted
/// over the last half of the horizon.
pub fn carleman(s: &MomentSequence, tol: f64) -> CarlemanReport {
    let m = s.order() / 2;
    let finite_support = (1..=m).any(|n| s.sign(2 * n) == 0);
    let log_terms: Vec<f64> = (1..=m).map(|n| -s.log_abs(2 * n) / (2 * n) as f64).collect();
    let terms: Vec<f64> = log_terms.iter().map(|l| l.exp()).collect();
    let mut acc = 0.0;
    let partial_sums: Vec<f64> = terms
        .iter()
        .map(|t| {
            acc += t;
            acc
        })
        .collect();
    let (power_exponent, geometric_ratio) = tail_fits(&log_terms);
    let mut report = CarlemanReport {
        terms,
        partial_sums,
        power_exponent,
        geometric_ratio,
        tail_bound: None,
        verdict: CarlemanVerdict::Inconclusive,
    };
    if finite_support {
        report.verdict = CarlemanVerdict::FiniteSupportDeterminate;
        return report;
    }
    if m < 2 {
        return report;
    }
    if power_exponent >= -1.0 {
        report.verdict = CarlemanVerdict::SatisfiedAtHorizon;
    } else if geometric_ratio < 1.0 {
        let last = *report.terms.last().unwrap();
        let tail = last * geometric_ratio / (1.0 - geometric_ratio);
        report.tail_bound = Some(tail);
        if tail < tol {
            report.verdict = CarlemanVerdict::ConvergentTail;
        }
    }
    report
}

/// Fits over the last half of the log terms (indexed from `n = 1`):
/// exponent of `n^p` and ratio of `r^n`. Log domain, so underflowing terms
/// still carry their trend.
fn tail_fits(log_terms: &[f64]) -> (f64, f64) {
    let m = log_terms.len();
    if m < 2 {
        return (f64::NAN, f64::NAN);
    }
    let start = m / 2;
    let pts: Vec<(f64, f64)> =
        (start..m).filter(|&i| log_terms[i].is_finite()).map(|i| ((i + 1) as f64, log_terms[i])).collect();
    if pts.len() < 2 {
        return (f64::NAN, f64::NAN);
    }
    let n: Vec<f64> = pts.iter().map(|p| p.0).collect();
    let ln_n: Vec<f64> = n.iter().map(|v| v.ln()).collect();
    let y: Vec<f64> = pts.iter().map(|p| p.1).collect();
    (linear_fit(&ln_n, &y).1, linear_fit(&n, &y).1.exp())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VectorClass {
    Bounded,
    Analytic,
    QuasiAnalytic,
    BeyondQuasiAnalytic,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VectorClassReport {
    /// `ln ||A^n g|| = ln(s_{2n}) / 2`, `n = 0..=N/2`.
    pub log_norms: Vec<f64>,
    /// `sup_n ||A^n g||^{1/n}`.
    pub bounded_sup: f64,
    /// Slope of `||A^n g||^{1/n}` against `n` over the last half.
    pub bounded_trend: f64,
    /// `sup_n ||A^n g||^{1/n} / n`.
    pub analytic_sup: f64,
    pub analytic_trend: f64,
    /// Elasticity of `||A^n g||^{1/n}` with respect to `n` over the last half.
    pub growth_elasticity: f64,
    pub qa_partial_sum: f64,
    pub bounded_indicated: bool,
    pub analytic_indicated: bool,
    pub quasi_analytic_indicated: bool,
    /// Smallest indicated class.
    pub verdict: VectorClass,
    /// Always set: class membership is asymptotic and only trends are seen.
    pub finite_horizon_caveat: bool,
}

const BOUNDED_ELASTICITY: f64 = 0.25;
const ANALYTIC_ELASTICITY: f64 = 1.0;

/// Growth-class diagnostics from `||A^n g|| = sqrt(s_{2n})`.
pub fn classify_vector(s: &MomentSequence) -> Result<VectorClassReport> {
    if s.order() < 6 {
        return Err(Error::InvalidArgument("classification needs moments up to order 6".into()));
    }
    let m = s.order() / 2;
    let log_norms: Vec<f64> = (0..=m).map(|n| 0.5 * s.log_abs(2 * n)).collect();
    let root: Vec<f64> = (1..=m).map(|n| (log_norms[n] / n as f64).exp()).collect();
    let over_n: Vec<f64> = root.iter().enumerate().map(|(i, r)| r / (i + 1) as f64).collect();
    let start = m / 2;
    let idx: Vec<f64> = (start..m).map(|i| (i + 1) as f64).collect();
    let tail = |v: &[f64]| v[start..].to_vec();
    let bounded_trend = linear_fit(&idx, &tail(&root)).1;
    let analytic_trend = linear_fit(&idx, &tail(&over_n)).1;
    let ln_idx: Vec<f64> = idx.iter().map(|v| v.ln()).collect();
    let ln_root: Vec<f64> = tail(&root).iter().map(|r| r.ln()).collect();
    let growth_elasticity = linear_fit(&ln_idx, &ln_root).1;
    let carl = carleman(s, DEFAULT_CARLEMAN_TOL);
    let finite = carl.verdict == CarlemanVerdict::FiniteSupportDeterminate;
    let bounded_indicated = finite || growth_elasticity < BOUNDED_ELASTICITY;
    let analytic_indicated = bounded_indicated || growth_elasticity < ANALYTIC_ELASTICITY;
    let quasi_analytic_indicated = analytic_indicated || carl.verdict == CarlemanVerdict::SatisfiedAtHorizon;
    let verdict = if bounded_indicated {
        VectorClass::Bounded
    } else if analytic_indicated {
        VectorClass::Analytic
    } else if quasi_analytic_indicated {
        VectorClass::QuasiAnalytic
    } else if carl.verdict == CarlemanVerdict::ConvergentTail {
        VectorClass::BeyondQuasiAnalytic
    } else {
        VectorClass::Inconclusive
    };
    Ok(VectorClassReport {
        bounded_sup: root.iter().cloned().fold(0.0, f64::max),
        analytic_sup: over_n.iter().cloned().fold(0.0, f64::max),
        log_norms,
        bounded_trend,
        analytic_trend,
        growth_elasticity,
        qa_partial_sum: *carl.partial_sums.last().unwrap(),
        bounded_indicated,
        analytic_indicated,
        quasi_analytic_indicated,
        verdict,
        finite_horizon_caveat: true,
    })
}
