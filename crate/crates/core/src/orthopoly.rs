//! Orthonormal polynomials of a discretized measure: Stieltjes/Lanczos with
//! full reorthogonalization, Jacobi matrices and the series test
//! `sum_k |p_k(z0)|^2` at a non-real point.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::measure::Interval;
use crate::numeric::{linear_fit, orthogonalize_against, weighted_dot, weighted_norm};
use crate::quadrature::{gauss_from_recurrence, GaussRule};
use crate::space::{DiscretizedSpace, InnerProduct};

/// `beta` below this multiple of `||lambda q_k||` ends the recurrence.
pub const DEGENERATION_RTOL: f64 = 1e-13;
/// Gram deviation above which a Lanczos basis is rejected.
pub const ORTHOGONALITY_LIMIT: f64 = 1e-6;

/// Output of [`lanczos`]: an orthonormal basis of the Krylov space together
/// with the tridiagonal coefficients of multiplication by `lambda`.
#[derive(Debug, Clone)]
pub(crate) struct LanczosRun {
    pub basis: Vec<Vec<f64>>,
    pub alpha: Vec<f64>,
    pub beta: Vec<f64>,
    /// Per-vector loss of orthogonality against its predecessors.
    pub deviation: Vec<f64>,
    pub notice: Option<String>,
}

/// Runs `dim` steps of Lanczos on `start` under the given weights, with two
/// Gram-Schmidt passes against the whole basis at every step.
pub(crate) fn lanczos(nodes: &[f64], weights: &[f64], start: &[f64], dim: usize) -> Result<LanczosRun> {
    let norm0 = weighted_norm(weights, start);
    if !(norm0 > 0.0 && norm0.is_finite()) {
        return Err(Error::InvalidArgument("Krylov start vector has zero or non-finite norm".into()));
    }
    let mut run = LanczosRun {
        basis: vec![start.iter().map(|v| v / norm0).collect()],
        alpha: Vec::new(),
        beta: Vec::new(),
        deviation: vec![0.0],
        notice: None,
    };
    let dim = if dim > nodes.len() {
        run.notice = Some(format!("requested dimension {dim} exceeds the {} nodes; capped", nodes.len()));
        nodes.len()
    } else {
        dim
    };
    while run.basis.len() <= dim {
        let k = run.basis.len() - 1;
        let q = &run.basis[k];
        let mut w: Vec<f64> = nodes.iter().zip(q).map(|(x, v)| x * v).collect();
        run.alpha.push(weighted_dot(weights, q, &w));
        if run.basis.len() == dim {
            break;
        }
        let scale = weighted_norm(weights, &w);
        orthogonalize_against(&run.basis, weights, &mut w);
        let b = weighted_norm(weights, &w);
        if b <= DEGENERATION_RTOL * scale {
            run.notice = Some(format!(
                "Krylov space saturates at dimension {} (beta = {b:.3e})",
                run.basis.len()
            ));
            break;
        }
        w.iter_mut().for_each(|v| *v /= b);
        let dev = run
            .basis
            .iter()
            .map(|q| weighted_dot(weights, q, &w).abs())
            .fold((weighted_dot(weights, &w, &w) - 1.0).abs(), f64::max);
        if dev > ORTHOGONALITY_LIMIT {
            return Err(Error::OrthogonalityLoss { degree: run.basis.len(), deviation: dev });
        }
        run.beta.push(b);
        run.deviation.push(dev);
        run.basis.push(w);
    }
    Ok(run)
}

/// Three-term recurrence `lambda p_k = beta_{k+1} p_{k+1} + alpha_k p_k + beta_k p_{k-1}`
/// of the orthonormal polynomials. `beta[k]` stores `beta_{k+1}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RecurrenceCoefficients {
    pub alpha: Vec<f64>,
    pub beta: Vec<f64>,
    /// `s_0`, so that `p_0 = s_0^{-1/2}`.
    pub mass: f64,
    /// Orthogonality deviation of `p_k` against `p_0..p_{k-1}`.
    pub cond_log: Vec<f64>,
    /// Set when the recurrence stopped before the requested degree.
    pub degeneration: Option<String>,
    #[serde(skip)]
    pub support_hull: Option<Interval>,
}

impl RecurrenceCoefficients {
    /// Degree horizon `K` (number of polynomials `p_0..p_{K-1}`).
    pub fn len(&self) -> usize {
        self.alpha.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alpha.is_empty()
    }
}

/// Stieltjes procedure on the nodes of `space` for `p_0..p_{k-1}`.
pub fn stieltjes_recurrence(space: &DiscretizedSpace, k: usize) -> Result<RecurrenceCoefficients> {
    if k == 0 {
        return Err(Error::InvalidArgument("degree horizon must be at least 1".into()));
    }
    let run = lanczos(space.nodes(), space.weights(), &space.ones(), k)?;
    let hull = space.source().map(|m| m.support_hull()).unwrap_or(Interval {
        lo: space.nodes()[0],
        hi: *space.nodes().last().unwrap(),
    });
    Ok(RecurrenceCoefficients {
        alpha: run.alpha,
        beta: run.beta,
        mass: space.total_mass(),
        cond_log: run.deviation,
        degeneration: run.notice,
        support_hull: Some(hull),
    })
}

/// Values `p_0(z)..p_{K-1}(z)` by the forward recurrence.
pub fn eval_all(rc: &RecurrenceCoefficients, z: Complex64) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(rc.len());
    out.push(Complex64::new(1.0 / rc.mass.sqrt(), 0.0));
    for k in 1..rc.len() {
        let prev2 = if k >= 2 { out[k - 2] * rc.beta[k - 2] } else { Complex64::new(0.0, 0.0) };
        let next = ((z - rc.alpha[k - 1]) * out[k - 1] - prev2) / rc.beta[k - 1];
        out.push(next);
    }
    out
}

/// `p_k(z)`.
pub fn eval_orthonormal(rc: &RecurrenceCoefficients, k: usize, z: Complex64) -> Result<Complex64> {
    if k >= rc.len() {
        return Err(Error::OutOfRange { index: k, limit: rc.len() });
    }
    let mut all = eval_all(&RecurrenceCoefficients { alpha: rc.alpha[..=k].to_vec(), ..rc.clone() }, z);
    Ok(all.pop().unwrap())
}

/// Leading `m x m` block of the Jacobi matrix with its eigenvalues.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JacobiMatrix {
    pub entries: Vec<Vec<f64>>,
    pub eigenvalues: Vec<f64>,
}

/// `m x m` Jacobi matrix; its eigenvalues are checked to lie in the convex
/// hull of the support.
pub fn jacobi_matrix(rc: &RecurrenceCoefficients, m: usize) -> Result<JacobiMatrix> {
    if m == 0 || m > rc.len() {
        return Err(Error::OutOfRange { index: m, limit: rc.len() });
    }
    let mat = DMatrix::from_fn(m, m, |i, j| {
        if i == j {
            rc.alpha[i]
        } else if i + 1 == j {
            rc.beta[i]
        } else if j + 1 == i {
            rc.beta[j]
        } else {
            0.0
        }
    });
    let mut eigenvalues: Vec<f64> = SymmetricEigen::new(mat.clone()).eigenvalues.iter().cloned().collect();
    eigenvalues.sort_by(|a, b| a.partial_cmp(b).unwrap());
    if let Some(hull) = rc.support_hull {
        let slack = 1e-10 * hull.lo.abs().max(hull.hi.abs()).max(1.0);
        if let Some(e) = eigenvalues.iter().find(|&&e| e < hull.lo - slack || e > hull.hi + slack) {
            return Err(Error::Degeneration(format!(
                "Jacobi eigenvalue {e} lies outside the support hull [{}, {}]",
                hull.lo, hull.hi
            )));
        }
    }
    let entries = (0..m).map(|i| (0..m).map(|j| mat[(i, j)]).collect()).collect();
    Ok(JacobiMatrix { entries, eigenvalues })
}

/// The `m`-point Gauss rule of the recurrence (eigenvalues of the Jacobi
/// matrix with squared first eigenvector components times `s_0`).
pub fn gauss_rule(rc: &RecurrenceCoefficients, m: usize) -> Result<GaussRule> {
    if m == 0 || m > rc.len() {
        return Err(Error::OutOfRange { index: m, limit: rc.len() });
    }
    Ok(gauss_from_recurrence(&rc.alpha[..m], &rc.beta[..m - 1], rc.mass))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SeriesVerdict {
    /// Growing partial sums: points to a determinate moment problem.
    DivergentTrend,
    /// Geometrically summable terms: points to an indeterminate problem.
    ConvergentTail,
    /// The recurrence terminated, so the measure is finitely supported.
    FiniteSupport,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeriesReport {
    pub z0: [f64; 2],
    pub terms: Vec<f64>,
    pub partial_sums: Vec<f64>,
    /// Ratios `terms[k] / terms[k-1]`.
    pub ratios: Vec<f64>,
    /// Geometric ratio fitted over the last `tail_window` terms.
    pub fitted_ratio: f64,
    /// Tail estimate relative to the final partial sum (geometric case only).
    pub relative_tail_bound: Option<f64>,
    pub verdict: SeriesVerdict,
}

pub const DEFAULT_SERIES_TAIL_TOL: f64 = 1e-4;

/// Series `sum_k |p_k(z0)|^2` with a trend verdict over the last `tail_window`
/// terms.
pub fn determinacy_series_test(
    rc: &RecurrenceCoefficients,
    z0: Complex64,
    tail_window: usize,
    tail_tol: f64,
) -> Result<SeriesReport> {
    if z0.im == 0.0 {
        return Err(Error::InvalidArgument("series test needs a non-real point".into()));
    }
    if tail_window < 2 {
        return Err(Error::InvalidArgument("tail window must hold at least two terms".into()));
    }
    let terms: Vec<f64> = eval_all(rc, z0).iter().map(|p| p.norm_sqr()).collect();
    let mut acc = 0.0;
    let partial_sums: Vec<f64> = terms
        .iter()
        .map(|t| {
            acc += t;
            acc
        })
        .collect();
    let ratios: Vec<f64> = terms.windows(2).map(|w| w[1] / w[0]).collect();
    let n = terms.len();
    let window = tail_window.min(n);
    let ks: Vec<f64> = (n - window..n).map(|k| k as f64).collect();
    let logs: Vec<f64> = terms[n - window..].iter().map(|t| t.ln()).collect();
    let fitted_ratio = if window >= 2 { linear_fit(&ks, &logs).1.exp() } else { f64::NAN };
    let mut report = SeriesReport {
        z0: [z0.re, z0.im],
        terms,
        partial_sums,
        ratios,
        fitted_ratio,
        relative_tail_bound: None,
        verdict: SeriesVerdict::Inconclusive,
    };
    if rc.degeneration.is_some() {
        report.verdict = SeriesVerdict::FiniteSupport;
        return Ok(report);
    }
    if n < 4 {
        return Ok(report);
    }
    let total = *report.partial_sums.last().unwrap();
    if fitted_ratio < 1.0 {
        let last = *report.terms.last().unwrap();
        let bound = last * fitted_ratio / (1.0 - fitted_ratio) / total;
        report.relative_tail_bound = Some(bound);
        if bound < tail_tol {
            report.verdict = SeriesVerdict::ConvergentTail;
        }
    } else {
        let quartile = report.partial_sums[(n / 4).max(1) - 1];
        if total > 10.0 * quartile {
            report.verdict = SeriesVerdict::DivergentTrend;
        }
    }
    Ok(report)
}

/// `max_{i,j} |<p_i, p_j> - delta_ij|` of a recurrence evaluated on `space`.
pub fn gram_check(space: &DiscretizedSpace, rc: &RecurrenceCoefficients) -> f64 {
    let values: Vec<Vec<f64>> = (0..rc.len())
        .map(|k| {
            space
                .nodes()
                .iter()
                .map(|&x| eval_orthonormal(rc, k, Complex64::new(x, 0.0)).unwrap().re)
                .collect()
        })
        .collect();
    crate::numeric::gram_deviation(&values, space.weights_for(InnerProduct::Ambient))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::SpectralMeasure;

    fn space(mu: SpectralMeasure) -> DiscretizedSpace {
        DiscretizedSpace::discretize(&mu).unwrap()
    }

    #[test]
    fn two_atoms_cap_at_two() {
        let s = space(SpectralMeasure::atomic(&[(-1.0, 0.5), (1.0, 0.5)]).unwrap());
        let rc = stieltjes_recurrence(&s, 5).unwrap();
        assert_eq!(rc.len(), 2);
        assert!(rc.degeneration.is_some());
        assert!(rc.alpha.iter().all(|a| a.abs() < 1e-15));
        assert!((rc.beta[0] - 1.0).abs() < 1e-15);
        let j = jacobi_matrix(&rc, 2).unwrap();
        assert!((j.eigenvalues[0] + 1.0).abs() < 1e-15 && (j.eigenvalues[1] - 1.0).abs() < 1e-15);
        let p1 = eval_orthonormal(&rc, 1, Complex64::new(1.0, 0.0)).unwrap();
        assert!((p1.re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn three_atoms_degenerate_exactly_at_three() {
        let s = space(SpectralMeasure::atomic(&[(0.0, 1.0), (1.0, 2.0), (3.0, 0.5)]).unwrap());
        let rc = stieltjes_recurrence(&s, 3).unwrap();
        assert_eq!(rc.len(), 3);
        assert!(rc.degeneration.is_none());
        let rc = stieltjes_recurrence(&s, 4).unwrap();
        assert_eq!(rc.len(), 3);
        assert!(rc.degeneration.is_some());
    }

    #[test]
    fn legendre_jacobi_eigenvalues() {
        let s = space(SpectralMeasure::uniform(-1.0, 1.0, 1.0, 20).unwrap());
        let rc = stieltjes_recurrence(&s, 10).unwrap();
        let j = jacobi_matrix(&rc, 3).unwrap();
        let r = 0.6f64.sqrt();
        for (e, want) in j.eigenvalues.iter().zip([-r, 0.0, r]) {
            assert!((e - want).abs() < 1e-12);
        }
        assert!(gram_check(&s, &rc) < 1e-12);
    }

    #[test]
    fn hermite_p2_at_zero() {
        let s = space(SpectralMeasure::standard_gaussian(30).unwrap());
        let rc = stieltjes_recurrence(&s, 5).unwrap();
        let p2 = eval_orthonormal(&rc, 2, Complex64::new(0.0, 0.0)).unwrap();
        assert!((p2.re + 1.0 / 2f64.sqrt()).abs() < 1e-12);
        let p0 = eval_orthonormal(&rc, 0, Complex64::new(3.0, 1.0)).unwrap();
        assert_eq!(p0, Complex64::new(1.0 / rc.mass.sqrt(), 0.0));
        assert!(eval_orthonormal(&rc, 5, Complex64::new(0.0, 0.0)).is_err());
    }

    #[test]
    fn gauss_rule_reproduces_moments() {
        let s = space(SpectralMeasure::uniform(0.0, 3.0, 2.0, 24).unwrap());
        let rc = stieltjes_recurrence(&s, 8).unwrap();
        let g = gauss_rule(&rc, 6).unwrap();
        for n in 0..12 {
            let q: f64 = g.nodes.iter().zip(&g.weights).map(|(x, w)| w * x.powi(n)).sum();
            let exact = 2.0 * 3f64.powi(n) / (n as f64 + 1.0);
            assert!((q / exact - 1.0).abs() < 1e-10, "n={n}");
        }
    }

    #[test]
    fn series_test_rejects_real_points() {
        let s = space(SpectralMeasure::standard_gaussian(30).unwrap());
        let rc = stieltjes_recurrence(&s, 5).unwrap();
        assert!(determinacy_series_test(&rc, Complex64::new(1.0, 0.0), 4, 1e-4).is_err());
    }
}
