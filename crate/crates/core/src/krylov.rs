//! Krylov frames, the least-squares Krylov solver, the core-condition gap and
//! spectral truncation projections in the multiplication model.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::frame::SubspaceFrame;
use crate::measure::GapReport;
use crate::numeric::{linear_fit, orthogonalize_against, weighted_dot, weighted_norm};
use crate::orthopoly::lanczos;
use crate::space::{DiscretizedSpace, InnerProduct};

/// Orthonormal frame of `span{g, lambda g, ..., lambda^m g}` under `ip`.
/// Stops early, with a notice, when the Krylov space saturates.
pub fn krylov_frame(space: &DiscretizedSpace, g: &[f64], m: usize, ip: InnerProduct) -> Result<SubspaceFrame> {
    if g.len() != space.len() {
        return Err(Error::InvalidArgument("right-hand side length differs from the space dimension".into()));
    }
    if g.iter().all(|v| *v == 0.0) {
        return Err(Error::InvalidArgument("Krylov start vector is zero".into()));
    }
    let run = lanczos(space.nodes(), space.weights_for(ip), g, m + 1)?;
    let dim = run.basis.len();
    Ok(SubspaceFrame {
        basis: run.basis,
        ip,
        degrees: Some((0..dim).collect()),
        notice: run.notice,
        space_dim: space.len(),
    })
}

/// Orthonormal (graph) basis of the graph-orthogonal complement of a frame.
pub fn graph_complement_frame(space: &DiscretizedSpace, k_frame: &SubspaceFrame) -> Result<SubspaceFrame> {
    if k_frame.ip != InnerProduct::Graph {
        return Err(Error::InvalidArgument("graph complement needs a graph-orthonormal frame".into()));
    }
    Ok(k_frame.complement(space))
}

/// `lambda x`.
pub fn apply_a(space: &DiscretizedSpace, x: &[f64]) -> Vec<f64> {
    space.apply_a(x)
}

/// Images `lambda q` of every frame vector.
pub fn apply_a_frame(space: &DiscretizedSpace, frame: &SubspaceFrame) -> Vec<Vec<f64>> {
    frame.basis.iter().map(|q| space.apply_a(q)).collect()
}

/// `chi_[-n, n](A) v`.
pub fn truncation_projection(space: &DiscretizedSpace, v: &[f64], n: f64) -> Vec<f64> {
    space.mask(v, n)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolvabilityReport {
    pub degrees: Vec<usize>,
    /// `||lambda f_m - g||_H`.
    pub residuals: Vec<f64>,
    /// `||f_m - f_{m-1}||_A`, starting at `m = 1`.
    pub graph_increments: Vec<f64>,
    /// Coefficients of the last `f_m` in the ambient Krylov frame.
    pub solution_coeffs: Vec<f64>,
    /// Values of the last `f_m` at the nodes.
    #[serde(skip)]
    pub solution: Vec<f64>,
    pub g_norm: f64,
    pub tol: f64,
    pub converged: bool,
    /// Geometric rate of the residuals over the last half above the noise floor.
    pub asymptotic_ratio: Option<f64>,
    pub nonincreasing: bool,
    pub gap_report: GapReport,
    pub warnings: Vec<String>,
}

/// Residual level treated as rounding noise when fitting the rate.
const NOISE_FLOOR: f64 = 1e-13;

/// For `m = 0..=m_max`, `f_m = argmin ||lambda f - g||_H` over polynomials of
/// degree `<= m` (times `g`), via the orthonormalized image frame.
pub fn solve_krylov(space: &DiscretizedSpace, g: &[f64], m_max: usize, tol: f64) -> Result<SolvabilityReport> {
    let mut warnings = Vec::new();
    if let Some(i) = space.nodes().iter().zip(g).position(|(l, v)| *l == 0.0 && *v != 0.0) {
        return Err(Error::NotInRange(format!(
            "node {i} sits at lambda = 0 with g-value {}; g has mass on the kernel",
            g[i]
        )));
    }
    let gap_report = match space.source() {
        Some(mu) => {
            if mu.density_touches_zero() {
                warnings.push("a continuous part has 0 in its support; 1/lambda may fail to be square integrable".into());
            }
            mu.spectral_gap_at_zero(1e-12)
        }
        None => {
            let gap = space.nodes().iter().fold(f64::INFINITY, |m, l| m.min(l.abs()));
            GapReport { gap_lower_bound: gap, zero_in_resolvent: gap > 1e-12 }
        }
    };
    let w = space.weights();
    let q = krylov_frame(space, g, m_max, InnerProduct::Ambient)?;
    if let Some(n) = &q.notice {
        warnings.push(n.clone());
    }
    let g_norm = weighted_norm(w, g);

    // lambda q_k = sum_{j<=k} r[j][k] u_j
    let mut u: Vec<Vec<f64>> = Vec::new();
    let mut r: Vec<Vec<f64>> = Vec::new();
    let mut resid = g.to_vec();
    let mut c = Vec::new();
    let mut report = SolvabilityReport {
        degrees: Vec::new(),
        residuals: Vec::new(),
        graph_increments: Vec::new(),
        solution_coeffs: Vec::new(),
        solution: vec![0.0; space.len()],
        g_norm,
        tol,
        converged: false,
        asymptotic_ratio: None,
        nonincreasing: true,
        gap_report,
        warnings,
    };
    let mut prev_f: Option<Vec<f64>> = None;
    for (k, qk) in q.basis.iter().enumerate() {
        let mut img = space.apply_a(qk);
        let mut col = orthogonalize_against(&u, w, &mut img);
        let nrm = weighted_norm(w, &img);
        if nrm <= 1e-14 * weighted_norm(w, &space.apply_a(qk)) {
            report.warnings.push(format!("image frame is singular at degree {k}; stopping"));
            break;
        }
        img.iter_mut().for_each(|v| *v /= nrm);
        col.push(nrm);
        let ck = weighted_dot(w, &img, &resid);
        for (ri, ui) in resid.iter_mut().zip(&img) {
            *ri -= ck * ui;
        }
        u.push(img);
        r.push(col);
        c.push(ck);

        // back substitution: R y = c
        let n = c.len();
        let mut y = vec![0.0; n];
        for i in (0..n).rev() {
            let mut s = c[i];
            for j in i + 1..n {
                s -= r[j][i] * y[j];
            }
            y[i] = s / r[i][i];
        }
        let f = q.combine(&y);
        if let Some(p) = &prev_f {
            let diff: Vec<f64> = f.iter().zip(p).map(|(a, b)| a - b).collect();
            report.graph_increments.push(space.norm(InnerProduct::Graph, &diff));
        }
        let res = weighted_norm(w, &resid);
        if let Some(&last) = report.residuals.last() {
            if res > last {
                report.nonincreasing = false;
            }
        }
        report.degrees.push(k);
        report.residuals.push(res);
        report.solution_coeffs = y;
        report.solution = f.clone();
        prev_f = Some(f);
    }
    let last = report.residuals.last().copied().unwrap_or(g_norm);
    report.converged = last <= tol * g_norm;
    report.asymptotic_ratio = geometric_rate(&report.residuals, NOISE_FLOOR * g_norm);
    Ok(report)
}

/// Fitted per-step ratio of a decaying sequence over the last half of the
/// entries above `floor`.
pub fn geometric_rate(values: &[f64], floor: f64) -> Option<f64> {
    let usable: Vec<(f64, f64)> = values
        .iter()
        .enumerate()
        .take_while(|(_, v)| **v > floor)
        .map(|(i, v)| (i as f64, v.ln()))
        .collect();
    if usable.len() < 4 {
        return None;
    }
    let tail = &usable[usable.len() / 2..];
    let x: Vec<f64> = tail.iter().map(|p| p.0).collect();
    let y: Vec<f64> = tail.iter().map(|p| p.1).collect();
    Some(linear_fit(&x, &y).1.exp())
}

/// A named test function for [`core_condition_gap`].
#[derive(Debug, Clone)]
pub struct TestFunction {
    pub name: String,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoreGapEntry {
    pub name: String,
    pub graph_norm: f64,
    /// `||h - P_m h||_V` for `m = 0..=degree`.
    pub residuals: Vec<f64>,
    /// Final residual over `||h||_V`.
    pub relative_residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoreGapReport {
    pub degree: usize,
    pub space_dim: usize,
    pub entries: Vec<CoreGapEntry>,
}

/// Graph-norm distance from each test function to the Krylov spaces of
/// degree `0..=m`.
pub fn core_condition_gap(
    space: &DiscretizedSpace,
    g: &[f64],
    m: usize,
    tests: &[TestFunction],
) -> Result<CoreGapReport> {
    let frame = krylov_frame(space, g, m, InnerProduct::Graph)?;
    let wg = space.graph_weights();
    let mut entries = Vec::new();
    for t in tests {
        if t.values.len() != space.len() {
            return Err(Error::InvalidArgument(format!("test function '{}' has the wrong length", t.name)));
        }
        let graph_norm = weighted_norm(wg, &t.values);
        if !graph_norm.is_finite() {
            return Err(Error::NonFiniteEvaluation { node: f64::NAN, value: graph_norm });
        }
        let residuals: Vec<f64> = (0..frame.dim())
            .map(|k| {
                let mut r = t.values.clone();
                orthogonalize_against(&frame.basis[..=k], wg, &mut r);
                weighted_norm(wg, &r)
            })
            .collect();
        let last = residuals.last().copied().unwrap_or(graph_norm);
        entries.push(CoreGapEntry {
            name: t.name.clone(),
            graph_norm,
            relative_residual: if graph_norm > 0.0 { last / graph_norm } else { 0.0 },
            residuals,
        });
    }
    Ok(CoreGapReport { degree: frame.dim().saturating_sub(1), space_dim: space.len(), entries })
}
