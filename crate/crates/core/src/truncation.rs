//! Symmetric spectral truncations `g_n = chi_[-n,n](A) g` and the
//! convergence of their Krylov subspaces, all embedded in one master space.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frame::SubspaceFrame;
use crate::krylov::{krylov_frame, truncation_projection, TestFunction};
use crate::measure::SpectralMeasure;
use crate::metrics::{dw_estimate, sup_weak_norm, ProbeFrame, WeakGapEstimate, WeakGapParams};
use crate::numeric::weighted_norm;
use crate::space::{DiscretizedSpace, InnerProduct};

/// `L(A, g)` for cyclic `g`: the whole discretized space, as a node-indicator
/// frame orthonormal under `ip`.
pub fn lspace_frame(space: &DiscretizedSpace, ip: InnerProduct) -> SubspaceFrame {
    SubspaceFrame::full(space, ip)
}

/// Discretizes `mu` after splitting it at every `+-n` of the grid, so that
/// each truncation window is a union of quadrature pieces.
pub fn master_space(mu: &SpectralMeasure, n_grid: &[f64], nodes_per_piece: Option<usize>) -> Result<DiscretizedSpace> {
    check_grid(n_grid)?;
    let cuts: Vec<f64> = n_grid.iter().flat_map(|n| [-n, *n]).collect();
    DiscretizedSpace::discretize(&mu.split_at(&cuts, nodes_per_piece)?)
}

fn check_grid(n_grid: &[f64]) -> Result<()> {
    if n_grid.is_empty() {
        return Err(Error::InvalidArgument("empty truncation grid".into()));
    }
    if n_grid.iter().any(|n| !(*n > 0.0) || !n.is_finite()) || n_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument("truncation radii must be positive, finite and strictly increasing".into()));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TruncationParams {
    pub n_grid: Vec<f64>,
    /// Krylov degree `m`; each step uses `min(m, inside - 1)`.
    pub degree: usize,
    pub weak_gap: WeakGapParams,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PanelErrors {
    pub name: String,
    /// `||chi_n v - v||_H`.
    pub mask_error: f64,
    /// `||P_{K_n} v - v||_H` by subspace projection.
    pub projection_error: f64,
    /// `||P_{K_n} v - chi_n v||_H / ||v||_H`.
    pub identity_deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TruncationStep {
    pub n: f64,
    pub nodes_inside: usize,
    pub degree: usize,
    pub krylov_dim: usize,
    /// Degree reached the number of nodes inside, so `K_n` is every vector
    /// supported in `[-n, n]`.
    pub saturated: bool,
    /// `||g_n||_H^2`.
    pub mass_captured: f64,
    /// `mu(R \ [-n, n])` from the measure itself.
    pub tail_mass: f64,
    /// `||g - g_n||_A`.
    pub graph_norm_gap: f64,
    /// Relative residual of the previous step's frame projected onto this one.
    pub nesting_residual: Option<f64>,
    pub lspace_residual: f64,
    pub dhat_to_l: WeakGapEstimate,
    pub complement_dim: usize,
    /// Sampled `sup ||u||_w` over the unit ball of the complement of `K_n`.
    pub complement_sup_weak_norm: f64,
    pub panel: Vec<PanelErrors>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TruncationVerdicts {
    pub mass_nondecreasing: bool,
    pub graph_gap_nonincreasing: bool,
    pub nesting_ok: bool,
    /// Within `inner_tol`.
    pub dhat_nonincreasing: bool,
    pub complement_dim_nonincreasing: bool,
    pub projection_errors_nonincreasing: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TruncationStudy {
    pub n_grid: Vec<f64>,
    pub degree: usize,
    pub space_dim: usize,
    pub nesting_tol: f64,
    pub steps: Vec<TruncationStep>,
    pub notices: Vec<String>,
    pub verdicts: TruncationVerdicts,
}

pub const NESTING_TOL: f64 = 1e-8;

fn nonincreasing(v: &[f64], slack: f64) -> bool {
    v.windows(2).all(|w| w[1] <= w[0] + slack)
}

/// Runs the truncation program on a master space (see [`master_space`]).
pub fn run_truncation_study(
    space: &DiscretizedSpace,
    g: &[f64],
    panel: &[TestFunction],
    params: &TruncationParams,
) -> Result<TruncationStudy> {
    check_grid(&params.n_grid)?;
    if g.len() != space.len() || panel.iter().any(|t| t.values.len() != space.len()) {
        return Err(Error::InvalidArgument("vector length does not match the space".into()));
    }
    let probes = ProbeFrame::orthopoly(space)?;
    let l_frame = lspace_frame(space, InnerProduct::Ambient);
    let w = space.weights();
    let wg = space.graph_weights();
    let total = space.source().map(|mu| mu.total_mass());
    let mut steps: Vec<TruncationStep> = Vec::new();
    let mut notices = Vec::new();
    let mut previous: Option<SubspaceFrame> = None;
    for &n in &params.n_grid {
        let inside = space.count_inside(n);
        let g_n = truncation_projection(space, g, n);
        if inside == 0 || g_n.iter().all(|v| *v == 0.0) {
            notices.push(format!("n = {n}: empty truncation, step skipped"));
            continue;
        }
        let degree = params.degree.min(inside - 1);
        let k = krylov_frame(space, &g_n, degree, InnerProduct::Ambient)?;
        if let Some(msg) = &k.notice {
            notices.push(format!("n = {n}: {msg}"));
        }
        let tail_mass = match (space.source(), total) {
            (Some(mu), Some(t)) => match mu.truncate(n) {
                Ok(tr) => t - tr.total_mass(),
                Err(Error::EmptyTruncation(_)) => t,
                Err(e) => return Err(e),
            },
            _ => crate::numeric::pairwise_sum_by(space.len(), |i| if space.nodes()[i].abs() > n { w[i] } else { 0.0 }),
        };
        let gap: Vec<f64> = g.iter().zip(&g_n).map(|(a, b)| a - b).collect();
        let complement = k.complement(space);
        let panel_errors = panel
            .iter()
            .map(|t| {
                let masked = truncation_projection(space, &t.values, n);
                let projected = k.project(space, &t.values);
                let diff = |a: &[f64], b: &[f64]| -> Vec<f64> { a.iter().zip(b).map(|(x, y)| x - y).collect() };
                let vn = weighted_norm(w, &t.values);
                PanelErrors {
                    name: t.name.clone(),
                    mask_error: weighted_norm(w, &diff(&masked, &t.values)),
                    projection_error: weighted_norm(w, &diff(&projected, &t.values)),
                    identity_deviation: if vn > 0.0 { weighted_norm(w, &diff(&projected, &masked)) / vn } else { 0.0 },
                }
            })
            .collect();
        steps.push(TruncationStep {
            n,
            nodes_inside: inside,
            degree,
            krylov_dim: k.dim(),
            saturated: k.dim() == inside,
            mass_captured: weighted_norm(w, &g_n).powi(2),
            tail_mass,
            graph_norm_gap: weighted_norm(wg, &gap),
            nesting_residual: previous.as_ref().map(|p| k.containment_residual(space, p)),
            lspace_residual: l_frame.containment_residual(space, &k),
            dhat_to_l: dw_estimate(space, &k, &l_frame, &probes, &params.weak_gap)?,
            complement_dim: complement.dim(),
            complement_sup_weak_norm: sup_weak_norm(space, &complement, &probes, &params.weak_gap)?,
            panel: panel_errors,
        });
        previous = Some(k);
    }
    let col = |f: &dyn Fn(&TruncationStep) -> f64| -> Vec<f64> { steps.iter().map(f).collect() };
    let masses = col(&|s| s.mass_captured);
    let verdicts = TruncationVerdicts {
        mass_nondecreasing: masses.windows(2).all(|w| w[1] >= w[0]),
        graph_gap_nonincreasing: nonincreasing(&col(&|s| s.graph_norm_gap), 0.0),
        nesting_ok: steps.iter().all(|s| s.nesting_residual.is_none_or(|r| r <= NESTING_TOL)),
        dhat_nonincreasing: nonincreasing(&col(&|s| s.dhat_to_l.dhat), params.weak_gap.inner_tol),
        complement_dim_nonincreasing: nonincreasing(&col(&|s| s.complement_dim as f64), 0.0),
        projection_errors_nonincreasing: (0..panel.len())
            .all(|j| nonincreasing(&col(&|s| s.panel[j].projection_error), 1e-12)),
    };
    Ok(TruncationStudy {
        n_grid: params.n_grid.clone(),
        degree: params.degree,
        space_dim: space.len(),
        nesting_tol: NESTING_TOL,
        steps,
        notices,
        verdicts,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NormTable {
    /// Ascending polynomial coefficients.
    pub coeffs: Vec<f64>,
    pub n_grid: Vec<f64>,
    /// `||p(A) g_n||_H` per radius.
    pub ambient: Vec<f64>,
    /// `||p(A) g_n||_A` per radius.
    pub graph: Vec<f64>,
    pub full_ambient: f64,
    pub full_graph: f64,
    pub bounded_by_full: bool,
    pub nondecreasing: bool,
}

fn horner(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
}

/// Tables of `||p(A) g_n||` in both norms against the untruncated values.
pub fn monotone_norm_check(
    space: &DiscretizedSpace,
    g: &[f64],
    n_grid: &[f64],
    polynomials: &[Vec<f64>],
) -> Result<Vec<NormTable>> {
    check_grid(n_grid)?;
    if g.len() != space.len() {
        return Err(Error::InvalidArgument("vector length does not match the space".into()));
    }
    let (w, wg) = (space.weights(), space.graph_weights());
    polynomials
        .iter()
        .map(|coeffs| {
            let pg: Vec<f64> = space.nodes().iter().zip(g).map(|(l, v)| horner(coeffs, *l) * v).collect();
            if pg.iter().any(|v| !v.is_finite()) {
                return Err(Error::NonFiniteEvaluation { node: f64::NAN, value: f64::NAN });
            }
            let masked: Vec<Vec<f64>> = n_grid.iter().map(|n| space.mask(&pg, *n)).collect();
            let ambient: Vec<f64> = masked.iter().map(|x| weighted_norm(w, x)).collect();
            let graph: Vec<f64> = masked.iter().map(|x| weighted_norm(wg, x)).collect();
            let full_ambient = weighted_norm(w, &pg);
            let full_graph = weighted_norm(wg, &pg);
            let up = |v: &[f64]| v.windows(2).all(|p| p[1] >= p[0]);
            Ok(NormTable {
                coeffs: coeffs.clone(),
                n_grid: n_grid.to_vec(),
                bounded_by_full: ambient.iter().all(|a| *a <= full_ambient) && graph.iter().all(|a| *a <= full_graph),
                nondecreasing: up(&ambient) && up(&graph),
                ambient,
                graph,
                full_ambient,
                full_graph,
            })
        })
        .collect()
}
