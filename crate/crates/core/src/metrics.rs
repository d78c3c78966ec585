//! Separation ranges via principal angles, the Krylov-intersection
//! indicator, the probe-weighted weak norm and sampled estimators of the
//! weak-gap distance between unit balls of subspaces.

use nalgebra::{DMatrix, DVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frame::{SubspaceFrame, FRAME_TOL};
use crate::krylov::krylov_frame;
use crate::space::{DiscretizedSpace, InnerProduct};

pub const DEFAULT_KINT_THRESHOLD: f64 = std::f64::consts::SQRT_2 - 1e-3;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeparationReport {
    /// Largest principal-angle cosine between the two spans.
    pub sigma_max: f64,
    /// `sqrt(2 (1 - sigma_max))`, evaluated through the residual of `N`
    /// against `M`.
    pub min_separation: f64,
    /// Separations of sampled unit vectors of `N` (the extremal singular
    /// vector first).
    pub sampled_range: Vec<f64>,
    pub threshold: f64,
    pub trivial_intersection_indicated: bool,
    pub m_dim: usize,
    pub n_dim: usize,
    pub seed: u64,
}

fn cross_gram(space: &DiscretizedSpace, m: &SubspaceFrame, n: &SubspaceFrame) -> DMatrix<f64> {
    DMatrix::from_fn(m.dim(), n.dim(), |i, j| space.dot(InnerProduct::Ambient, &m.basis[i], &n.basis[j]))
}

/// Columns `n_j - P_M n_j` scaled by `sqrt(w)`, so Euclidean norms are
/// ambient norms.
fn residual_matrix(space: &DiscretizedSpace, m: &SubspaceFrame, n: &SubspaceFrame, g: &DMatrix<f64>) -> DMatrix<f64> {
    let w = space.weights();
    let mut r = DMatrix::from_fn(space.len(), n.dim(), |i, j| n.basis[j][i] * w[i].sqrt());
    for j in 0..n.dim() {
        for (k, q) in m.basis.iter().enumerate() {
            for i in 0..space.len() {
                r[(i, j)] -= g[(k, j)] * q[i] * w[i].sqrt();
            }
        }
    }
    r
}

/// `sqrt(2 (1 - cos))` with `1 - cos = |Rc|^2 / (1 + cos)`, which stays
/// accurate when the spans nearly meet.
fn separation_of(g: &DMatrix<f64>, r: &DMatrix<f64>, c: &DVector<f64>) -> f64 {
    let norm = c.norm();
    let cos = ((g * c).norm() / norm).min(1.0);
    let res = (r * c).norm() / norm;
    (2.0 * res * res / (1.0 + cos)).sqrt()
}

/// Separation range `S(M, N)` of two ambient-orthonormal frames.
pub fn separation_range(
    space: &DiscretizedSpace,
    m: &SubspaceFrame,
    n: &SubspaceFrame,
    samples: usize,
    seed: u64,
    threshold: f64,
) -> Result<SeparationReport> {
    if m.is_empty() || n.is_empty() {
        return Err(Error::InvalidArgument("separation range needs two nonzero frames".into()));
    }
    if m.ip != InnerProduct::Ambient || n.ip != InnerProduct::Ambient {
        return Err(Error::InvalidArgument("separation range is defined for ambient-orthonormal frames".into()));
    }
    let g = cross_gram(space, m, n);
    let sigma_max = g.singular_values().iter().cloned().fold(0.0, f64::max);
    // The smallest singular value of R belongs to the largest one of G.
    let r = residual_matrix(space, m, n, &g);
    let svd = r.clone().svd(false, true);
    let imin = svd.singular_values.iter().cloned().enumerate().fold((0, f64::INFINITY), |acc, (i, s)| {
        if s < acc.1 {
            (i, s)
        } else {
            acc
        }
    });
    let v_t = svd.v_t.expect("requested right singular vectors");
    let extremal = v_t.row(imin.0).transpose();
    let min_separation = separation_of(&g, &r, &extremal);
    let mut sampled_range = vec![min_separation];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let c = DVector::from_fn(n.dim(), |_, _| StandardNormal.sample(&mut rng));
        if c.norm() > 0.0 {
            sampled_range.push(separation_of(&g, &r, &c));
        }
    }
    Ok(SeparationReport {
        sigma_max,
        min_separation,
        sampled_range,
        threshold,
        trivial_intersection_indicated: min_separation >= threshold,
        m_dim: m.dim(),
        n_dim: n.dim(),
        seed,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KintReport {
    pub m: usize,
    pub m_big: usize,
    pub space_dim: usize,
    pub krylov_dim: usize,
    pub complement_dim: usize,
    /// Set when the complement (or its image) is empty.
    pub degenerate: bool,
    pub separation: Option<SeparationReport>,
    pub notices: Vec<String>,
}

/// Separation between the Krylov frame of degree `<= m` and the image under
/// `A` of the graph complement of the Krylov frame of degree `<= m_big`.
pub fn kint_indicator(
    space: &DiscretizedSpace,
    g: &[f64],
    m: usize,
    m_big: usize,
    threshold: f64,
    samples: usize,
    seed: u64,
) -> Result<KintReport> {
    if m >= m_big {
        return Err(Error::InvalidArgument(format!("need m < m_big, got m = {m}, m_big = {m_big}")));
    }
    let k = krylov_frame(space, g, m, InnerProduct::Ambient)?;
    let kv = krylov_frame(space, g, m_big, InnerProduct::Graph)?;
    let comp = kv.complement(space);
    let mut notices: Vec<String> = [&k.notice, &kv.notice, &comp.notice].iter().filter_map(|n| (*n).clone()).collect();
    let images: Vec<Vec<f64>> = comp.basis.iter().map(|c| space.apply_a(c)).collect();
    let n_frame = SubspaceFrame::from_vectors(space, &images, InnerProduct::Ambient)?;
    if let Some(n) = &n_frame.notice {
        notices.push(format!("image of the complement: {n}"));
    }
    let mut report = KintReport {
        m,
        m_big,
        space_dim: space.len(),
        krylov_dim: k.dim(),
        complement_dim: comp.dim(),
        degenerate: n_frame.is_empty(),
        separation: None,
        notices,
    };
    if !report.degenerate {
        report.separation = Some(separation_range(space, &k, &n_frame, samples, seed, threshold)?);
    }
    Ok(report)
}

/// An ambient-orthonormal probe sequence `v_0, v_1, ...` with weights
/// `2^{-(n+1)}`, defining `||x||_w = sum_n 2^{-(n+1)} |<v_n, x>|`.
#[derive(Debug, Clone)]
pub struct ProbeFrame {
    frame: SubspaceFrame,
    omega: Vec<f64>,
}

impl ProbeFrame {
    pub fn new(space: &DiscretizedSpace, frame: SubspaceFrame) -> Result<Self> {
        if frame.ip != InnerProduct::Ambient {
            return Err(Error::InvalidArgument("probes must be orthonormal in the ambient inner product".into()));
        }
        let dev = frame.gram_deviation(space);
        if dev > FRAME_TOL {
            return Err(Error::InvalidArgument(format!("probe frame is not orthonormal (deviation {dev:.3e})")));
        }
        let omega = (0..frame.dim()).map(|n| 0.5f64.powi(n as i32 + 1)).collect();
        Ok(ProbeFrame { frame, omega })
    }

    /// The orthonormal polynomials of the space in degree order, completed by
    /// the orthogonal complement if the recurrence saturates early.
    pub fn orthopoly(space: &DiscretizedSpace) -> Result<Self> {
        let mut frame = krylov_frame(space, &space.ones(), space.len() - 1, InnerProduct::Ambient)?;
        if frame.dim() < space.len() {
            let rest = frame.complement(space);
            frame.basis.extend(rest.basis);
            frame.degrees = None;
        }
        Self::new(space, frame)
    }

    pub fn len(&self) -> usize {
        self.omega.len()
    }

    pub fn is_empty(&self) -> bool {
        self.omega.is_empty()
    }

    pub fn frame(&self) -> &SubspaceFrame {
        &self.frame
    }

    pub fn weights(&self) -> &[f64] {
        &self.omega
    }

    /// `<v_n, x>_H` for every probe.
    pub fn coefficients(&self, space: &DiscretizedSpace, x: &[f64]) -> Vec<f64> {
        self.frame.coefficients(space, x)
    }

    pub fn norm(&self, space: &DiscretizedSpace, x: &[f64]) -> f64 {
        weighted_l1(&self.omega, &self.coefficients(space, x))
    }
}

/// `||x||_w` against the given probes.
pub fn weak_norm(space: &DiscretizedSpace, x: &[f64], probes: &ProbeFrame) -> f64 {
    probes.norm(space, x)
}

fn weighted_l1(omega: &[f64], c: &[f64]) -> f64 {
    crate::numeric::pairwise_sum_by(omega.len(), |n| omega[n] * c[n].abs())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeakGapParams {
    /// Number of sampled unit vectors of the source ball.
    pub samples: usize,
    pub inner_tol: f64,
    pub seed: u64,
    /// Coordinate-ascent sweeps applied to each sample (0 disables ascent).
    #[serde(default)]
    pub ascent_sweeps: usize,
}

impl WeakGapParams {
    pub fn new(samples: usize, seed: u64) -> Self {
        WeakGapParams { samples, inner_tol: 1e-6, seed, ascent_sweeps: 0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WeakGapEstimate {
    pub dw_cd: f64,
    pub dw_dc: f64,
    pub dhat: f64,
    pub samples: usize,
    pub inner_tol: f64,
    pub seed: u64,
    pub ascent_sweeps: usize,
}

/// A frame expressed in probe coordinates: column `j` holds `<v_n, q_j>`.
struct ProbeMatrix {
    cols: Vec<Vec<f64>>,
}

impl ProbeMatrix {
    fn new(space: &DiscretizedSpace, probes: &ProbeFrame, frame: &SubspaceFrame) -> Result<Self> {
        if frame.ip != InnerProduct::Ambient {
            return Err(Error::InvalidArgument("weak-gap frames must be ambient-orthonormal".into()));
        }
        if frame.space_dim != space.len() {
            return Err(Error::InvalidArgument("frame belongs to a different space".into()));
        }
        Ok(ProbeMatrix { cols: frame.basis.iter().map(|q| probes.coefficients(space, q)).collect() })
    }

    fn dim(&self) -> usize {
        self.cols.len()
    }

    fn apply(&self, a: &[f64], rows: usize) -> Vec<f64> {
        let mut out = vec![0.0; rows];
        for (col, c) in self.cols.iter().zip(a) {
            for (o, v) in out.iter_mut().zip(col) {
                *o += c * v;
            }
        }
        out
    }

    fn transpose_apply(&self, p: &[f64]) -> Vec<f64> {
        self.cols.iter().map(|col| col.iter().zip(p).map(|(a, b)| a * b).sum()).collect()
    }
}

/// `min_{||b|| <= 1} sum_n omega_n |p_n - (Q b)_n|` for a fixed target `p`.
struct InnerProblem<'a> {
    omega: &'a [f64],
    q: &'a ProbeMatrix,
    /// Number of leading terms kept in the smoothed solvers.
    active: usize,
    tol: f64,
}

impl InnerProblem<'_> {
    fn objective(&self, p: &[f64], b: &[f64]) -> f64 {
        let qb = self.q.apply(b, p.len());
        let r: Vec<f64> = p.iter().zip(&qb).map(|(a, c)| a - c).collect();
        weighted_l1(self.omega, &r)
    }

    fn solve(&self, p: &[f64]) -> f64 {
        let k = self.q.dim();
        if k == 0 {
            return weighted_l1(self.omega, p);
        }
        // warm start: the ambient projection, pulled inside the ball
        let mut b0 = self.q.transpose_apply(p);
        let nb = norm(&b0);
        if nb > 1.0 {
            b0.iter_mut().for_each(|v| *v /= nb);
        }
        let f0 = self.objective(p, &b0);
        if f0 <= 1e-3 * self.tol {
            return f0;
        }
        let best = match k {
            1 => self.solve_line(p),
            2 => self.solve_disk(p),
            _ => self.solve_barrier(p, &b0),
        };
        best.min(f0)
    }

    /// Exact: weighted median of the breakpoints, clipped to `[-1, 1]`.
    fn solve_line(&self, p: &[f64]) -> f64 {
        let q = &self.q.cols[0];
        let mut pts: Vec<(f64, f64)> = (0..p.len())
            .filter(|&n| q[n] != 0.0 && self.omega[n] > 0.0)
            .map(|n| (p[n] / q[n], self.omega[n] * q[n].abs()))
            .collect();
        if pts.is_empty() {
            return self.objective(p, &[0.0]);
        }
        pts.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        let total: f64 = pts.iter().map(|x| x.1).sum();
        let mut acc = 0.0;
        let mut median = pts.last().unwrap().0;
        for (x, w) in &pts {
            acc += w;
            if acc >= 0.5 * total {
                median = *x;
                break;
            }
        }
        let b = median.clamp(-1.0, 1.0);
        self.objective(p, &[b])
    }

    /// Exact: vertices of the line arrangement inside the disk, line-circle
    /// intersections and the stationary point of every boundary arc.
    fn solve_disk(&self, p: &[f64]) -> f64 {
        let (q0, q1) = (&self.q.cols[0], &self.q.cols[1]);
        let lines: Vec<([f64; 2], f64, f64)> = (0..self.active)
            .filter(|&n| q0[n] != 0.0 || q1[n] != 0.0)
            .map(|n| ([q0[n], q1[n]], p[n], self.omega[n]))
            .collect();
        let mut cands: Vec<[f64; 2]> = vec![[0.0, 0.0]];
        for i in 0..lines.len() {
            for j in i + 1..lines.len() {
                let (a, c) = (lines[i].0, lines[j].0);
                let det = a[0] * c[1] - a[1] * c[0];
                if det.abs() <= 1e-14 * (a[0].hypot(a[1]) * c[0].hypot(c[1])) {
                    continue;
                }
                let x = (lines[i].1 * c[1] - a[1] * lines[j].1) / det;
                let y = (a[0] * lines[j].1 - lines[i].1 * c[0]) / det;
                if x * x + y * y <= 1.0 {
                    cands.push([x, y]);
                }
            }
        }
        let mut angles = Vec::new();
        for (a, t, _) in &lines {
            let r = a[0].hypot(a[1]);
            if t.abs() <= r {
                let phi = a[1].atan2(a[0]);
                let d = (t / r).acos();
                angles.push(phi + d);
                angles.push(phi - d);
            }
        }
        let tau = std::f64::consts::TAU;
        let mut angles: Vec<f64> = angles.into_iter().map(|t| t.rem_euclid(tau)).collect();
        angles.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for t in &angles {
            cands.push([t.cos(), t.sin()]);
        }
        let arcs: Vec<f64> = if angles.is_empty() {
            vec![0.0]
        } else {
            (0..angles.len())
                .map(|i| {
                    let a = angles[i];
                    let b = if i + 1 < angles.len() { angles[i + 1] } else { angles[0] + tau };
                    0.5 * (a + b)
                })
                .collect()
        };
        for mid in arcs {
            let u = [mid.cos(), mid.sin()];
            // on this arc f = const - G . u with G = sum omega s_n a_n
            let mut g = [0.0, 0.0];
            for (a, t, w) in &lines {
                let s = (t - a[0] * u[0] - a[1] * u[1]).signum();
                g[0] += w * s * a[0];
                g[1] += w * s * a[1];
            }
            let gn = g[0].hypot(g[1]);
            if gn > 0.0 {
                cands.push([g[0] / gn, g[1] / gn]);
            }
        }
        cands.iter().map(|b| self.objective(p, b)).fold(f64::INFINITY, f64::min)
    }

    /// Log-barrier interior-point method on the smoothed problem.
    fn solve_barrier(&self, p: &[f64], b0: &[f64]) -> f64 {
        let k = self.q.dim();
        let nterms = self.active;
        let mut b: Vec<f64> = b0.to_vec();
        let nb = norm(&b);
        if nb > 0.99 {
            b.iter_mut().for_each(|v| *v *= 0.99 / nb);
        }
        let constraints = (2 * nterms + 1) as f64;
        let mut best = self.objective(p, &b);
        let mut tau = constraints / best.max(self.tol);
        let residual = |b: &[f64]| -> Vec<f64> {
            let qb = self.q.apply(b, nterms);
            (0..nterms).map(|n| p[n] - qb[n]).collect()
        };
        let barrier = |b: &[f64], tau: f64| -> f64 {
            let bb: f64 = b.iter().map(|v| v * v).sum();
            if bb >= 1.0 {
                return f64::INFINITY;
            }
            let r = residual(b);
            let mut f = -(1.0 - bb).ln();
            for n in 0..nterms {
                let s = tau * self.omega[n];
                let q = (1.0 + s * s * r[n] * r[n]).sqrt();
                f += q - (1.0 + q).ln();
            }
            f
        };
        loop {
            for _ in 0..60 {
                let r = residual(&b);
                let bb: f64 = b.iter().map(|v| v * v).sum();
                let gap = 1.0 - bb;
                let mut grad = DVector::from_fn(k, |j, _| 2.0 * b[j] / gap);
                let mut hess = DMatrix::from_fn(k, k, |i, j| {
                    let id = if i == j { 2.0 / gap } else { 0.0 };
                    id + 4.0 * b[i] * b[j] / (gap * gap)
                });
                for n in 0..nterms {
                    let s = tau * self.omega[n];
                    let q = (1.0 + s * s * r[n] * r[n]).sqrt();
                    let d1 = s * s * r[n] / (1.0 + q);
                    let d2 = s * s / (q * (1.0 + q));
                    for i in 0..k {
                        let qi = self.q.cols[i][n];
                        grad[i] -= d1 * qi;
                        for j in 0..=i {
                            hess[(i, j)] += d2 * qi * self.q.cols[j][n];
                        }
                    }
                }
                for i in 0..k {
                    for j in 0..i {
                        hess[(j, i)] = hess[(i, j)];
                    }
                }
                let step = match hess.cholesky() {
                    Some(ch) => ch.solve(&(-&grad)),
                    None => -&grad,
                };
                let decrement = -grad.dot(&step);
                if decrement < 1e-12 {
                    break;
                }
                let f_now = barrier(&b, tau);
                let mut t = 1.0;
                let mut moved = false;
                while t > 1e-12 {
                    let trial: Vec<f64> = (0..k).map(|j| b[j] + t * step[j]).collect();
                    if barrier(&trial, tau) <= f_now - 0.25 * t * decrement {
                        b = trial;
                        moved = true;
                        break;
                    }
                    t *= 0.5;
                }
                if !moved {
                    break;
                }
            }
            best = best.min(self.objective(p, &b));
            if constraints / tau < 0.5 * self.tol {
                break;
            }
            tau *= 8.0;
        }
        best
    }
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Number of leading probe terms whose omitted tail weight stays below
/// `1e-3 * tol` for vectors of norm at most 2.
fn active_terms(omega: &[f64], tol: f64) -> usize {
    let mut tail: f64 = omega.iter().sum();
    for (n, w) in omega.iter().enumerate() {
        if 2.0 * tail < 1e-3 * tol {
            return n;
        }
        tail -= w;
    }
    omega.len()
}

/// Prefix-stable list of unit coefficient vectors in dimension `k`: basis
/// vectors, normalized pairwise sums and differences, then seeded Gaussian
/// directions.
pub fn sample_directions(k: usize, count: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut out = Vec::with_capacity(count);
    if k == 0 {
        return out;
    }
    let h = std::f64::consts::FRAC_1_SQRT_2;
    'det: {
        for i in 0..k {
            if out.len() == count {
                break 'det;
            }
            let mut e = vec![0.0; k];
            e[i] = 1.0;
            out.push(e);
        }
        for i in 0..k {
            for j in i + 1..k {
                for s in [1.0, -1.0] {
                    if out.len() == count {
                        break 'det;
                    }
                    let mut e = vec![0.0; k];
                    e[i] = h;
                    e[j] = s * h;
                    out.push(e);
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    while out.len() < count {
        let v: Vec<f64> = (0..k).map(|_| StandardNormal.sample(&mut rng)).collect();
        let n = norm(&v);
        if n > 0.0 {
            out.push(v.into_iter().map(|x| x / n).collect());
        }
    }
    out
}

/// Maximizes `phi` over the unit sphere starting from `a` by coordinate
/// steps of shrinking size.
fn ascend<F: Fn(&[f64]) -> f64>(phi: &F, a: Vec<f64>, sweeps: usize) -> f64 {
    let mut a = a;
    let mut best = phi(&a);
    let mut delta = 0.5;
    for _ in 0..sweeps {
        let mut improved = false;
        for i in 0..a.len() {
            for s in [1.0, -1.0] {
                let mut t = a.clone();
                t[i] += s * delta;
                let n = norm(&t);
                if n == 0.0 {
                    continue;
                }
                t.iter_mut().for_each(|v| *v /= n);
                let f = phi(&t);
                if f > best {
                    best = f;
                    a = t;
                    improved = true;
                }
            }
        }
        if !improved {
            delta *= 0.5;
            if delta < 1e-9 {
                break;
            }
        }
    }
    best
}

/// Sampled lower estimate of `d_w(C, D) = sup_{u in B_C} inf_{v in B_D} ||u - v||_w`.
pub fn dw_directed(
    space: &DiscretizedSpace,
    c: &SubspaceFrame,
    d: &SubspaceFrame,
    probes: &ProbeFrame,
    params: &WeakGapParams,
) -> Result<f64> {
    if probes.frame().space_dim != space.len() {
        return Err(Error::InvalidArgument("probes belong to a different space".into()));
    }
    let pc = ProbeMatrix::new(space, probes, c)?;
    let pd = ProbeMatrix::new(space, probes, d)?;
    if pc.dim() == 0 {
        return Ok(0.0);
    }
    let rows = probes.len();
    let inner = InnerProblem {
        omega: probes.weights(),
        q: &pd,
        active: active_terms(probes.weights(), params.inner_tol),
        tol: params.inner_tol,
    };
    let phi = |a: &[f64]| inner.solve(&pc.apply(a, rows));
    let best = sample_directions(pc.dim(), params.samples, params.seed)
        .into_iter()
        .map(|a| if params.ascent_sweeps > 0 { ascend(&phi, a, params.ascent_sweeps) } else { phi(&a) })
        .fold(0.0, f64::max);
    Ok(best)
}

/// `d_w` in both directions and their maximum.
pub fn dw_estimate(
    space: &DiscretizedSpace,
    c: &SubspaceFrame,
    d: &SubspaceFrame,
    probes: &ProbeFrame,
    params: &WeakGapParams,
) -> Result<WeakGapEstimate> {
    let dw_cd = dw_directed(space, c, d, probes, params)?;
    let dw_dc = dw_directed(space, d, c, probes, params)?;
    Ok(WeakGapEstimate {
        dw_cd,
        dw_dc,
        dhat: dw_cd.max(dw_dc),
        samples: params.samples,
        inner_tol: params.inner_tol,
        seed: params.seed,
        ascent_sweeps: params.ascent_sweeps,
    })
}

/// Sampled `sup_{u in B_C} ||u||_w`, i.e. `d_w(C, {0})`.
pub fn sup_weak_norm(
    space: &DiscretizedSpace,
    c: &SubspaceFrame,
    probes: &ProbeFrame,
    params: &WeakGapParams,
) -> Result<f64> {
    let zero = SubspaceFrame { basis: Vec::new(), ip: InnerProduct::Ambient, degrees: None, notice: None, space_dim: space.len() };
    dw_directed(space, c, &zero, probes, params)
}

/// Slow grid oracle for `d_w(C, D)` with `dim C <= 2` and `dim D = 1`:
/// angle grid on the sphere of `C`, then a grid plus golden-section polish
/// for the convex inner problem on `[-1, 1]`, then a local angle polish.
pub fn brute_force_dw(
    space: &DiscretizedSpace,
    c: &SubspaceFrame,
    d: &SubspaceFrame,
    probes: &ProbeFrame,
    grid: usize,
) -> Result<f64> {
    if c.dim() > 2 || d.dim() != 1 || grid < 8 {
        return Err(Error::InvalidArgument("brute-force oracle needs dim C <= 2, dim D = 1 and grid >= 8".into()));
    }
    let omega = probes.weights();
    let pd = probes.coefficients(space, &d.basis[0]);
    let pc: Vec<Vec<f64>> = c.basis.iter().map(|q| probes.coefficients(space, q)).collect();
    let inner = |p: &[f64]| -> f64 {
        let f = |b: f64| weighted_l1(omega, &p.iter().zip(&pd).map(|(x, y)| x - b * y).collect::<Vec<_>>());
        let step = 2.0 / grid as f64;
        let (mut best_b, mut best) = (-1.0, f(-1.0));
        for i in 1..=grid {
            let b = -1.0 + i as f64 * step;
            let v = f(b);
            if v < best {
                best = v;
                best_b = b;
            }
        }
        best.min(golden(&|b| f(b), (best_b - step).max(-1.0), (best_b + step).min(1.0), false))
    };
    let at = |t: f64| -> f64 {
        let p: Vec<f64> = if pc.len() == 1 {
            pc[0].clone()
        } else {
            pc[0].iter().zip(&pc[1]).map(|(a, b)| t.cos() * a + t.sin() * b).collect()
        };
        inner(&p)
    };
    if pc.is_empty() {
        return Ok(0.0);
    }
    if pc.len() == 1 {
        return Ok(at(0.0));
    }
    let n = 4 * grid;
    let step = std::f64::consts::PI / n as f64;
    let (mut best_t, mut best) = (0.0, at(0.0));
    for i in 1..n {
        let t = i as f64 * step;
        let v = at(t);
        if v > best {
            best = v;
            best_t = t;
        }
    }
    Ok(best.max(golden(&at, best_t - step, best_t + step, true)))
}

/// Golden-section search for a minimum (or maximum) on `[a, b]`.
fn golden<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64, maximize: bool) -> f64 {
    let sign = if maximize { -1.0 } else { 1.0 };
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = b - r * (b - a);
    let mut x2 = a + r * (b - a);
    let (mut f1, mut f2) = (sign * f(x1), sign * f(x2));
    for _ in 0..80 {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - r * (b - a);
            f1 = sign * f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + r * (b - a);
            f2 = sign * f(x2);
        }
    }
    sign * f1.min(f2)
}
