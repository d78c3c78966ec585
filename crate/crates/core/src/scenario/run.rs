use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;
use serde_json::{json, Value};

use super::schema::*;
use crate::error::{Error, Result};
use crate::frame::SubspaceFrame;
use crate::krylov::{core_condition_gap, krylov_frame, solve_krylov, TestFunction};
use crate::measure::SpectralMeasure;
use crate::metrics::*;
use crate::moments::*;
use crate::orthopoly::*;
use crate::space::{DiscretizedSpace, InnerProduct};
use crate::truncation::*;

/// A CSV view of part of a report.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub name: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    fn new(name: &str, header: &[&str]) -> Self {
        Table { name: name.into(), header: header.iter().map(|h| h.to_string()).collect(), rows: Vec::new() }
    }

    fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }
}

fn cell(x: f64) -> String {
    format!("{x:e}")
}

fn opt_cell(x: Option<f64>) -> String {
    x.map(cell).unwrap_or_default()
}

/// Report plus CSV views of one scenario run.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioOutput {
    pub report: Value,
    pub tables: Vec<Table>,
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports always serialize")
}

/// Runs a validated scenario; `seed` overrides the document's seed.
pub fn run_scenario(sc: &Scenario, seed: Option<u64>) -> Result<ScenarioOutput> {
    let mut sc = sc.clone();
    if seed.is_some() {
        sc.seed = seed;
    }
    sc.validate()?;
    let mu = sc.build_measure()?;
    let seed = sc.seed.unwrap_or(0);
    let mut tables = Vec::new();
    let result = match &sc.task {
        Task::Moments(t) => moments_task(mu.as_ref().unwrap(), t, &mut tables)?,
        Task::Hamburger(t) => hamburger_task(t, seed, &mut tables)?,
        Task::Determinacy(t) => determinacy_task(mu.as_ref().unwrap(), t, &mut tables)?,
        Task::Classify(t) => {
            let s = moment_source(mu.as_ref().unwrap(), t.order, t.source)?;
            to_value(&classify_vector(&s)?)
        }
        Task::Recurrence(t) => recurrence_task(mu.as_ref().unwrap(), t, &mut tables)?,
        Task::Solve(t) => solve_task(mu.as_ref().unwrap(), t, &mut tables)?,
        Task::CoreGap(t) => core_gap_task(mu.as_ref().unwrap(), t, &mut tables)?,
        Task::Kint(t) => {
            let space = DiscretizedSpace::discretize(mu.as_ref().unwrap())?;
            let g = eval_vector(&space, &t.g)?;
            let r = kint_indicator(&space, &g, t.m, t.m_big, t.threshold, t.samples, seed)?;
            if let Some(s) = &r.separation {
                tables.push(separation_table(s));
            }
            to_value(&r)
        }
        Task::Separation(t) => {
            let space = DiscretizedSpace::discretize(mu.as_ref().unwrap())?;
            let m = build_frame(&space, &t.m_frame, seed, 0)?;
            let n = build_frame(&space, &t.n_frame, seed, 1)?;
            let r = separation_range(&space, &m, &n, t.samples, seed, t.threshold)?;
            tables.push(separation_table(&r));
            to_value(&r)
        }
        Task::Weakgap(t) => {
            let space = DiscretizedSpace::discretize(mu.as_ref().unwrap())?;
            let probes = ProbeFrame::orthopoly(&space)?;
            let c = build_frame(&space, &t.c, seed, 0)?;
            let d = build_frame(&space, &t.d, seed, 1)?;
            let params = WeakGapParams { samples: t.samples, inner_tol: t.inner_tol, seed, ascent_sweeps: t.ascent_sweeps };
            let est = dw_estimate(&space, &c, &d, &probes, &params)?;
            json!({ "space_dim": space.len(), "c_dim": c.dim(), "d_dim": d.dim(), "estimate": est })
        }
        Task::WeakgapProperties(t) => weakgap_properties_task(mu.as_ref().unwrap(), t, seed, &mut tables)?,
        Task::Truncation(t) => truncation_task(mu.as_ref().unwrap(), t, seed, &mut tables)?,
    };
    let report = json!({
        "scenario": sc.name,
        "task": sc.task.kind(),
        "seed": sc.seed,
        "measure": sc.measure,
        "result": result,
    });
    Ok(ScenarioOutput { report, tables })
}

/// Samples a [`VectorSpec`] at the nodes.
pub fn eval_vector(space: &DiscretizedSpace, spec: &VectorSpec) -> Result<Vec<f64>> {
    let values = match spec {
        VectorSpec::Unit => space.ones(),
        VectorSpec::Polynomial { coeffs } => {
            space.sample(|x| coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c))
        }
        VectorSpec::Reciprocal => space.sample(|x| 1.0 / x),
        VectorSpec::SinLog { freq } => space.sample(|x| (std::f64::consts::TAU * freq * x.ln()).sin()),
        VectorSpec::Values { values } => {
            if values.len() != space.len() {
                return Err(Error::InvalidArgument(format!(
                    "{} values given for a space of dimension {}",
                    values.len(),
                    space.len()
                )));
            }
            values.clone()
        }
    };
    if let Some(i) = values.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFiniteEvaluation { node: space.nodes()[i], value: values[i] });
    }
    Ok(values)
}

/// Builds an ambient-orthonormal frame; `role` separates the random streams
/// of different frames of one scenario.
pub fn build_frame(space: &DiscretizedSpace, spec: &FrameSpec, seed: u64, role: u64) -> Result<SubspaceFrame> {
    let frame = match spec {
        FrameSpec::Krylov { degree, g } => krylov_frame(space, &eval_vector(space, g)?, *degree, InnerProduct::Ambient)?,
        FrameSpec::Probes { indices } => {
            let probes = ProbeFrame::orthopoly(space)?;
            let basis = indices
                .iter()
                .map(|&i| {
                    probes.frame().basis.get(i).cloned().ok_or(Error::OutOfRange { index: i, limit: probes.len() })
                })
                .collect::<Result<Vec<_>>>()?;
            SubspaceFrame::from_vectors(space, &basis, InnerProduct::Ambient)?
        }
        FrameSpec::Vectors { vectors } => SubspaceFrame::from_vectors(space, vectors, InnerProduct::Ambient)?,
        FrameSpec::Random { dim } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(role);
            let vectors: Vec<Vec<f64>> =
                (0..*dim).map(|_| (0..space.len()).map(|_| StandardNormal.sample(&mut rng)).collect()).collect();
            SubspaceFrame::from_vectors(space, &vectors, InnerProduct::Ambient)?
        }
        FrameSpec::Full => SubspaceFrame::full(space, InnerProduct::Ambient),
    };
    if frame.is_empty() {
        return Err(Error::InvalidArgument("frame specification produced an empty frame".into()));
    }
    Ok(frame)
}

fn moment_source(mu: &SpectralMeasure, order: usize, source: MomentSource) -> Result<MomentSequence> {
    match source {
        MomentSource::Quadrature => compute_moments(&DiscretizedSpace::discretize(mu)?, order),
        MomentSource::ClosedForm => closed_form_moments(mu, order),
    }
}

/// `None` where the reference vanishes (odd moments of symmetric measures).
fn relative_error(a: f64, b: f64) -> Option<f64> {
    (b != 0.0).then(|| ((a - b) / b).abs())
}

fn moments_task(mu: &SpectralMeasure, t: &MomentsTask, tables: &mut Vec<Table>) -> Result<Value> {
    let space = DiscretizedSpace::discretize(mu)?;
    let s = compute_moments(&space, t.order)?;
    let values = s.values();
    let closed = if t.compare_closed_form { Some(closed_form_moments(mu, t.order)?.values()) } else { None };
    let errors: Option<Vec<Option<f64>>> =
        closed.as_ref().map(|c| values.iter().zip(c).map(|(a, b)| relative_error(*a, *b)).collect());
    let mut table = Table::new("moments", &["n", "quadrature", "closed_form", "relative_error"]);
    for (n, v) in values.iter().enumerate() {
        table.push(vec![
            n.to_string(),
            cell(*v),
            opt_cell(closed.as_ref().map(|c| c[n])),
            opt_cell(errors.as_ref().and_then(|e| e[n])),
        ]);
    }
    tables.push(table);
    let hankel = if t.hankel { Some(hankel_psd_check(&s, DEFAULT_HANKEL_TOL)?) } else { None };
    Ok(json!({
        "space_dim": space.len(),
        "exactness_degree": space.exactness_degree(),
        "exactness_warning": s.exactness_warning,
        "quadrature": values,
        "closed_form": closed,
        "relative_errors": errors,
        "max_relative_error": errors.as_ref().map(|e| e.iter().flatten().cloned().fold(0.0, f64::max)),
        "hankel": hankel,
    }))
}

fn hamburger_task(t: &HamburgerTask, seed: u64, tables: &mut Vec<Table>) -> Result<Value> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut valid = Vec::new();
    let mut perturbed = Vec::new();
    let mut table = Table::new("hamburger", &["case", "atoms", "is_moment_sequence", "flipped_index", "first_failure_size"]);
    for case in 0..t.count {
        let atoms = rng.random_range(1..=t.max_atoms);
        let mut points: Vec<(f64, f64)> = Vec::with_capacity(atoms);
        while points.len() < atoms {
            let x: f64 = rng.random_range(-2.0..2.0);
            let w: f64 = rng.random_range(0.1..1.0);
            if points.iter().all(|p| (p.0 - x).abs() > 1e-3) {
                points.push((x, w));
            }
        }
        let mu = SpectralMeasure::atomic(&points)?;
        let s = closed_form_moments(&mu, t.order)?;
        let report = hankel_psd_check(&s, t.tol)?;
        table.push(vec![
            case.to_string(),
            atoms.to_string(),
            report.is_moment_sequence.to_string(),
            String::new(),
            report.first_failure_size.map(|k| k.to_string()).unwrap_or_default(),
        ]);
        valid.push(json!({ "atoms": atoms, "is_moment_sequence": report.is_moment_sequence,
                           "min_eigenvalue": report.min_eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min) }));

        let mut values = s.values();
        let k = rng.random_range(0..=t.order / 2);
        values[2 * k] = -values[2 * k];
        let report = hankel_psd_check(&MomentSequence::from_values(&values), t.tol)?;
        table.push(vec![
            case.to_string(),
            atoms.to_string(),
            report.is_moment_sequence.to_string(),
            (2 * k).to_string(),
            report.first_failure_size.map(|k| k.to_string()).unwrap_or_default(),
        ]);
        perturbed.push(json!({ "flipped_index": 2 * k, "is_moment_sequence": report.is_moment_sequence,
                               "first_failure_size": report.first_failure_size }));
    }
    tables.push(table);
    let passed = valid.iter().filter(|v| v["is_moment_sequence"] == true).count();
    let failed = perturbed.iter().filter(|v| v["is_moment_sequence"] == false).count();
    Ok(json!({
        "count": t.count,
        "order": t.order,
        "tol": t.tol,
        "valid_passed": passed,
        "perturbed_failed": failed,
        "all_valid_pass": passed == t.count,
        "all_perturbed_fail": failed == t.count,
        "valid": valid,
        "perturbed": perturbed,
    }))
}

fn determinacy_task(mu: &SpectralMeasure, t: &DeterminacyTask, tables: &mut Vec<Table>) -> Result<Value> {
    let carleman_report = match &t.carleman {
        Some(c) => {
            let s = moment_source(mu, c.order, c.source)?;
            let r = carleman(&s, c.tol);
            let mut table = Table::new("carleman", &["n", "term", "partial_sum"]);
            for (i, (a, b)) in r.terms.iter().zip(&r.partial_sums).enumerate() {
                table.push(vec![(i + 1).to_string(), cell(*a), cell(*b)]);
            }
            tables.push(table);
            Some(r)
        }
        None => None,
    };
    let series_report = match &t.series {
        Some(sp) => {
            let space = DiscretizedSpace::discretize(mu)?;
            let rc = stieltjes_recurrence(&space, sp.k)?;
            let r = determinacy_series_test(&rc, Complex64::new(sp.z0[0], sp.z0[1]), sp.tail_window, sp.tail_tol)?;
            let mut table = Table::new("series", &["k", "term", "partial_sum", "ratio"]);
            for (k, (a, b)) in r.terms.iter().zip(&r.partial_sums).enumerate() {
                let ratio = if k == 0 { None } else { r.ratios.get(k - 1).copied() };
                table.push(vec![k.to_string(), cell(*a), cell(*b), opt_cell(ratio)]);
            }
            tables.push(table);
            Some((space.len(), rc.degeneration.clone(), r))
        }
        None => None,
    };
    let determinate = carleman_report.as_ref().is_some_and(|r| {
        matches!(r.verdict, CarlemanVerdict::SatisfiedAtHorizon | CarlemanVerdict::FiniteSupportDeterminate)
    }) || series_report
        .as_ref()
        .is_some_and(|(_, _, r)| matches!(r.verdict, SeriesVerdict::DivergentTrend | SeriesVerdict::FiniteSupport));
    let indeterminate =
        series_report.as_ref().is_some_and(|(_, _, r)| r.verdict == SeriesVerdict::ConvergentTail);
    let indication = match (determinate, indeterminate) {
        (true, false) => "determinate-indicated",
        (false, true) => "indeterminate-indicated",
        (true, true) => "conflicting",
        (false, false) => "inconclusive",
    };
    Ok(json!({
        "carleman": carleman_report,
        "series": series_report.as_ref().map(|(d, notice, r)| json!({ "space_dim": d, "degeneration": notice, "report": r })),
        "indication": indication,
    }))
}

fn recurrence_task(mu: &SpectralMeasure, t: &RecurrenceTask, tables: &mut Vec<Table>) -> Result<Value> {
    let space = DiscretizedSpace::discretize(mu)?;
    let rc = stieltjes_recurrence(&space, t.k)?;
    let reference = |k: usize| -> Option<f64> {
        let k = k as f64;
        t.reference.map(|r| match r {
            ReferenceFamily::Legendre => k / (4.0 * k * k - 1.0).sqrt(),
            ReferenceFamily::Hermite => k.sqrt(),
        })
    };
    let mut table = Table::new("recurrence", &["k", "alpha", "beta", "reference_beta"]);
    let mut max_beta_error: Option<f64> = t.reference.map(|_| 0.0);
    for k in 0..rc.len() {
        let beta = rc.beta.get(k).copied();
        let r = reference(k + 1);
        if let (Some(b), Some(r), Some(m)) = (beta, r, max_beta_error.as_mut()) {
            *m = m.max((b - r).abs());
        }
        table.push(vec![k.to_string(), cell(rc.alpha[k]), opt_cell(beta), opt_cell(beta.and(r))]);
    }
    tables.push(table);
    // both reference families are symmetric
    let max_alpha_error = t.reference.map(|_| rc.alpha.iter().fold(0.0f64, |m, a| m.max(a.abs())));
    Ok(json!({
        "space_dim": space.len(),
        "recurrence": rc,
        "gram_deviation": gram_check(&space, &rc),
        "reference": t.reference,
        "max_beta_error": max_beta_error,
        "max_alpha_error": max_alpha_error,
    }))
}

fn solve_task(mu: &SpectralMeasure, t: &SolveTask, tables: &mut Vec<Table>) -> Result<Value> {
    let space = DiscretizedSpace::discretize(mu)?;
    let g = eval_vector(&space, &t.g)?;
    let r = solve_krylov(&space, &g, t.m_max, t.tol)?;
    let mut table = Table::new("solve", &["m", "residual", "graph_increment"]);
    for (i, m) in r.degrees.iter().enumerate() {
        let inc = if i == 0 { None } else { r.graph_increments.get(i - 1).copied() };
        table.push(vec![m.to_string(), cell(r.residuals[i]), opt_cell(inc)]);
    }
    tables.push(table);
    Ok(json!({ "space_dim": space.len(), "report": r }))
}

fn core_gap_task(mu: &SpectralMeasure, t: &CoreGapTask, tables: &mut Vec<Table>) -> Result<Value> {
    let space = DiscretizedSpace::discretize(mu)?;
    let g = eval_vector(&space, &t.g)?;
    let tests = t
        .tests
        .iter()
        .map(|n| Ok(TestFunction { name: n.name.clone(), values: eval_vector(&space, &n.vector)? }))
        .collect::<Result<Vec<_>>>()?;
    let r = core_condition_gap(&space, &g, t.m, &tests)?;
    let mut table = Table::new("core_gap", &["name", "m", "residual"]);
    for e in &r.entries {
        for (m, res) in e.residuals.iter().enumerate() {
            table.push(vec![e.name.clone(), m.to_string(), cell(*res)]);
        }
    }
    tables.push(table);
    let orthogonality = t.orthogonality_degree.map(|deg| {
        tests
            .iter()
            .map(|h| {
                let rel = |ip: InnerProduct| -> Vec<f64> {
                    (0..=deg)
                        .map(|n| {
                            let p = space.sample(|x| x.powi(n as i32));
                            space.dot(ip, &h.values, &p).abs() / (space.norm(ip, &h.values) * space.norm(ip, &p))
                        })
                        .collect()
                };
                let (ambient, graph) = (rel(InnerProduct::Ambient), rel(InnerProduct::Graph));
                let max = ambient.iter().chain(&graph).cloned().fold(0.0, f64::max);
                json!({ "name": h.name, "ambient": ambient, "graph": graph, "max_relative": max })
            })
            .collect::<Vec<_>>()
    });
    Ok(json!({ "report": r, "orthogonality": orthogonality }))
}

fn separation_table(r: &SeparationReport) -> Table {
    let mut table = Table::new("separation", &["sample", "separation"]);
    for (i, s) in r.sampled_range.iter().enumerate() {
        table.push(vec![i.to_string(), cell(*s)]);
    }
    table
}

fn random_frame(space: &DiscretizedSpace, rng: &mut ChaCha8Rng, dim: usize) -> Result<SubspaceFrame> {
    let vectors: Vec<Vec<f64>> =
        (0..dim).map(|_| (0..space.len()).map(|_| StandardNormal.sample(&mut *rng)).collect()).collect();
    SubspaceFrame::from_vectors(space, &vectors, InnerProduct::Ambient)
}

fn weakgap_properties_task(
    mu: &SpectralMeasure,
    t: &WeakgapPropertiesTask,
    seed: u64,
    tables: &mut Vec<Table>,
) -> Result<Value> {
    let space = DiscretizedSpace::discretize(mu)?;
    if space.len() > 8 || t.max_dim >= space.len() {
        return Err(Error::InvalidArgument("weak-gap property checks use spaces of dimension <= 8 and max_dim < D".into()));
    }
    let probes = ProbeFrame::orthopoly(&space)?;
    let params = WeakGapParams { samples: t.samples, inner_tol: t.inner_tol, seed, ascent_sweeps: t.ascent_sweeps };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut table = Table::new(
        "weakgap_properties",
        &["triple", "dims", "self", "nested", "dhat_ce", "dhat_cd", "dhat_de", "triangle_slack", "oracle_diff"],
    );
    let (mut self_max, mut nested_max, mut worst_slack, mut oracle_max) = (0.0f64, 0.0f64, f64::INFINITY, 0.0f64);
    let mut entries = Vec::new();
    for i in 0..t.triples {
        let dims: Vec<usize> = (0..3).map(|_| rng.random_range(1..=t.max_dim)).collect();
        let c = random_frame(&space, &mut rng, dims[0])?;
        let d = random_frame(&space, &mut rng, dims[1])?;
        let e = random_frame(&space, &mut rng, dims[2])?;
        let self_gap = dw_estimate(&space, &c, &c, &probes, &params)?.dhat;
        let sub = SubspaceFrame::from_vectors(&space, &c.basis[..1], InnerProduct::Ambient)?;
        let nested = dw_directed(&space, &sub, &c, &probes, &params)?;
        let ce = dw_estimate(&space, &c, &e, &probes, &params)?.dhat;
        let cd = dw_estimate(&space, &c, &d, &probes, &params)?.dhat;
        let de = dw_estimate(&space, &d, &e, &probes, &params)?.dhat;
        let slack = cd + de + 3.0 * t.inner_tol - ce;
        // oracle on a one-dimensional target: C restricted to at most two vectors
        let c2 = SubspaceFrame::from_vectors(&space, &c.basis[..c.dim().min(2)], InnerProduct::Ambient)?;
        let d1 = SubspaceFrame::from_vectors(&space, &d.basis[..1], InnerProduct::Ambient)?;
        let est = dw_directed(&space, &c2, &d1, &probes, &params)?;
        let oracle = brute_force_dw(&space, &c2, &d1, &probes, t.grid)?;
        let diff = (est - oracle).abs();
        self_max = self_max.max(self_gap);
        nested_max = nested_max.max(nested);
        worst_slack = worst_slack.min(slack);
        oracle_max = oracle_max.max(diff);
        table.push(vec![
            i.to_string(),
            format!("{}-{}-{}", dims[0], dims[1], dims[2]),
            cell(self_gap),
            cell(nested),
            cell(ce),
            cell(cd),
            cell(de),
            cell(slack),
            cell(diff),
        ]);
        entries.push(json!({ "dims": dims, "self": self_gap, "nested": nested, "dhat_ce": ce, "dhat_cd": cd,
                             "dhat_de": de, "triangle_slack": slack, "oracle_estimate": est, "oracle": oracle }));
    }
    tables.push(table);
    Ok(json!({
        "space_dim": space.len(),
        "params": params,
        "self_distance_max": self_max,
        "nested_max": nested_max,
        "triangle_min_slack": worst_slack,
        "oracle_max_diff": oracle_max,
        "triples": entries,
    }))
}

fn truncation_task(mu: &SpectralMeasure, t: &TruncationTask, seed: u64, tables: &mut Vec<Table>) -> Result<Value> {
    let space = master_space(mu, &t.n_grid, t.nodes_per_piece)?;
    let g = eval_vector(&space, &t.g)?;
    let panel = t
        .panel
        .iter()
        .map(|n| Ok(TestFunction { name: n.name.clone(), values: eval_vector(&space, &n.vector)? }))
        .collect::<Result<Vec<_>>>()?;
    let params = TruncationParams {
        n_grid: t.n_grid.clone(),
        degree: t.degree,
        weak_gap: WeakGapParams { samples: t.samples, inner_tol: t.inner_tol, seed, ascent_sweeps: t.ascent_sweeps },
    };
    let study = run_truncation_study(&space, &g, &panel, &params)?;
    let norms = monotone_norm_check(&space, &g, &t.n_grid, &t.norm_polynomials)?;

    let mut steps = Table::new(
        "truncation",
        &[
            "n", "nodes_inside", "degree", "krylov_dim", "mass_captured", "tail_mass", "graph_norm_gap",
            "nesting_residual", "dhat_to_l", "complement_dim", "complement_sup_weak_norm",
        ],
    );
    let mut proj = Table::new("projection", &["n", "name", "mask_error", "projection_error", "identity_deviation"]);
    for s in &study.steps {
        steps.push(vec![
            cell(s.n),
            s.nodes_inside.to_string(),
            s.degree.to_string(),
            s.krylov_dim.to_string(),
            cell(s.mass_captured),
            cell(s.tail_mass),
            cell(s.graph_norm_gap),
            opt_cell(s.nesting_residual),
            cell(s.dhat_to_l.dhat),
            s.complement_dim.to_string(),
            cell(s.complement_sup_weak_norm),
        ]);
        for p in &s.panel {
            proj.push(vec![cell(s.n), p.name.clone(), cell(p.mask_error), cell(p.projection_error), cell(p.identity_deviation)]);
        }
    }
    let mut norm_table = Table::new("norms", &["polynomial", "n", "ambient", "graph", "full_ambient", "full_graph"]);
    for (j, nt) in norms.iter().enumerate() {
        for (i, n) in nt.n_grid.iter().enumerate() {
            norm_table.push(vec![
                j.to_string(),
                cell(*n),
                cell(nt.ambient[i]),
                cell(nt.graph[i]),
                cell(nt.full_ambient),
                cell(nt.full_graph),
            ]);
        }
    }
    tables.extend([steps, proj, norm_table]);
    Ok(json!({ "study": study, "norm_tables": norms }))
}
