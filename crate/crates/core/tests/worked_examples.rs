//! Small worked examples per module, checked through the public API.

mod common;

use std::f64::consts::{E, SQRT_2};

use num_complex::Complex64;
use skl::error::Error;
use skl::frame::SubspaceFrame;
use skl::krylov::*;
use skl::metrics::*;
use skl::moments::*;
use skl::orthopoly::*;
use skl::truncation::*;
use skl::{DiscretizedSpace, InnerProduct, SpectralMeasure};

fn space(mu: &SpectralMeasure) -> DiscretizedSpace {
    DiscretizedSpace::discretize(mu).unwrap()
}

fn pm_one() -> SpectralMeasure {
    SpectralMeasure::atomic(&[(-1.0, 0.5), (1.0, 0.5)]).unwrap()
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

// measure_model

#[test]
fn lognormal_second_moment_is_e_squared() {
    let mu = SpectralMeasure::standard_lognormal(64).unwrap();
    let v = mu.integrate_real(|x| x * x).unwrap();
    assert!(close(v / (E * E), 1.0, 1e-12));
    let oracle = common::simpson(&|u: f64| (2.0 * u).exp() * common::normal_pdf(u), -38.0, 42.0, 1e-13);
    assert!(close(oracle / (E * E), 1.0, 1e-10));
}

#[test]
fn mixed_measure_adds_masses_and_nodes() {
    let mu = SpectralMeasure::from_json(
        r#"{"atoms":[{"x":0,"w":0.3}],"ac":[{"kind":"uniform","support":[1,2],"params":{"mass":0.7},"nodes":12}]}"#,
    )
    .unwrap();
    assert!(close(mu.total_mass(), 1.0, 1e-15));
    assert_eq!(space(&mu).len(), 13);
}

#[test]
fn two_atoms_discretize_to_their_nodes() {
    let s = space(&pm_one());
    assert_eq!(s.nodes(), &[-1.0, 1.0]);
    assert_eq!(s.weights(), &[0.5, 0.5]);
}

#[test]
fn uniform_sixteen_point_rule_is_exact_to_degree_31() {
    let s = space(&SpectralMeasure::uniform(0.0, 1.0, 1.0, 16).unwrap());
    let m = compute_moments(&s, 31).unwrap();
    for n in 0..=31 {
        assert!(close(m.get(n), 1.0 / (n as f64 + 1.0), 1e-12), "s_{n}");
    }
}

#[test]
fn truncation_examples() {
    assert_eq!(pm_one().truncate(2.0).unwrap(), pm_one());
    assert!(matches!(pm_one().truncate(0.5), Err(Error::EmptyTruncation(_))));
    let g = SpectralMeasure::standard_gaussian(64).unwrap().truncate(1.0).unwrap();
    assert!(close(g.total_mass(), 1.0 - common::gaussian_tail(1.0), 1e-12));
    assert!(close(g.total_mass(), 0.6827, 1e-4));
}

#[test]
fn spectral_gap_examples() {
    let gap = |mu: SpectralMeasure| mu.spectral_gap_at_zero(1e-12);
    let u = gap(SpectralMeasure::uniform(1.0, 2.0, 1.0, 8).unwrap());
    assert!(u.zero_in_resolvent && u.gap_lower_bound == 1.0);
    let d = gap(SpectralMeasure::atomic(&[(0.0, 1.0), (1.0, 1.0)]).unwrap());
    assert!(!d.zero_in_resolvent && d.gap_lower_bound == 0.0);
    let s = gap(SpectralMeasure::uniform(-1.0, 1.0, 1.0, 8).unwrap());
    assert!(!s.zero_in_resolvent && s.gap_lower_bound == 0.0);
}

// moments

#[test]
fn moment_examples() {
    let s = compute_moments(&space(&pm_one()), 6).unwrap();
    assert_eq!(s.values(), vec![1.0, 0.0, 1.0, 0.0, 1.0, 0.0, 1.0]);
    let g = compute_moments(&space(&SpectralMeasure::standard_gaussian(64).unwrap()), 6).unwrap();
    for (n, v) in [(2, 1.0), (4, 3.0), (6, 15.0)] {
        assert!(close(g.get(n), v, 1e-12 * v));
    }
    let l = compute_moments(&space(&SpectralMeasure::standard_lognormal(64).unwrap()), 2).unwrap();
    assert!(close(l.get(1), 0.5f64.exp(), 1e-13));
    assert!(close(l.get(2), E * E, 1e-12));
}

#[test]
fn hankel_examples() {
    let bad = hankel_psd_check(&MomentSequence::from_values(&[1.0, 0.0, -1.0]), 1e-10).unwrap();
    assert!(!bad.is_moment_sequence);
    assert_eq!(bad.first_failure_size, Some(2));
    let s = compute_moments(&space(&pm_one()), 4).unwrap();
    let h = hankel_psd_check(&s, 1e-10).unwrap();
    assert!(h.is_moment_sequence);
    assert!(h.min_eigenvalues[2].abs() < 1e-12, "singular at size 3");
}

#[test]
fn carleman_examples() {
    let s = compute_moments(&space(&pm_one()), 200).unwrap();
    let c = carleman(&s, 1e-6);
    assert_eq!(c.verdict, CarlemanVerdict::SatisfiedAtHorizon);
    assert!(close(*c.partial_sums.last().unwrap(), 100.0, 1e-12));
    let l = closed_form_moments(&SpectralMeasure::standard_lognormal(64).unwrap(), 200).unwrap();
    let c = carleman(&l, 1e-6);
    assert_eq!(c.verdict, CarlemanVerdict::ConvergentTail);
    assert!(close(*c.partial_sums.last().unwrap(), 1.0 / (E - 1.0), 1e-12));
}

#[test]
fn classification_examples() {
    let class = |mu: SpectralMeasure| classify_vector(&closed_form_moments(&mu, 80).unwrap()).unwrap();
    assert_eq!(class(SpectralMeasure::uniform(1.0, 2.0, 1.0, 8).unwrap()).verdict, VectorClass::Bounded);
    let g = class(SpectralMeasure::standard_gaussian(64).unwrap());
    assert!(g.quasi_analytic_indicated && !g.bounded_indicated);
    assert_eq!(class(SpectralMeasure::standard_lognormal(64).unwrap()).verdict, VectorClass::BeyondQuasiAnalytic);
}

// orthopoly

#[test]
fn two_point_recurrence() {
    let s = space(&pm_one());
    let rc = stieltjes_recurrence(&s, 5).unwrap();
    assert_eq!(rc.len(), 2);
    assert!(rc.degeneration.is_some());
    assert!(rc.alpha.iter().all(|a| a.abs() < 1e-15));
    assert!(close(rc.beta[0], 1.0, 1e-15));
    let j = jacobi_matrix(&rc, 2).unwrap();
    assert_eq!(j.entries, vec![vec![0.0, rc.beta[0]], vec![rc.beta[0], 0.0]]);
    assert!(close(j.eigenvalues[0], -1.0, 1e-14) && close(j.eigenvalues[1], 1.0, 1e-14));
    let one = Complex64::new(1.0, 0.0);
    assert!(close(eval_orthonormal(&rc, 0, one).unwrap().re, 1.0, 1e-15));
    assert!(close(eval_orthonormal(&rc, 1, one).unwrap().re, 1.0, 1e-14));
    let series = determinacy_series_test(&rc, Complex64::new(0.0, 1.0), 4, 1e-4).unwrap();
    assert_eq!(series.verdict, SeriesVerdict::FiniteSupport);
}

#[test]
fn hermite_p2_and_legendre_nodes() {
    let g = space(&SpectralMeasure::standard_gaussian(64).unwrap());
    let rc = stieltjes_recurrence(&g, 5).unwrap();
    assert!(close(eval_orthonormal(&rc, 2, Complex64::new(0.0, 0.0)).unwrap().re, -1.0 / SQRT_2, 1e-12));
    let u = space(&SpectralMeasure::uniform(-1.0, 1.0, 1.0, 20).unwrap());
    let rc = stieltjes_recurrence(&u, 8).unwrap();
    let j = jacobi_matrix(&rc, 3).unwrap();
    let r = (0.6f64).sqrt();
    for (e, want) in j.eigenvalues.iter().zip([-r, 0.0, r]) {
        assert!(close(*e, want, 1e-12));
    }
    let j = jacobi_matrix(&rc, 8).unwrap();
    for (a, b) in j.eigenvalues.iter().zip(j.eigenvalues.iter().rev()) {
        assert!(close(*a, -b, 1e-12), "spectrum symmetric");
    }
}

// krylov_struct

#[test]
fn krylov_frame_examples() {
    let s = space(&pm_one());
    let f = krylov_frame(&s, &s.ones(), 3, InnerProduct::Ambient).unwrap();
    assert_eq!(f.dim(), 2);
    assert!(f.notice.is_some());
    assert!(graph_complement_frame(&s, &SubspaceFrame::full(&s, InnerProduct::Graph)).unwrap().is_empty());

    let u = space(&SpectralMeasure::uniform(-1.0, 1.0, 1.0, 16).unwrap());
    let f = krylov_frame(&u, &u.ones(), 5, InnerProduct::Graph).unwrap();
    assert!(f.gram_deviation(&u) <= 1e-8);

    let u12 = space(&SpectralMeasure::uniform(1.0, 2.0, 1.0, 64).unwrap());
    let k = krylov_frame(&u12, &u12.ones(), 5, InnerProduct::Graph).unwrap();
    let comp = graph_complement_frame(&u12, &k).unwrap();
    assert_eq!(comp.dim(), 58);
    assert!(comp.max_cross_gram(&u12, &k, InnerProduct::Graph) <= 1e-8);
}

#[test]
fn apply_a_examples() {
    let s = space(&pm_one());
    assert_eq!(apply_a(&s, &s.ones()), vec![-1.0, 1.0]);
    let u = space(&SpectralMeasure::uniform(0.0, 3.0, 1.0, 6).unwrap());
    let x = u.sample(|l| l.sin());
    let twice = apply_a(&u, &apply_a(&u, &x));
    for ((t, v), l) in twice.iter().zip(&x).zip(u.nodes()) {
        assert!(close(*t, l * l * v, 1e-15 * (1.0 + t.abs())));
    }
}

#[test]
fn solve_examples() {
    let s = space(&SpectralMeasure::atomic(&[(1.0, 0.5), (2.0, 0.5)]).unwrap());
    let r = solve_krylov(&s, &s.ones(), 1, 1e-12).unwrap();
    assert!(r.residuals[1] <= 1e-12);
    let z = space(&SpectralMeasure::atomic(&[(0.0, 0.5), (2.0, 0.5)]).unwrap());
    assert!(matches!(solve_krylov(&z, &z.ones(), 2, 1e-12), Err(Error::NotInRange(_))));

    let u = space(&SpectralMeasure::uniform(1.0, 2.0, 1.0, 64).unwrap());
    let r = solve_krylov(&u, &u.ones(), 15, 1e-10).unwrap();
    // Dense least-squares oracle: the exact solution is 1/lambda.
    let err = u.norm(InnerProduct::Ambient, &r.solution.iter().zip(u.nodes()).map(|(f, l)| f - 1.0 / l).collect::<Vec<_>>());
    assert!(err <= 1e-9, "{err:e}");
}

#[test]
fn core_gap_examples() {
    let u = space(&SpectralMeasure::uniform(1.0, 2.0, 1.0, 64).unwrap());
    let tests = [
        TestFunction { name: "reciprocal".into(), values: u.sample(|l| 1.0 / l) },
        TestFunction { name: "cubic".into(), values: u.sample(|l| 1.0 - 2.0 * l + l * l * l) },
    ];
    let r = core_condition_gap(&u, &u.ones(), 15, &tests).unwrap();
    assert!(*r.entries[0].residuals.last().unwrap() <= 1e-8);
    assert!(r.entries[1].residuals[3..].iter().all(|x| *x <= 1e-10));

    let l = space(&SpectralMeasure::standard_lognormal(300).unwrap());
    let h = TestFunction { name: "sin_log".into(), values: l.sample(|x| (2.0 * std::f64::consts::PI * x.ln()).sin()) };
    let r = core_condition_gap(&l, &l.ones(), 12, &[h]).unwrap();
    let e = &r.entries[0];
    assert!(e.residuals.iter().all(|x| close(*x, e.graph_norm, 1e-6 * e.graph_norm)));
}

#[test]
fn truncation_projection_examples() {
    let s = space(&pm_one());
    assert_eq!(truncation_projection(&s, &s.ones(), 2.0), s.ones());
    assert_eq!(truncation_projection(&s, &s.ones(), 0.5), vec![0.0, 0.0]);
    let g = master_space(&SpectralMeasure::standard_gaussian(32).unwrap(), &[1.0], None).unwrap();
    let p = truncation_projection(&g, &g.ones(), 1.0);
    let diff: Vec<f64> = g.ones().iter().zip(&p).map(|(a, b)| a - b).collect();
    let err = g.norm(InnerProduct::Ambient, &diff).powi(2);
    assert!(close(err, common::gaussian_tail(1.0), 1e-12) && close(err, 0.3173, 1e-4));
}

// subspace_metrics

#[test]
fn separation_endpoints() {
    let s = space(&SpectralMeasure::atomic(&[(1.0, 0.2), (2.0, 0.3), (3.0, 0.5)]).unwrap());
    let m = SubspaceFrame::from_vectors(&s, &[vec![1.0, 0.0, 0.0]], InnerProduct::Ambient).unwrap();
    let n = SubspaceFrame::from_vectors(&s, &[vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 1.0]], InnerProduct::Ambient).unwrap();
    let r = separation_range(&s, &m, &n, 8, 1, DEFAULT_KINT_THRESHOLD).unwrap();
    assert!(r.sigma_max.abs() < 1e-15 && close(r.min_separation, SQRT_2, 1e-15) && r.trivial_intersection_indicated);
    let r = separation_range(&s, &m, &m, 8, 1, DEFAULT_KINT_THRESHOLD).unwrap();
    assert!(close(r.sigma_max, 1.0, 1e-15) && r.min_separation < 1e-12);
}

#[test]
fn kint_two_atoms_is_degenerate() {
    let s = space(&SpectralMeasure::atomic(&[(1.0, 0.5), (2.0, 0.5)]).unwrap());
    let r = kint_indicator(&s, &s.ones(), 0, 1, DEFAULT_KINT_THRESHOLD, 8, 1).unwrap();
    assert!(r.degenerate && r.separation.is_none());
}

#[test]
fn gaussian_kint_separation_grows_with_m_big() {
    let s = space(&SpectralMeasure::standard_gaussian(64).unwrap());
    let sep = |m_big| kint_indicator(&s, &s.ones(), 5, m_big, DEFAULT_KINT_THRESHOLD, 0, 1).unwrap().separation.unwrap();
    let (a, b) = (sep(40), sep(60));
    assert!(b.sigma_max < a.sigma_max && b.min_separation > a.min_separation);
    assert!(a.min_separation > 1.40);
}

#[test]
fn weak_norm_examples() {
    let s = space(&SpectralMeasure::uniform(-1.0, 1.0, 1.0, 12).unwrap());
    let probes = ProbeFrame::orthopoly(&s).unwrap();
    let v = &probes.frame().basis;
    assert!(close(weak_norm(&s, &v[0], &probes), 0.5, 1e-12));
    assert!(close(weak_norm(&s, &v[1], &probes), 0.25, 1e-12));
    assert_eq!(weak_norm(&s, &vec![0.0; s.len()], &probes), 0.0);
}

#[test]
fn dhat_examples() {
    let s = space(&SpectralMeasure::uniform(-1.0, 1.0, 1.0, 12).unwrap());
    let probes = ProbeFrame::orthopoly(&s).unwrap();
    let v = &probes.frame().basis;
    let params = WeakGapParams::new(16, 3);
    let c = SubspaceFrame::from_vectors(&s, &[v[0].clone(), v[3].clone()], InnerProduct::Ambient).unwrap();
    let big = SubspaceFrame::from_vectors(&s, &[v[0].clone(), v[3].clone(), v[5].clone()], InnerProduct::Ambient).unwrap();
    assert!(dw_estimate(&s, &c, &c, &probes, &params).unwrap().dhat <= 1e-6);
    assert!(dw_directed(&s, &c, &big, &probes, &params).unwrap() <= 1e-6);

    let line = |k: usize| SubspaceFrame::from_vectors(&s, &[v[k].clone()], InnerProduct::Ambient).unwrap();
    let est = dw_directed(&s, &line(0), &line(10), &probes, &params).unwrap();
    let grid = brute_force_dw(&s, &line(0), &line(10), &probes, 2000).unwrap();
    assert!((0.499..=0.5 + 1e-12).contains(&est), "{est}");
    assert!(close(est, grid, 1e-6));
}

// truncation_lab

#[test]
fn two_atom_study_skips_the_empty_step() {
    let mu = SpectralMeasure::atomic(&[(-1.0, 0.5), (1.0, 0.5)]).unwrap();
    let s = master_space(&mu, &[0.5, 2.0], None).unwrap();
    let params = TruncationParams { n_grid: vec![0.5, 2.0], degree: 3, weak_gap: WeakGapParams::new(4, 1) };
    let panel = [TestFunction { name: "one".into(), values: s.ones() }];
    let study = run_truncation_study(&s, &s.ones(), &panel, &params).unwrap();
    assert!(study.notices.iter().any(|n| n.contains("empty")));
    let last = study.steps.last().unwrap();
    assert!(last.panel[0].projection_error <= 1e-10 && last.graph_norm_gap <= 1e-10);
}

#[test]
fn norm_monotonicity_examples() {
    let grid = [0.5, 1.0, 2.0, 3.0];
    let g = master_space(&SpectralMeasure::standard_gaussian(32).unwrap(), &grid, None).unwrap();
    let t = monotone_norm_check(&g, &g.ones(), &grid, &[vec![1.0], vec![0.0, 1.0]]).unwrap();
    for (n, a) in grid.iter().zip(&t[0].ambient) {
        assert!(close(a * a, 1.0 - common::gaussian_tail(*n), 1e-10));
    }
    assert!(t.iter().all(|x| x.nondecreasing && x.bounded_by_full));

    let u = space(&SpectralMeasure::uniform(-1.0, 1.0, 1.0, 8).unwrap());
    let t = monotone_norm_check(&u, &u.ones(), &[1.0, 2.0], &[vec![0.0, 0.0, 1.0]]).unwrap();
    assert_eq!(t[0].ambient, vec![t[0].full_ambient; 2]);
}
