//! Property tests for the structural invariants of each module.

use std::f64::consts::{PI, SQRT_2};

use nalgebra::DMatrix;
use proptest::prelude::*;
use skl::frame::SubspaceFrame;
use skl::krylov::{krylov_frame, solve_krylov, truncation_projection, TestFunction};
use skl::metrics::{dw_directed, dw_estimate, separation_range, weak_norm, ProbeFrame, WeakGapParams};
use skl::moments::{carleman, classify_vector, closed_form_moments, compute_moments, hankel_psd_check, VectorClass};
use skl::orthopoly::{gauss_rule, gram_check, stieltjes_recurrence};
use skl::truncation::{master_space, run_truncation_study, TruncationParams};
use skl::{DiscretizedSpace, InnerProduct, SpectralMeasure};

/// Distinct atoms on a 0.1 grid in `[-3, 3]`, with a small jitter.
fn atoms(max: usize) -> impl Strategy<Value = Vec<(f64, f64)>> {
    proptest::sample::subsequence((0..61).collect::<Vec<i32>>(), 2..=max).prop_flat_map(|idx| {
        let n = idx.len();
        (Just(idx), prop::collection::vec(0.05f64..1.0, n), prop::collection::vec(-0.03f64..0.03, n))
            .prop_map(|(idx, w, j)| idx.iter().zip(w).zip(j).map(|((i, w), j)| ((*i - 30) as f64 * 0.1 + j, w)).collect())
    })
}

fn atomic_space(a: &[(f64, f64)]) -> DiscretizedSpace {
    DiscretizedSpace::discretize(&SpectralMeasure::atomic(a).unwrap()).unwrap()
}

fn vector(d: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-2.0f64..2.0, d)
}

fn frame(space: &DiscretizedSpace, vs: &[Vec<f64>]) -> SubspaceFrame {
    SubspaceFrame::from_vectors(space, vs, InnerProduct::Ambient).unwrap()
}

/// `int_a^b p(x)^2 (1 + c x^2) dx / (b - a)` from the coefficients.
fn uniform_square_integral(p: &[f64], a: f64, b: f64, c: f64) -> f64 {
    let mut sq = vec![0.0; 2 * p.len() + 1];
    for (i, x) in p.iter().enumerate() {
        for (j, y) in p.iter().enumerate() {
            sq[i + j] += x * y;
            sq[i + j + 2] += c * x * y;
        }
    }
    sq.iter().enumerate().map(|(k, s)| s * (b.powi(k as i32 + 1) - a.powi(k as i32 + 1)) / (k as f64 + 1.0)).sum::<f64>()
        / (b - a)
}

fn horner(p: &[f64], x: f64) -> f64 {
    p.iter().rev().fold(0.0, |acc, c| acc * x + c)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn discretization_is_isometric_on_polynomials(
        a in -2.0f64..1.0, width in 0.5f64..3.0, p in prop::collection::vec(-1.0f64..1.0, 1..=14)
    ) {
        let b = a + width;
        let space = DiscretizedSpace::discretize(&SpectralMeasure::uniform(a, b, 1.0, 16).unwrap()).unwrap();
        let h = space.sample(|x| horner(&p, x));
        let ambient = uniform_square_integral(&p, a, b, 0.0).sqrt();
        let graph = uniform_square_integral(&p, a, b, 1.0).sqrt();
        prop_assume!(ambient > 1e-6);
        prop_assert!((space.norm(InnerProduct::Ambient, &h) - ambient).abs() <= 1e-10 * ambient);
        prop_assert!((space.norm(InnerProduct::Graph, &h) - graph).abs() <= 1e-10 * graph);
    }

    #[test]
    fn graph_norm_dominates_ambient(a in atoms(8), seed in vector(8)) {
        let space = atomic_space(&a);
        let x = &seed[..space.len()];
        prop_assert!(space.norm(InnerProduct::Ambient, x) <= space.norm(InnerProduct::Graph, x));
    }

    #[test]
    fn truncated_mass_is_monotone(mut radii in prop::collection::vec(0.05f64..6.0, 2..6)) {
        radii.sort_by(|x, y| x.partial_cmp(y).unwrap());
        let mu = SpectralMeasure::standard_gaussian(32).unwrap();
        let masses: Vec<f64> = radii.iter().map(|n| mu.truncate(*n).map(|t| t.total_mass()).unwrap_or(0.0)).collect();
        prop_assert!(masses.windows(2).all(|w| w[0] <= w[1] + 1e-15));
        prop_assert!(masses.iter().all(|m| *m <= mu.total_mass() + 1e-15));
        let far = mu.truncate(40.0).unwrap().total_mass();
        prop_assert!((far - mu.total_mass()).abs() < 1e-12);
    }

    #[test]
    fn graph_tail_identity(a in atoms(8), f in vector(8), n in 0.0f64..3.0) {
        let space = atomic_space(&a);
        let f = &f[..space.len()];
        let masked = truncation_projection(&space, f, n);
        let diff: Vec<f64> = f.iter().zip(&masked).map(|(x, y)| x - y).collect();
        let lhs = space.norm(InnerProduct::Graph, &diff).powi(2);
        let rhs: f64 = space.nodes().iter().zip(space.weights()).zip(f)
            .filter(|((l, _), _)| l.abs() > n)
            .map(|((l, w), v)| w * (1.0 + l * l) * v * v)
            .sum();
        prop_assert!((lhs - rhs).abs() <= 1e-10 * rhs.max(1e-300));
    }

    #[test]
    fn atomic_moments_pass_hankel_and_are_log_convex(a in atoms(8)) {
        let s = compute_moments(&atomic_space(&a), 14).unwrap();
        let h = hankel_psd_check(&s, 1e-10).unwrap();
        prop_assert!(h.is_moment_sequence, "{:?}", h.first_failure_size);
        for n in 1..7 {
            let (lo, mid, hi) = (s.log_abs(2 * n - 2), s.log_abs(2 * n), s.log_abs(2 * n + 2));
            prop_assert!(2.0 * mid <= lo + hi + 1e-12 * (lo.abs() + hi.abs() + 1.0));
        }
    }

    #[test]
    fn carleman_and_classification_share_the_series(a in atoms(6)) {
        let s = compute_moments(&atomic_space(&a), 40).unwrap();
        let c = carleman(&s, 1e-6);
        let v = classify_vector(&s).unwrap();
        let last = *c.partial_sums.last().unwrap();
        prop_assert!((last - v.qa_partial_sum).abs() <= 1e-12 * last.abs());
    }

    #[test]
    fn compact_uniform_is_bounded(a in 0.05f64..3.0, width in 0.05f64..3.0) {
        let mu = SpectralMeasure::uniform(a, a + width, 1.0, 16).unwrap();
        let v = classify_vector(&closed_form_moments(&mu, 80).unwrap()).unwrap();
        prop_assert_eq!(v.verdict, VectorClass::Bounded);
    }

    #[test]
    fn stieltjes_gram_gauss_and_degeneration(a in atoms(8)) {
        let space = atomic_space(&a);
        let d = space.len();
        let rc = stieltjes_recurrence(&space, d).unwrap();
        prop_assert!(gram_check(&space, &rc) <= 1e-8);
        prop_assert!(rc.degeneration.is_none());
        let over = stieltjes_recurrence(&space, d + 2).unwrap();
        prop_assert_eq!(over.len(), d);
        prop_assert!(over.degeneration.is_some());

        let q = krylov_frame(&space, &space.ones(), d - 1, InnerProduct::Ambient).unwrap();
        for k in 0..d - 1 {
            let b = space.dot(InnerProduct::Ambient, &space.apply_a(&q.basis[k]), &q.basis[k + 1]);
            prop_assert!((b - rc.beta[k]).abs() <= 1e-8 * rc.beta[k].abs().max(1.0));
        }

        let s = compute_moments(&space, 2 * d).unwrap();
        for m in 1..=d {
            let rule = gauss_rule(&rc, m).unwrap();
            for n in 0..2 * m {
                let q: f64 = rule.nodes.iter().zip(&rule.weights).map(|(x, w)| w * x.powi(n as i32)).sum();
                let scale: f64 = space.nodes().iter().zip(space.weights()).map(|(x, w)| w * x.abs().powi(n as i32)).sum();
                prop_assert!((q - s.get(n)).abs() <= 1e-8 * scale, "m={} n={} {} vs {}", m, n, q, s.get(n));
            }
        }
    }

    #[test]
    fn solve_residuals_are_nonincreasing(a in atoms(8), g in prop::collection::vec(0.1f64..2.0, 8)) {
        let a: Vec<(f64, f64)> = a.into_iter().filter(|(x, _)| x.abs() > 0.05).collect();
        prop_assume!(a.len() >= 2);
        let space = atomic_space(&a);
        let r = solve_krylov(&space, &g[..space.len()], space.len(), 1e-12).unwrap();
        prop_assert!(r.nonincreasing);
        prop_assert!(r.residuals.windows(2).all(|w| w[1] <= w[0] * (1.0 + 1e-12) + 1e-15));
    }

    #[test]
    fn graph_krylov_images_stay_in_next_krylov_space(a in atoms(8), m in 0usize..5) {
        let space = atomic_space(&a);
        prop_assume!(m + 2 <= space.len());
        let g = space.ones();
        let kv = krylov_frame(&space, &g, m, InnerProduct::Graph).unwrap();
        let next = krylov_frame(&space, &g, m + 1, InnerProduct::Ambient).unwrap();
        for q in &kv.basis {
            let image = space.apply_a(q);
            let scale = space.norm(InnerProduct::Ambient, &image).max(1e-300);
            prop_assert!(next.residual_norm(&space, &image) <= 1e-8 * scale.max(1.0));
        }
    }

    #[test]
    fn complement_is_invariant_under_the_adjoint(a in atoms(8), m in 1usize..5) {
        let space = atomic_space(&a);
        prop_assume!(m + 2 <= space.len());
        let k = krylov_frame(&space, &space.ones(), m, InnerProduct::Ambient).unwrap();
        let comp = k.complement(&space);
        let lower = krylov_frame(&space, &space.ones(), m - 1, InnerProduct::Ambient).unwrap();
        for c in &comp.basis {
            let image = space.apply_a(c);
            for p in &lower.basis {
                prop_assert!(space.dot(InnerProduct::Ambient, &image, p).abs() <= 1e-8);
            }
        }
    }

    #[test]
    fn truncation_projection_is_orthogonal(a in atoms(8), v in vector(8), w in vector(8), n in 0.0f64..3.0) {
        let space = atomic_space(&a);
        let (v, w) = (&v[..space.len()], &w[..space.len()]);
        let pv = truncation_projection(&space, v, n);
        prop_assert_eq!(truncation_projection(&space, &pv, n), pv.clone());
        let pw = truncation_projection(&space, w, n);
        let (x, y) = (space.dot(InnerProduct::Ambient, &pv, w), space.dot(InnerProduct::Ambient, v, &pw));
        prop_assert!((x - y).abs() <= 1e-14 * (1.0 + x.abs()));
    }

    #[test]
    fn weak_norm_is_below_ambient_norm(a in atoms(8), x in vector(8)) {
        let space = atomic_space(&a);
        let probes = ProbeFrame::orthopoly(&space).unwrap();
        let x = &x[..space.len()];
        prop_assert!(weak_norm(&space, x, &probes) <= space.norm(InnerProduct::Ambient, x) * (1.0 + 1e-12));
    }

    #[test]
    fn separation_range_bounds(
        a in atoms(8), vs in prop::collection::vec(vector(8), 2..5), split in 1usize..4, seed in any::<u64>()
    ) {
        let space = atomic_space(&a);
        let vs: Vec<Vec<f64>> = vs.iter().map(|v| v[..space.len()].to_vec()).collect();
        let split = split.min(vs.len() - 1);
        let (m, n) = (frame(&space, &vs[..split]), frame(&space, &vs[split..]));
        prop_assume!(!m.is_empty() && !n.is_empty());
        let r = separation_range(&space, &m, &n, 32, seed, 1.4).unwrap();
        prop_assert!(r.sigma_max >= 0.0 && r.sigma_max <= 1.0 + 1e-10);
        prop_assert!(r.min_separation >= 0.0 && r.min_separation <= SQRT_2 + 1e-10);
        prop_assert!(r.sampled_range.iter().all(|s| *s >= r.min_separation - 1e-8));
    }

    #[test]
    fn dhat_is_symmetric_and_nonnegative(a in atoms(8), vs in prop::collection::vec(vector(8), 2..5), seed in any::<u64>()) {
        let space = atomic_space(&a);
        let vs: Vec<Vec<f64>> = vs.iter().map(|v| v[..space.len()].to_vec()).collect();
        let (c, d) = (frame(&space, &vs[..1]), frame(&space, &vs[1..]));
        let probes = ProbeFrame::orthopoly(&space).unwrap();
        let params = WeakGapParams::new(6, seed);
        let x = dw_estimate(&space, &c, &d, &probes, &params).unwrap();
        let y = dw_estimate(&space, &d, &c, &probes, &params).unwrap();
        prop_assert_eq!(x.dhat, y.dhat);
        prop_assert_eq!(x.dhat, x.dw_cd.max(x.dw_dc));
        prop_assert!(x.dw_cd >= 0.0 && x.dw_dc >= 0.0);
    }

    #[test]
    fn dw_is_monotone_in_samples(a in atoms(8), vs in prop::collection::vec(vector(8), 3..6), seed in any::<u64>(), s in 1usize..10) {
        let space = atomic_space(&a);
        let vs: Vec<Vec<f64>> = vs.iter().map(|v| v[..space.len()].to_vec()).collect();
        let (c, d) = (frame(&space, &vs[..2]), frame(&space, &vs[2..]));
        let probes = ProbeFrame::orthopoly(&space).unwrap();
        let few = dw_directed(&space, &c, &d, &probes, &WeakGapParams::new(s, seed)).unwrap();
        let more = dw_directed(&space, &c, &d, &probes, &WeakGapParams::new(s + 5, seed)).unwrap();
        prop_assert!(more >= few);
    }
}

/// Ambient-orthonormal basis as plain columns scaled by `sqrt(w)`, so the
/// Euclidean geometry of the columns is the ambient geometry.
fn euclidean(space: &DiscretizedSpace, f: &SubspaceFrame) -> Vec<Vec<f64>> {
    f.basis.iter().map(|q| q.iter().zip(space.weights()).map(|(x, w)| x * w.sqrt()).collect()).collect()
}

fn point_on(basis: &[Vec<f64>], t: f64) -> Vec<f64> {
    match basis.len() {
        1 => basis[0].clone(),
        _ => basis[0].iter().zip(&basis[1]).map(|(a, b)| t.cos() * a + t.sin() * b).collect(),
    }
}

fn dist(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt()
}

/// Unit vectors of a span of dimension 1 (the two signs) or 2 (a circle).
fn unit_vectors(basis: &[Vec<f64>], lo: f64, hi: f64, steps: usize) -> Vec<(f64, Vec<f64>)> {
    if basis.len() == 1 {
        let neg: Vec<f64> = basis[0].iter().map(|v| -v).collect();
        return vec![(0.0, basis[0].clone()), (PI, neg)];
    }
    (0..=steps).map(|i| lo + (hi - lo) * i as f64 / steps as f64).map(|t| (t, point_on(basis, t))).collect()
}

/// `min_{x in S_N} min_{y in S_M} |x - y|` by an angle grid on both spheres,
/// refined by zooming in around the best pair.
fn sphere_search(em: &[Vec<f64>], en: &[Vec<f64>]) -> f64 {
    let (mut s_lo, mut s_hi, mut t_lo, mut t_hi) = (0.0, 2.0 * PI, 0.0, 2.0 * PI);
    let mut best = (f64::INFINITY, 0.0, 0.0);
    for round in 0..6 {
        let steps = if round == 0 { 360 } else { 40 };
        for (s, x) in unit_vectors(en, s_lo, s_hi, steps) {
            for (t, y) in unit_vectors(em, t_lo, t_hi, steps) {
                let d = dist(&x, &y);
                if d < best.0 {
                    best = (d, s, t);
                }
            }
        }
        let (ds, dt) = ((s_hi - s_lo) / steps as f64, (t_hi - t_lo) / steps as f64);
        (s_lo, s_hi, t_lo, t_hi) = (best.1 - 2.0 * ds, best.1 + 2.0 * ds, best.2 - 2.0 * dt, best.2 + 2.0 * dt);
    }
    best.0
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn min_separation_matches_sphere_search(
        a in atoms(8), vs in prop::collection::vec(vector(8), 2..=4), split in 1usize..3
    ) {
        let space = atomic_space(&a);
        let vs: Vec<Vec<f64>> = vs.iter().map(|v| v[..space.len()].to_vec()).collect();
        let split = split.min(vs.len() - 1);
        let (m, n) = (frame(&space, &vs[..split]), frame(&space, &vs[split..]));
        prop_assume!(!m.is_empty() && !n.is_empty() && m.dim() <= 2 && n.dim() <= 2);
        let r = separation_range(&space, &m, &n, 0, 1, 1.4).unwrap();
        let (em, en) = (euclidean(&space, &m), euclidean(&space, &n));
        let best = sphere_search(&em, &en);
        prop_assert!((best - r.min_separation).abs() <= 1e-3, "grid {} vs {}", best, r.min_separation);
    }

    #[test]
    fn zero_separation_iff_spans_intersect(
        a in atoms(8), shared in vector(8), vs in prop::collection::vec(vector(8), 2..=4), intersect in any::<bool>()
    ) {
        let space = atomic_space(&a);
        let d = space.len();
        let mut vs: Vec<Vec<f64>> = vs.iter().map(|v| v[..d].to_vec()).collect();
        let half = vs.len() / 2;
        if intersect {
            vs[0] = shared[..d].to_vec();
            vs[half] = shared[..d].iter().map(|x| 2.0 * x).collect();
        }
        let (m, n) = (frame(&space, &vs[..half]), frame(&space, &vs[half..]));
        prop_assume!(!m.is_empty() && !n.is_empty());
        let cols: Vec<Vec<f64>> = euclidean(&space, &m).into_iter().chain(euclidean(&space, &n)).collect();
        let stacked = DMatrix::from_fn(d, cols.len(), |i, j| cols[j][i]);
        let sv = stacked.singular_values();
        let rank = sv.iter().filter(|s| **s > 1e-8).count();
        // Skip nearly dependent draws, where the rank decision itself is ambiguous.
        prop_assume!(sv.iter().all(|s| *s > 1e-4 || *s < 1e-10));
        let r = separation_range(&space, &m, &n, 0, 1, 1.4).unwrap();
        prop_assert_eq!(r.min_separation <= 1e-8, rank < cols.len());
    }

    #[test]
    fn truncation_study_invariants(a in atoms(7), seed in any::<u64>()) {
        let mu = SpectralMeasure::atomic(&a).unwrap();
        let grid = [0.5, 1.5, 3.5];
        let space = master_space(&mu, &grid, None).unwrap();
        let g = space.ones();
        let panel = [TestFunction { name: "lambda".into(), values: space.sample(|x| x) }];
        let params = TruncationParams { n_grid: grid.to_vec(), degree: space.len(), weak_gap: WeakGapParams::new(6, seed) };
        let study = run_truncation_study(&space, &g, &panel, &params).unwrap();
        let v = &study.verdicts;
        prop_assert!(v.mass_nondecreasing && v.graph_gap_nonincreasing && v.nesting_ok && v.projection_errors_nonincreasing);
        prop_assert!(study.steps.iter().filter_map(|s| s.nesting_residual).all(|r| r <= 1e-8));
        prop_assert!(study.steps.iter().all(|s| s.lspace_residual <= 1e-10));
    }
}

#[test]
fn bounded_vector_complement_is_ambient_orthogonal() {
    // uniform[1,2] with the complement taken within degree M = 30, m = 5.
    let space = DiscretizedSpace::discretize(&SpectralMeasure::uniform(1.0, 2.0, 1.0, 64).unwrap()).unwrap();
    let g = space.ones();
    let k = krylov_frame(&space, &g, 5, InnerProduct::Ambient).unwrap();
    let comp = krylov_frame(&space, &g, 30, InnerProduct::Graph).unwrap().complement(&space);
    let worst = comp
        .basis
        .iter()
        .flat_map(|c| {
            let image = space.apply_a(c);
            let space = &space;
            k.basis.iter().map(move |q| (space.dot(InnerProduct::Ambient, c, q).abs(), space.dot(InnerProduct::Ambient, &image, q).abs()))
        })
        .fold(0.0f64, |acc, (x, y)| acc.max(x).max(y));
    assert!(worst <= 1e-6, "cross-Gram entry {worst:e}");
}
