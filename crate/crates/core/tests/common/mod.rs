//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::f64::consts::PI;

/// Adaptive Simpson quadrature on `[a, b]`, started from unit-width panels so
/// narrow peaks are not missed by the first coarse estimate.
pub fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    let panels = ((b - a).ceil() as usize).max(1);
    let h = (b - a) / panels as f64;
    (0..panels).map(|i| simpson_panel(f, a + i as f64 * h, a + (i + 1) as f64 * h, tol / panels as f64)).sum()
}

fn simpson_panel<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    fn rec<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) + rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    }
    let (fa, fb, fm) = (f(a), f(b), f(0.5 * (a + b)));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    rec(f, a, b, fa, fm, fb, whole, tol, 50)
}

pub fn normal_pdf(x: f64) -> f64 {
    (-0.5 * x * x).exp() / (2.0 * PI).sqrt()
}

/// `P(|X| > n)` for a standard normal, by quadrature of the density.
pub fn gaussian_tail(n: f64) -> f64 {
    1.0 - simpson(&normal_pdf, -n, n, 1e-15)
}

/// `(2n - 1)!!`.
pub fn double_factorial_odd(n: u32) -> f64 {
    (1..=n).map(|k| (2 * k - 1) as f64).product()
}

/// Tail ratios of `sum_k |p_k(i)|^2`, frozen from tests/oracles/series_oracle.py
/// (300-digit arithmetic).
pub const LOGNORMAL_SERIES_RATIOS: [f64; 12] = [
    0.7960739726, 0.494932653, 0.4102564905, 0.3829061458, 0.3733329818, 0.3698756969, 0.3686124751,
    0.3681489272, 0.3679785549, 0.3679158997, 0.3678928531, 0.3678843751,
];

pub const LOGNORMAL_SERIES_TERMS: [f64; 13] = [
    1.0, 0.796073972567, 0.394003003245, 0.161642289357, 0.0618938260165, 0.0231070066216, 0.00854672017666,
    0.00315042767867, 0.00115982657002, 0.000426791305159, 0.000157023307038, 5.77677524256e-5, 2.12518535006e-5,
];

/// Ratios `k = 31..=40` for the Gaussian, same oracle.
pub const GAUSSIAN_SERIES_TAIL_RATIOS: [f64; 10] = [
    1.177367605, 1.174764466, 1.172054493, 1.169649238, 1.167188401, 1.164960903, 1.162710716, 1.16064265,
    1.158572873, 1.156647847,
];
