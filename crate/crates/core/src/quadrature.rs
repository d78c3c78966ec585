//! Gauss rules built from three-term recurrences (Golub-Welsch eigenvalues,
//! Newton-polished nodes, Christoffel-function weights).

use nalgebra::DMatrix;

/// Nodes (ascending) and weights of a Gauss rule.
#[derive(Debug, Clone)]
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// Gauss-Legendre rule on `[-1, 1]` (weight 1), by Newton's method on
/// `P_n` from the cosine initial guesses.
pub fn gauss_legendre(n: usize) -> GaussRule {
    assert!(n >= 1, "Gauss-Legendre needs at least one node");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let kf = k as f64;
                (p0, p1) = (p1, ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf);
            }
            let p = if n == 1 { x } else { p1 };
            let prev = if n == 1 { 1.0 } else { p0 };
            dp = nf * (x * p - prev) / (x * x - 1.0);
            let step = p / dp;
            x -= step;
            if step.abs() <= 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    GaussRule { nodes, weights }
}

/// Gauss-Hermite rule for the standard normal density.
pub fn gauss_hermite(n: usize) -> GaussRule {
    let alpha = vec![0.0; n];
    let beta: Vec<f64> = (1..n).map(|k| (k as f64).sqrt()).collect();
    gauss_from_recurrence(&alpha, &beta, 1.0)
}

/// Gauss-Laguerre rule for the weight `exp(-y)` on `[0, inf)`.
pub fn gauss_laguerre(n: usize) -> GaussRule {
    let alpha: Vec<f64> = (0..n).map(|k| 2.0 * k as f64 + 1.0).collect();
    let beta: Vec<f64> = (1..n).map(|k| k as f64).collect();
    gauss_from_recurrence(&alpha, &beta, 1.0)
}

/// Gauss rule from orthonormal recurrence coefficients: `alpha` has length `n`,
/// `beta` holds the `n - 1` off-diagonal entries, `mass` is the total mass.
pub fn gauss_from_recurrence(alpha: &[f64], beta: &[f64], mass: f64) -> GaussRule {
    let n = alpha.len();
    assert!(n >= 1 && beta.len() + 1 == n, "recurrence length mismatch");
    if n == 1 {
        return GaussRule { nodes: vec![alpha[0]], weights: vec![mass] };
    }
    let jacobi = DMatrix::from_fn(n, n, |i, j| {
        if i == j {
            alpha[i]
        } else if i + 1 == j {
            beta[i]
        } else if j + 1 == i {
            beta[j]
        } else {
            0.0
        }
    });
    let mut nodes: Vec<f64> = jacobi.symmetric_eigenvalues().iter().cloned().collect();
    nodes.sort_by(|a, b| a.partial_cmp(b).unwrap());

    let p0 = 1.0 / mass.sqrt();
    let mut weights = Vec::with_capacity(n);
    for x in nodes.iter_mut() {
        for _ in 0..3 {
            let ev = evaluate_scaled(alpha, beta, p0, *x);
            if ev.dq == 0.0 || !ev.dq.is_finite() {
                break;
            }
            let step = ev.q / ev.dq;
            if !step.is_finite() {
                break;
            }
            *x -= step;
            if step.abs() <= 1e-16 * x.abs().max(1.0) {
                break;
            }
        }
        let ev = evaluate_scaled(alpha, beta, p0, *x);
        weights.push((-ev.ln_sum_sq).exp());
    }
    GaussRule { nodes, weights }
}

struct ScaledEval {
    /// Unnormalized degree-n polynomial, scaled by a common factor with `dq`.
    q: f64,
    dq: f64,
    /// `ln sum_{k<n} p_k(x)^2` of the orthonormal polynomials.
    ln_sum_sq: f64,
}

fn evaluate_scaled(alpha: &[f64], beta: &[f64], p0: f64, x: f64) -> ScaledEval {
    const BIG: f64 = 1e100;
    let n = alpha.len();
    let mut p_prev = 0.0;
    let mut p = p0;
    let mut dp_prev = 0.0;
    let mut dp = 0.0;
    let mut sum_sq = p0 * p0;
    let mut log_scale = 0.0;
    for k in 0..n - 1 {
        let b_k = if k == 0 { 0.0 } else { beta[k - 1] };
        let next = ((x - alpha[k]) * p - b_k * p_prev) / beta[k];
        let dnext = ((x - alpha[k]) * dp + p - b_k * dp_prev) / beta[k];
        p_prev = p;
        p = next;
        dp_prev = dp;
        dp = dnext;
        sum_sq += p * p;
        if p.abs() > BIG || dp.abs() > BIG {
            p /= BIG;
            p_prev /= BIG;
            dp /= BIG;
            dp_prev /= BIG;
            sum_sq /= BIG * BIG;
            log_scale += BIG.ln();
        }
    }
    let b_last = if n >= 2 { beta[n - 2] } else { 0.0 };
    let q = (x - alpha[n - 1]) * p - b_last * p_prev;
    let dq = (x - alpha[n - 1]) * dp + p - b_last * dp_prev;
    ScaledEval { q, dq, ln_sum_sq: sum_sq.ln() + 2.0 * log_scale }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_three_point_rule() {
        let r = gauss_legendre(3);
        let s = (0.6f64).sqrt();
        assert!((r.nodes[0] + s).abs() < 1e-15 && r.nodes[1].abs() < 1e-15);
        assert!((r.weights[0] - 5.0 / 9.0).abs() < 1e-14);
        assert!((r.weights[1] - 8.0 / 9.0).abs() < 1e-14);
    }

    #[test]
    fn hermite_rule_reproduces_double_factorials() {
        let r = gauss_hermite(40);
        let mut expect = 1.0;
        for n in 1..=20 {
            expect *= (2 * n - 1) as f64;
            let s: f64 = r.nodes.iter().zip(&r.weights).map(|(x, w)| w * x.powi(2 * n)).sum();
            assert!((s / expect - 1.0).abs() < 1e-11, "n={n} s={s} expect={expect}");
        }
    }

    #[test]
    fn large_hermite_rule_keeps_tiny_weights_positive() {
        let r = gauss_hermite(200);
        assert!(r.weights.iter().all(|&w| w > 0.0));
        let mass: f64 = r.weights.iter().sum();
        assert!((mass - 1.0).abs() < 1e-13);
    }

    #[test]
    fn laguerre_rule_integrates_factorial_moments() {
        let r = gauss_laguerre(20);
        let mut fact = 1.0;
        for n in 0..30 {
            if n > 0 {
                fact *= n as f64;
            }
            let s: f64 = r.nodes.iter().zip(&r.weights).map(|(x, w)| w * x.powi(n)).sum();
            assert!((s / fact - 1.0).abs() < 1e-10, "n={n}");
        }
    }
}
