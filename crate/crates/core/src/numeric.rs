//! Small numerical kernels shared across modules: pairwise summation,
//! weighted inner products, Gram-Schmidt with reorthogonalization and
//! least-squares trend fits.

const PAIRWISE_BLOCK: usize = 16;

/// Pairwise (cascade) summation. Error grows like O(eps log n).
pub fn pairwise_sum(values: &[f64]) -> f64 {
    if values.len() <= PAIRWISE_BLOCK {
        return values.iter().sum();
    }
    let mid = values.len() / 2;
    pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
}

/// Pairwise sum of `f(i)` for `i in 0..n` without materializing large temporaries twice.
pub fn pairwise_sum_by<F: Fn(usize) -> f64>(n: usize, f: F) -> f64 {
    let terms: Vec<f64> = (0..n).map(f).collect();
    pairwise_sum(&terms)
}

/// `sum_i w_i x_i y_i` with pairwise summation.
pub fn weighted_dot(weights: &[f64], x: &[f64], y: &[f64]) -> f64 {
    debug_assert_eq!(weights.len(), x.len());
    debug_assert_eq!(weights.len(), y.len());
    pairwise_sum_by(weights.len(), |i| weights[i] * x[i] * y[i])
}

pub fn weighted_norm(weights: &[f64], x: &[f64]) -> f64 {
    weighted_dot(weights, x, x).max(0.0).sqrt()
}

/// Removes from `v` its components along the (weight-orthonormal) `basis`,
/// two classical Gram-Schmidt passes. Returns the accumulated coefficients.
pub fn orthogonalize_against(basis: &[Vec<f64>], weights: &[f64], v: &mut [f64]) -> Vec<f64> {
    let mut coeffs = vec![0.0; basis.len()];
    for _pass in 0..2 {
        let proj: Vec<f64> = basis.iter().map(|q| weighted_dot(weights, q, v)).collect();
        for (q, c) in basis.iter().zip(&proj) {
            for (vi, qi) in v.iter_mut().zip(q) {
                *vi -= c * qi;
            }
        }
        for (acc, c) in coeffs.iter_mut().zip(&proj) {
            *acc += c;
        }
    }
    coeffs
}

/// Orthonormalizes `vectors` in order under the weighted inner product,
/// dropping those whose residual falls below `rel_tol` times their original norm.
/// Returns the basis and the indices of the vectors that were kept.
pub fn orthonormalize(
    vectors: &[Vec<f64>],
    weights: &[f64],
    rel_tol: f64,
) -> (Vec<Vec<f64>>, Vec<usize>) {
    let mut basis: Vec<Vec<f64>> = Vec::new();
    let mut kept = Vec::new();
    for (idx, v) in vectors.iter().enumerate() {
        let norm0 = weighted_norm(weights, v);
        if norm0 == 0.0 || !norm0.is_finite() {
            continue;
        }
        let mut w = v.clone();
        orthogonalize_against(&basis, weights, &mut w);
        let norm = weighted_norm(weights, &w);
        if norm > rel_tol * norm0 {
            w.iter_mut().for_each(|x| *x /= norm);
            basis.push(w);
            kept.push(idx);
        }
    }
    (basis, kept)
}

/// Largest deviation of the Gram matrix of `basis` from the identity.
pub fn gram_deviation(basis: &[Vec<f64>], weights: &[f64]) -> f64 {
    let mut dev: f64 = 0.0;
    for (i, a) in basis.iter().enumerate() {
        for (j, b) in basis.iter().enumerate().skip(i) {
            let g = weighted_dot(weights, a, b);
            let target = if i == j { 1.0 } else { 0.0 };
            dev = dev.max((g - target).abs());
        }
    }
    dev
}

/// Ordinary least-squares fit `y ~ a + b x`; returns `(a, b)`.
pub fn linear_fit(x: &[f64], y: &[f64]) -> (f64, f64) {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxx: f64 = x.iter().map(|xi| (xi - mx) * (xi - mx)).sum();
    let sxy: f64 = x.iter().zip(y).map(|(xi, yi)| (xi - mx) * (yi - my)).sum();
    let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    (my - slope * mx, slope)
}

/// `ln(sum exp(a_i))`, stable for large arguments; `-inf` for an empty slice.
pub fn log_sum_exp(a: &[f64]) -> f64 {
    let max = a.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if !max.is_finite() {
        return max;
    }
    let s: Vec<f64> = a.iter().map(|x| (x - max).exp()).collect();
    max + pairwise_sum(&s).ln()
}
