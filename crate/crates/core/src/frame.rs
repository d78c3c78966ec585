//! Orthonormal frames of finite-dimensional subspaces of a discretized space.

use nalgebra::{DMatrix, SymmetricEigen};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::{gram_deviation, orthogonalize_against, orthonormalize};
use crate::space::{DiscretizedSpace, InnerProduct};

/// Gram deviation tolerated in a frame.
pub const FRAME_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubspaceFrame {
    /// Orthonormal value-vectors under `ip`.
    pub basis: Vec<Vec<f64>>,
    pub ip: InnerProduct,
    /// Polynomial degree of each basis vector, for Krylov frames.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degrees: Option<Vec<usize>>,
    /// Saturation or emptiness notice.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub notice: Option<String>,
    /// Dimension `D` of the ambient discretized space.
    pub space_dim: usize,
}

impl SubspaceFrame {
    /// Orthonormalizes `vectors` under `ip`, dropping numerically dependent ones.
    pub fn from_vectors(space: &DiscretizedSpace, vectors: &[Vec<f64>], ip: InnerProduct) -> Result<Self> {
        if let Some(v) = vectors.iter().find(|v| v.len() != space.len()) {
            return Err(Error::InvalidArgument(format!(
                "vector of length {} in a space of dimension {}",
                v.len(),
                space.len()
            )));
        }
        let (basis, kept) = orthonormalize(vectors, space.weights_for(ip), 1e-10);
        let notice = (kept.len() < vectors.len())
            .then(|| format!("{} of {} vectors were linearly dependent", vectors.len() - kept.len(), vectors.len()));
        Ok(SubspaceFrame { basis, ip, degrees: None, notice, space_dim: space.len() })
    }

    /// Node-indicator basis `e_i / sqrt(w_i)` of the whole space.
    pub fn full(space: &DiscretizedSpace, ip: InnerProduct) -> Self {
        let w = space.weights_for(ip);
        let basis = (0..space.len())
            .map(|i| {
                let mut e = vec![0.0; space.len()];
                e[i] = 1.0 / w[i].sqrt();
                e
            })
            .collect();
        SubspaceFrame { basis, ip, degrees: None, notice: None, space_dim: space.len() }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn gram_deviation(&self, space: &DiscretizedSpace) -> f64 {
        gram_deviation(&self.basis, space.weights_for(self.ip))
    }

    /// Coefficients `<q_j, v>` in the frame's own inner product.
    pub fn coefficients(&self, space: &DiscretizedSpace, v: &[f64]) -> Vec<f64> {
        self.basis.iter().map(|q| space.dot(self.ip, q, v)).collect()
    }

    pub fn combine(&self, coeffs: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.space_dim];
        for (q, c) in self.basis.iter().zip(coeffs) {
            for (o, qi) in out.iter_mut().zip(q) {
                *o += c * qi;
            }
        }
        out
    }

    /// Orthogonal projection of `v` onto the span, in the frame's inner product.
    pub fn project(&self, space: &DiscretizedSpace, v: &[f64]) -> Vec<f64> {
        let mut r = v.to_vec();
        orthogonalize_against(&self.basis, space.weights_for(self.ip), &mut r);
        v.iter().zip(&r).map(|(a, b)| a - b).collect()
    }

    /// Norm of `v - P v` in the frame's inner product.
    pub fn residual_norm(&self, space: &DiscretizedSpace, v: &[f64]) -> f64 {
        let mut r = v.to_vec();
        orthogonalize_against(&self.basis, space.weights_for(self.ip), &mut r);
        space.norm(self.ip, &r)
    }

    /// Largest relative projection residual of the vectors of `other` onto this span.
    pub fn containment_residual(&self, space: &DiscretizedSpace, other: &SubspaceFrame) -> f64 {
        other
            .basis
            .iter()
            .map(|v| {
                let n = space.norm(self.ip, v);
                if n == 0.0 {
                    0.0
                } else {
                    self.residual_norm(space, v) / n
                }
            })
            .fold(0.0, f64::max)
    }

    /// Re-expresses the span under another inner product.
    pub fn reorthonormalize(&self, space: &DiscretizedSpace, ip: InnerProduct) -> Result<SubspaceFrame> {
        let mut f = SubspaceFrame::from_vectors(space, &self.basis, ip)?;
        f.degrees = self.degrees.clone();
        Ok(f)
    }

    /// Orthonormal basis (same inner product) of the orthogonal complement of
    /// the span within the whole discretized space.
    pub fn complement(&self, space: &DiscretizedSpace) -> SubspaceFrame {
        let d = space.len();
        let w = space.weights_for(self.ip);
        let sqrt_w: Vec<f64> = w.iter().map(|x| x.sqrt()).collect();
        // In coordinates y = sqrt(w) x the inner product is Euclidean; the
        // complement is the eigenvalue-one space of I - B B^T.
        let mut proj = DMatrix::<f64>::identity(d, d);
        for q in &self.basis {
            let y: Vec<f64> = q.iter().zip(&sqrt_w).map(|(a, b)| a * b).collect();
            for i in 0..d {
                for j in 0..d {
                    proj[(i, j)] -= y[i] * y[j];
                }
            }
        }
        let eig = SymmetricEigen::new(proj);
        let mut order: Vec<usize> = (0..d).filter(|&i| eig.eigenvalues[i] > 0.5).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[b].partial_cmp(&eig.eigenvalues[a]).unwrap().then(a.cmp(&b)));
        let basis: Vec<Vec<f64>> = order
            .iter()
            .map(|&k| {
                let col = eig.eigenvectors.column(k);
                // fix the sign so that the largest entry is positive
                let pivot = (0..d).max_by(|&a, &b| col[a].abs().partial_cmp(&col[b].abs()).unwrap()).unwrap();
                let s = if col[pivot] < 0.0 { -1.0 } else { 1.0 };
                (0..d).map(|i| s * col[i] / sqrt_w[i]).collect()
            })
            .collect();
        let notice = basis.is_empty().then(|| "complement is empty: the frame spans the whole space".to_string());
        SubspaceFrame { basis, ip: self.ip, degrees: None, notice, space_dim: d }
    }

    /// Entrywise maximum of the cross-Gram with `other` under `ip`.
    pub fn max_cross_gram(&self, space: &DiscretizedSpace, other: &SubspaceFrame, ip: InnerProduct) -> f64 {
        let mut m: f64 = 0.0;
        for a in &self.basis {
            for b in &other.basis {
                m = m.max(space.dot(ip, a, b).abs());
            }
        }
        m
    }
}
