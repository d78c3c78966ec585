//! Finite node/weight realizations of `L^2(R, mu)`.
//!
//! Functions of the operator act on value-vectors componentwise, so `f(A) x`
//! is `f(lambda_i) x_i`. Two inner products are carried: the ambient one with
//! weights `w_i` and the graph one with weights `w_i (1 + lambda_i^2)`.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::measure::SpectralMeasure;
use crate::numeric::{pairwise_sum, weighted_dot, weighted_norm};

/// Which scalar product a frame or norm refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InnerProduct {
    Ambient,
    Graph,
}

/// Relative spacing below which two merged nodes count as a collision.
const COLLISION_RTOL: f64 = 4.0 * f64::EPSILON;

#[derive(Debug, Clone)]
pub struct DiscretizedSpace {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    graph_weights: Vec<f64>,
    exactness: Option<usize>,
    source: Option<Arc<SpectralMeasure>>,
}

impl DiscretizedSpace {
    /// Discretizes with the node counts declared in the measure.
    pub fn discretize(mu: &SpectralMeasure) -> Result<Self> {
        Self::discretize_with(mu, None)
    }

    /// Discretizes with per-part node counts overriding the declared ones.
    pub fn discretize_with(mu: &SpectralMeasure, resolution: Option<&[usize]>) -> Result<Self> {
        let mu = match resolution {
            None => mu.clone(),
            Some(res) => {
                if res.len() != mu.parts().len() {
                    return Err(Error::InvalidArgument(format!(
                        "resolution lists {} node counts for {} continuous parts",
                        res.len(),
                        mu.parts().len()
                    )));
                }
                let mut desc = mu.to_description();
                for (part, &n) in desc.ac.iter_mut().zip(res) {
                    part.nodes = n;
                }
                SpectralMeasure::from_description(&desc)?
            }
        };
        let mut pts: Vec<(f64, f64)> = mu.atoms().iter().map(|a| (a.x, a.w)).collect();
        for part in mu.parts() {
            pts.extend(part.rule()?);
        }
        pts.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        for pair in pts.windows(2) {
            let (a, b) = (pair[0].0, pair[1].0);
            if b - a <= COLLISION_RTOL * a.abs().max(b.abs()) {
                return Err(Error::NodeCollision(a));
            }
        }
        let (nodes, weights): (Vec<f64>, Vec<f64>) = pts.into_iter().unzip();
        let mut space = Self::from_nodes(nodes, weights)?;
        space.exactness = mu.exactness_degree();
        space.source = Some(Arc::new(mu));
        Ok(space)
    }

    /// A space given directly by nodes and weights (no source measure).
    pub fn from_nodes(nodes: Vec<f64>, weights: Vec<f64>) -> Result<Self> {
        if nodes.is_empty() || nodes.len() != weights.len() {
            return Err(Error::InvalidArgument("need equally many nodes and weights, at least one".into()));
        }
        if weights.iter().any(|w| !(*w > 0.0 && w.is_finite())) {
            return Err(Error::InvalidArgument("weights must be positive and finite".into()));
        }
        if nodes.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidArgument("nodes must be finite".into()));
        }
        if let Some(pair) = nodes.windows(2).find(|p| p[1] <= p[0]) {
            return Err(Error::NodeCollision(pair[0]));
        }
        let graph_weights = nodes.iter().zip(&weights).map(|(x, w)| w * (1.0 + x * x)).collect();
        Ok(DiscretizedSpace { nodes, weights, graph_weights, exactness: None, source: None })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn graph_weights(&self) -> &[f64] {
        &self.graph_weights
    }

    pub fn weights_for(&self, ip: InnerProduct) -> &[f64] {
        match ip {
            InnerProduct::Ambient => &self.weights,
            InnerProduct::Graph => &self.graph_weights,
        }
    }

    pub fn source(&self) -> Option<&SpectralMeasure> {
        self.source.as_deref()
    }

    /// Polynomial degree integrated exactly by the underlying rule
    /// (`None` if unknown or not polynomial-exact).
    pub fn exactness_degree(&self) -> Option<usize> {
        match &self.source {
            Some(_) => self.exactness,
            None => Some(usize::MAX),
        }
    }

    pub fn total_mass(&self) -> f64 {
        pairwise_sum(&self.weights)
    }

    pub fn max_abs_node(&self) -> f64 {
        self.nodes.iter().fold(0.0f64, |m, x| m.max(x.abs()))
    }

    pub fn dot(&self, ip: InnerProduct, x: &[f64], y: &[f64]) -> f64 {
        weighted_dot(self.weights_for(ip), x, y)
    }

    pub fn norm(&self, ip: InnerProduct, x: &[f64]) -> f64 {
        weighted_norm(self.weights_for(ip), x)
    }

    /// Values of `f` at the nodes.
    pub fn sample<F: Fn(f64) -> f64>(&self, f: F) -> Vec<f64> {
        self.nodes.iter().map(|&x| f(x)).collect()
    }

    /// Constant function `1`, the image of the cyclic vector.
    pub fn ones(&self) -> Vec<f64> {
        vec![1.0; self.len()]
    }

    /// Multiplication by `lambda`.
    pub fn apply_a(&self, x: &[f64]) -> Vec<f64> {
        self.nodes.iter().zip(x).map(|(l, v)| l * v).collect()
    }

    /// `chi_[-n, n](A) x`.
    pub fn mask(&self, x: &[f64], n: f64) -> Vec<f64> {
        self.nodes.iter().zip(x).map(|(l, v)| if l.abs() <= n { *v } else { 0.0 }).collect()
    }

    /// Number of nodes in `[-n, n]`.
    pub fn count_inside(&self, n: f64) -> usize {
        self.nodes.iter().filter(|l| l.abs() <= n).count()
    }
}
