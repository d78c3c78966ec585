//! Scalar spectral measures on the real line.
//!
//! A self-adjoint operator `A` with a cyclic vector `g` is represented by the
//! measure `mu_g` of `g`: the operator becomes multiplication by `lambda` on
//! `L^2(R, mu_g)` and `g` becomes the constant function `1`. A measure is a
//! finite list of atoms plus absolutely continuous parts, each carrying the
//! quadrature resolution (node count) used to integrate against it.
//!
//! Unbounded supports are handled by a change of variables fixed per density
//! kind: Gauss-Hermite for Gaussian densities on the whole line, scaled
//! Gauss-Laguerre for Gaussian half-lines, and the exponential map
//! `lambda = exp(t)` for log-normal densities.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::pairwise_sum;
use crate::orthopoly::lanczos;
use crate::quadrature::{gauss_from_recurrence, gauss_hermite, gauss_legendre};

/// Density family of an absolutely continuous part.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DensityKind {
    Uniform,
    Gaussian,
    Lognormal,
    CustomPolyDensity,
}

/// Optional density parameters as they appear in a measure document.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DensityParams {
    /// Total mass of the part over its declared support (uniform), or scale
    /// factor of the whole-line density (gaussian, lognormal). Default 1.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mass: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mean: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub std: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<f64>,
    /// Polynomial coefficients `c_0, c_1, ...` of a custom density.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coeffs: Option<Vec<f64>>,
}

impl DensityParams {
    fn is_empty(&self) -> bool {
        *self == DensityParams::default()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtomDescription {
    pub x: f64,
    pub w: f64,
}

/// One absolutely continuous part. `support` endpoints may be `null` for
/// infinite ends.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AcDescription {
    pub kind: DensityKind,
    pub support: [Option<f64>; 2],
    #[serde(default, skip_serializing_if = "DensityParams::is_empty")]
    pub params: DensityParams,
    pub nodes: usize,
}

/// The JSON measure document:
/// `{"atoms":[{"x":..,"w":..}],"ac":[{"kind":..,"support":[a,b],"params":{..},"nodes":N}]}`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeasureDescription {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub atoms: Vec<AtomDescription>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub ac: Vec<AcDescription>,
}

impl MeasureDescription {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("measure descriptions always serialize")
    }
}

/// Closed interval with possibly infinite endpoints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn is_bounded(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    fn intersect(&self, other: &Interval) -> Interval {
        Interval { lo: self.lo.max(other.lo), hi: self.hi.min(other.hi) }
    }

    /// Distance from the origin to the interval.
    pub fn distance_to_zero(&self) -> f64 {
        if self.contains(0.0) {
            0.0
        } else {
            self.lo.abs().min(self.hi.abs())
        }
    }
}

/// Resolved density of an absolutely continuous part.
#[derive(Debug, Clone, PartialEq)]
pub enum Density {
    /// Constant `level` on the support.
    Uniform { level: f64 },
    Gaussian { mean: f64, std: f64, mass: f64 },
    Lognormal { mu: f64, sigma: f64, mass: f64 },
    Polynomial { coeffs: Vec<f64> },
}

impl Density {
    /// Density value at `lambda` (ignoring the support restriction).
    pub fn eval(&self, lambda: f64) -> f64 {
        match self {
            Density::Uniform { level } => *level,
            Density::Gaussian { mean, std, mass } => {
                let z = (lambda - mean) / std;
                mass * (-0.5 * z * z).exp() / (std * (2.0 * PI).sqrt())
            }
            Density::Lognormal { mu, sigma, mass } => {
                if lambda <= 0.0 {
                    return 0.0;
                }
                let z = (lambda.ln() - mu) / sigma;
                mass * (-0.5 * z * z).exp() / (lambda * sigma * (2.0 * PI).sqrt())
            }
            Density::Polynomial { coeffs } => coeffs.iter().rev().fold(0.0, |acc, c| acc * lambda + c),
        }
    }
}

/// An absolutely continuous part with its effective support and node count.
#[derive(Debug, Clone, PartialEq)]
pub struct AcPart {
    pub kind: DensityKind,
    pub density: Density,
    /// Declared support intersected with the natural support of the family.
    pub support: Interval,
    pub nodes: usize,
    mass: f64,
}

impl AcPart {
    pub fn mass(&self) -> f64 {
        self.mass
    }

    /// Quadrature nodes in `lambda` and weights (density included).
    /// Nodes whose weight underflows to zero are dropped.
    pub fn rule(&self) -> Result<Vec<(f64, f64)>> {
        let pts = match &self.density {
            Density::Uniform { level } => legendre_on(self.support, self.nodes, |_| *level),
            Density::Polynomial { .. } => {
                let pts = legendre_on(self.support, self.nodes, |x| self.density.eval(x));
                if let Some(&(x, w)) = pts.iter().find(|(_, w)| *w < 0.0 || !w.is_finite()) {
                    return Err(Error::InvalidMeasure(format!(
                        "custom density is negative at quadrature node {x} (weight {w})"
                    )));
                }
                pts
            }
            Density::Gaussian { mean, std, mass } => {
                gaussian_in_t(self.support.lo, self.support.hi, *mean, *std, *mass, self.nodes)?
            }
            Density::Lognormal { mu, sigma, mass } => {
                let lo = if self.support.lo <= 0.0 { f64::NEG_INFINITY } else { self.support.lo.ln() };
                let hi = self.support.hi.ln();
                gaussian_in_t(lo, hi, *mu, *sigma, *mass, self.nodes)?
                    .into_iter()
                    .map(|(t, w)| (t.exp(), w))
                    .collect()
            }
        };
        Ok(pts.into_iter().filter(|(_, w)| *w > 0.0).collect())
    }

    /// Highest polynomial degree integrated exactly by [`AcPart::rule`], if any.
    pub fn exactness_degree(&self) -> Option<usize> {
        let full = 2 * self.nodes - 1;
        match &self.density {
            Density::Uniform { .. } => Some(full),
            Density::Polynomial { coeffs } => Some(full.saturating_sub(coeffs.len().saturating_sub(1))),
            Density::Gaussian { .. } if !self.support.lo.is_finite() && !self.support.hi.is_finite() => Some(full),
            _ => None,
        }
    }

    fn to_description(&self) -> AcDescription {
        let bound = |x: f64| if x.is_finite() { Some(x) } else { None };
        let params = match &self.density {
            Density::Uniform { level } => {
                DensityParams { mass: Some(level * (self.support.hi - self.support.lo)), ..Default::default() }
            }
            Density::Gaussian { mean, std, mass } => DensityParams {
                mass: Some(*mass),
                mean: Some(*mean),
                std: Some(*std),
                ..Default::default()
            },
            Density::Lognormal { mu, sigma, mass } => DensityParams {
                mass: Some(*mass),
                mu: Some(*mu),
                sigma: Some(*sigma),
                ..Default::default()
            },
            Density::Polynomial { coeffs } => DensityParams { coeffs: Some(coeffs.clone()), ..Default::default() },
        };
        AcDescription {
            kind: self.kind,
            support: [bound(self.support.lo), bound(self.support.hi)],
            params,
            nodes: self.nodes,
        }
    }
}

fn legendre_on<F: Fn(f64) -> f64>(support: Interval, n: usize, density: F) -> Vec<(f64, f64)> {
    let rule = gauss_legendre(n);
    let mid = 0.5 * (support.lo + support.hi);
    let half = 0.5 * (support.hi - support.lo);
    rule.nodes
        .iter()
        .zip(&rule.weights)
        .map(|(x, w)| {
            let t = mid + half * x;
            (t, half * w * density(t))
        })
        .collect()
}

/// Window edges further than this many standard deviations from the mean
/// are treated as infinite; the Gaussian tail beyond is below `1e-32`.
const GAUSSIAN_EDGE_SIGMAS: f64 = 12.0;

/// Rule for `mass * N(mean, std^2)` restricted to `[lo, hi]` in the variable `t`.
fn gaussian_in_t(lo: f64, hi: f64, mean: f64, std: f64, mass: f64, n: usize) -> Result<Vec<(f64, f64)>> {
    if lo >= hi {
        return Ok(Vec::new());
    }
    let far = GAUSSIAN_EDGE_SIGMAS * std;
    if lo < mean - far && hi > mean + far {
        let rule = gauss_hermite(n);
        return Ok(rule
            .nodes
            .iter()
            .zip(&rule.weights)
            .map(|(x, w)| (mean + std * x, mass * w))
            .filter(|(t, _)| *t >= lo && *t <= hi)
            .collect());
    }
    restricted_gaussian_rule(lo.max(mean - far), hi.min(mean + far), mean, std, mass, n)
}

/// `n`-point Gauss rule of the Gaussian weight on `[a, b]` by the discretized
/// Stieltjes procedure: a Legendre rule with headroom for the Gaussian factor,
/// reduced by Lanczos.
fn restricted_gaussian_rule(a: f64, b: f64, mean: f64, std: f64, mass: f64, n: usize) -> Result<Vec<(f64, f64)>> {
    let (za, zb) = ((a - mean) / std, (b - mean) / std);
    let fine = n + 32 + (8.0 * (zb - za)).ceil() as usize;
    let (mid, half) = (0.5 * (za + zb), 0.5 * (zb - za));
    let log_norm = (mass / (2.0 * PI).sqrt()).ln();
    let base = gauss_legendre(fine);
    let z: Vec<f64> = base.nodes.iter().map(|x| mid + half * x).collect();
    let w: Vec<f64> = z.iter().zip(&base.weights).map(|(t, v)| half * v * (log_norm - 0.5 * t * t).exp()).collect();
    let total = pairwise_sum(&w);
    if !(total > 0.0) {
        return Ok(Vec::new());
    }
    let run = lanczos(&z, &w, &vec![1.0; z.len()], n)?;
    let rule = gauss_from_recurrence(&run.alpha, &run.beta[..run.alpha.len() - 1], total);
    Ok(rule.nodes.iter().zip(&rule.weights).map(|(x, v)| (mean + std * x, *v)).collect())
}

/// A point mass.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Atom {
    pub x: f64,
    pub w: f64,
}

/// Result of [`SpectralMeasure::integrate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: Complex64,
    /// Set when the outermost nodes of an unbounded part still carry a
    /// non-negligible share of the integral.
    pub divergence_warning: bool,
}

/// Report of [`SpectralMeasure::spectral_gap_at_zero`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GapReport {
    pub gap_lower_bound: f64,
    pub zero_in_resolvent: bool,
}

/// Scalar spectral measure `mu_g` of a cyclic vector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MeasureDescription", into = "MeasureDescription")]
pub struct SpectralMeasure {
    atoms: Vec<Atom>,
    parts: Vec<AcPart>,
    total_mass: f64,
}

impl TryFrom<MeasureDescription> for SpectralMeasure {
    type Error = Error;

    fn try_from(desc: MeasureDescription) -> Result<Self> {
        SpectralMeasure::from_description(&desc)
    }
}

impl From<SpectralMeasure> for MeasureDescription {
    fn from(m: SpectralMeasure) -> Self {
        m.to_description()
    }
}

fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidMeasure(msg.into()))
}

fn resolve_part(desc: &AcDescription) -> Result<AcPart> {
    if desc.nodes == 0 {
        return invalid("every continuous part needs at least one node");
    }
    let lo = desc.support[0].unwrap_or(f64::NEG_INFINITY);
    let hi = desc.support[1].unwrap_or(f64::INFINITY);
    if lo.is_nan() || hi.is_nan() || lo >= hi {
        return invalid(format!("empty or malformed support [{lo}, {hi}]"));
    }
    let p = &desc.params;
    let mass = p.mass.unwrap_or(1.0);
    if !(mass > 0.0 && mass.is_finite()) {
        return invalid("part mass must be positive and finite");
    }
    let unexpected = |names: &[&str]| -> Result<()> {
        let given = [
            ("mean", p.mean.is_some()),
            ("std", p.std.is_some()),
            ("mu", p.mu.is_some()),
            ("sigma", p.sigma.is_some()),
            ("coeffs", p.coeffs.is_some()),
        ];
        match given.iter().find(|(n, set)| *set && !names.contains(n)) {
            Some((n, _)) => invalid(format!("parameter '{n}' does not apply to {:?}", desc.kind)),
            None => Ok(()),
        }
    };
    let declared = Interval { lo, hi };
    let (density, support) = match desc.kind {
        DensityKind::Uniform => {
            unexpected(&[])?;
            if !declared.is_bounded() {
                return invalid("uniform density needs a bounded support");
            }
            (Density::Uniform { level: mass / (hi - lo) }, declared)
        }
        DensityKind::CustomPolyDensity => {
            if p.mass.is_some() {
                return invalid("custom polynomial densities take 'coeffs', not 'mass'");
            }
            unexpected(&["coeffs"])?;
            if !declared.is_bounded() {
                return invalid("polynomial density needs a bounded support");
            }
            let coeffs = p.coeffs.clone().unwrap_or_default();
            if coeffs.is_empty() || coeffs.iter().any(|c| !c.is_finite()) {
                return invalid("polynomial density needs finite coefficients");
            }
            (Density::Polynomial { coeffs }, declared)
        }
        DensityKind::Gaussian => {
            unexpected(&["mean", "std"])?;
            let mean = p.mean.unwrap_or(0.0);
            let std = p.std.unwrap_or(1.0);
            if !(std > 0.0 && std.is_finite() && mean.is_finite()) {
                return invalid("gaussian needs finite mean and positive std");
            }
            (Density::Gaussian { mean, std, mass }, declared)
        }
        DensityKind::Lognormal => {
            unexpected(&["mu", "sigma"])?;
            let mu = p.mu.unwrap_or(0.0);
            let sigma = p.sigma.unwrap_or(1.0);
            if !(sigma > 0.0 && sigma.is_finite() && mu.is_finite()) {
                return invalid("lognormal needs finite mu and positive sigma");
            }
            let support = declared.intersect(&Interval { lo: 0.0, hi: f64::INFINITY });
            if support.lo >= support.hi {
                return invalid("lognormal support does not meet (0, inf)");
            }
            (Density::Lognormal { mu, sigma, mass }, support)
        }
    };
    let mut part = AcPart { kind: desc.kind, density, support, nodes: desc.nodes, mass: 0.0 };
    let weights: Vec<f64> = part.rule()?.into_iter().map(|(_, w)| w).collect();
    part.mass = pairwise_sum(&weights);
    if !(part.mass > 0.0) {
        return invalid(format!("{:?} part on [{lo}, {hi}] has zero mass", desc.kind));
    }
    Ok(part)
}

impl SpectralMeasure {
    pub fn from_description(desc: &MeasureDescription) -> Result<Self> {
        let mut atoms = Vec::with_capacity(desc.atoms.len());
        for a in &desc.atoms {
            if !a.x.is_finite() || !(a.w > 0.0 && a.w.is_finite()) {
                return invalid(format!("atom ({}, {}) needs a finite location and positive weight", a.x, a.w));
            }
            if atoms.iter().any(|b: &Atom| b.x == a.x) {
                return invalid(format!("duplicate atom location {}", a.x));
            }
            atoms.push(Atom { x: a.x, w: a.w });
        }
        let parts = desc.ac.iter().map(resolve_part).collect::<Result<Vec<_>>>()?;
        let mut masses: Vec<f64> = atoms.iter().map(|a| a.w).collect();
        masses.extend(parts.iter().map(|p| p.mass));
        let total_mass = pairwise_sum(&masses);
        if !(total_mass > 0.0) {
            return invalid("measure has zero total mass");
        }
        Ok(SpectralMeasure { atoms, parts, total_mass })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_description(&MeasureDescription::from_json(text)?)
    }

    pub fn to_description(&self) -> MeasureDescription {
        MeasureDescription {
            atoms: self.atoms.iter().map(|a| AtomDescription { x: a.x, w: a.w }).collect(),
            ac: self.parts.iter().map(AcPart::to_description).collect(),
        }
    }

    /// Sum of point masses `w_i delta_{x_i}`.
    pub fn atomic(atoms: &[(f64, f64)]) -> Result<Self> {
        Self::from_description(&MeasureDescription {
            atoms: atoms.iter().map(|&(x, w)| AtomDescription { x, w }).collect(),
            ac: Vec::new(),
        })
    }

    /// Uniform distribution of total mass `mass` on `[a, b]`.
    pub fn uniform(a: f64, b: f64, mass: f64, nodes: usize) -> Result<Self> {
        Self::from_description(&MeasureDescription {
            atoms: Vec::new(),
            ac: vec![AcDescription {
                kind: DensityKind::Uniform,
                support: [Some(a), Some(b)],
                params: DensityParams { mass: Some(mass), ..Default::default() },
                nodes,
            }],
        })
    }

    /// Standard normal distribution on the whole line.
    pub fn standard_gaussian(nodes: usize) -> Result<Self> {
        Self::from_description(&MeasureDescription {
            atoms: Vec::new(),
            ac: vec![AcDescription {
                kind: DensityKind::Gaussian,
                support: [None, None],
                params: DensityParams::default(),
                nodes,
            }],
        })
    }

    /// Standard log-normal distribution on `(0, inf)`.
    pub fn standard_lognormal(nodes: usize) -> Result<Self> {
        Self::from_description(&MeasureDescription {
            atoms: Vec::new(),
            ac: vec![AcDescription {
                kind: DensityKind::Lognormal,
                support: [Some(0.0), None],
                params: DensityParams::default(),
                nodes,
            }],
        })
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn parts(&self) -> &[AcPart] {
        &self.parts
    }

    pub fn total_mass(&self) -> f64 {
        self.total_mass
    }

    /// Recomputes the total mass from scratch (atoms plus part quadratures).
    pub fn recompute_mass(&self) -> Result<f64> {
        let mut masses: Vec<f64> = self.atoms.iter().map(|a| a.w).collect();
        for part in &self.parts {
            let w: Vec<f64> = part.rule()?.into_iter().map(|(_, w)| w).collect();
            masses.push(pairwise_sum(&w));
        }
        Ok(pairwise_sum(&masses))
    }

    /// Polynomial exactness of the combined quadrature, `None` when some part
    /// uses a non-polynomial change of variables.
    pub fn exactness_degree(&self) -> Option<usize> {
        self.parts
            .iter()
            .map(AcPart::exactness_degree)
            .try_fold(usize::MAX, |acc, d| d.map(|d| acc.min(d)))
    }

    /// `int f dmu` using the declared quadrature of every part.
    pub fn integrate<F: Fn(f64) -> Complex64>(&self, f: F) -> Result<Integral> {
        let eval = |x: f64| -> Result<Complex64> {
            let v = f(x);
            if !(v.re.is_finite() && v.im.is_finite()) {
                let bad = if v.re.is_finite() { v.im } else { v.re };
                return Err(Error::NonFiniteEvaluation { node: x, value: bad });
            }
            Ok(v)
        };
        let mut contributions: Vec<Complex64> = Vec::new();
        for a in &self.atoms {
            contributions.push(eval(a.x)? * a.w);
        }
        let mut divergence_warning = false;
        for part in &self.parts {
            let rule = part.rule()?;
            let terms = rule.iter().map(|&(x, w)| Ok(eval(x)? * w)).collect::<Result<Vec<_>>>()?;
            let scale: f64 = terms.iter().map(|c| c.norm()).sum();
            let edge = |idx: &[usize]| idx.iter().map(|&i| terms[i].norm()).sum::<f64>();
            let n = terms.len();
            if n >= 4 && scale > 0.0 {
                if !part.support.hi.is_finite() && edge(&[n - 1, n - 2]) > 1e-6 * scale {
                    divergence_warning = true;
                }
                if !part.support.lo.is_finite() && edge(&[0, 1]) > 1e-6 * scale {
                    divergence_warning = true;
                }
            }
            contributions.extend(terms);
        }
        let re: Vec<f64> = contributions.iter().map(|c| c.re).collect();
        let im: Vec<f64> = contributions.iter().map(|c| c.im).collect();
        Ok(Integral { value: Complex64::new(pairwise_sum(&re), pairwise_sum(&im)), divergence_warning })
    }

    /// Real-valued convenience wrapper around [`SpectralMeasure::integrate`].
    pub fn integrate_real<F: Fn(f64) -> f64>(&self, f: F) -> Result<f64> {
        Ok(self.integrate(|x| Complex64::new(f(x), 0.0))?.value.re)
    }

    /// Restriction `chi_[-n, n] mu`, the measure of `chi_[-n,n](A) g`.
    pub fn truncate(&self, n: f64) -> Result<SpectralMeasure> {
        if !(n > 0.0) {
            return Err(Error::InvalidArgument(format!("truncation radius must be positive, got {n}")));
        }
        let window = Interval { lo: -n, hi: n };
        let atoms: Vec<Atom> = self.atoms.iter().filter(|a| window.contains(a.x)).cloned().collect();
        let parts: Vec<AcPart> = self
            .parts
            .iter()
            .filter_map(|p| restrict_part(p, p.support.intersect(&window)))
            .collect();
        if atoms.is_empty() && parts.is_empty() {
            return Err(Error::EmptyTruncation(n));
        }
        self.rebuild(atoms, parts).map_err(|e| match e {
            Error::InvalidMeasure(_) => Error::EmptyTruncation(n),
            other => other,
        })
    }

    /// Same measure with every continuous part cut at the given breakpoints.
    /// Each piece gets `nodes_per_piece` nodes (or the parent's count).
    pub fn split_at(&self, breakpoints: &[f64], nodes_per_piece: Option<usize>) -> Result<SpectralMeasure> {
        let mut cuts: Vec<f64> = breakpoints.iter().cloned().filter(|b| b.is_finite()).collect();
        cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        cuts.dedup();
        let mut parts = Vec::new();
        for p in &self.parts {
            let mut edges = vec![p.support.lo];
            edges.extend(cuts.iter().cloned().filter(|&c| c > p.support.lo && c < p.support.hi));
            edges.push(p.support.hi);
            for win in edges.windows(2) {
                if let Some(mut piece) = restrict_part(p, Interval { lo: win[0], hi: win[1] }) {
                    piece.nodes = nodes_per_piece.unwrap_or(p.nodes);
                    parts.push(piece);
                }
            }
        }
        self.rebuild(self.atoms.clone(), parts)
    }

    fn rebuild(&self, atoms: Vec<Atom>, parts: Vec<AcPart>) -> Result<SpectralMeasure> {
        let m = SpectralMeasure { atoms, parts, total_mass: 0.0 };
        SpectralMeasure::from_description(&m.to_description())
    }

    /// Distance from zero to the support; `0` lies in the resolvent set of
    /// the multiplication operator exactly when this is positive.
    pub fn spectral_gap_at_zero(&self, eps: f64) -> GapReport {
        let atom_gap = self.atoms.iter().map(|a| a.x.abs());
        let part_gap = self.parts.iter().map(|p| p.support.distance_to_zero());
        let gap = atom_gap.chain(part_gap).fold(f64::INFINITY, f64::min);
        GapReport { gap_lower_bound: gap, zero_in_resolvent: gap > eps }
    }

    /// True if some continuous part has 0 in its support.
    pub fn density_touches_zero(&self) -> bool {
        self.parts.iter().any(|p| p.support.contains(0.0))
    }

    /// Convex hull of the support.
    pub fn support_hull(&self) -> Interval {
        let lo = self
            .atoms
            .iter()
            .map(|a| a.x)
            .chain(self.parts.iter().map(|p| p.support.lo))
            .fold(f64::INFINITY, f64::min);
        let hi = self
            .atoms
            .iter()
            .map(|a| a.x)
            .chain(self.parts.iter().map(|p| p.support.hi))
            .fold(f64::NEG_INFINITY, f64::max);
        Interval { lo, hi }
    }
}

fn restrict_part(p: &AcPart, support: Interval) -> Option<AcPart> {
    if support.lo >= support.hi {
        return None;
    }
    Some(AcPart { support, ..p.clone() })
}
