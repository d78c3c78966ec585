use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measure::{MeasureDescription, SpectralMeasure};
use crate::metrics::DEFAULT_KINT_THRESHOLD;
use crate::moments::{DEFAULT_CARLEMAN_TOL, DEFAULT_HANKEL_TOL};
use crate::orthopoly::DEFAULT_SERIES_TAIL_TOL;

/// A scenario document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    /// Used as the output subdirectory; `[A-Za-z0-9_-]+`.
    pub name: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub description: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub measure: Option<MeasureDescription>,
    pub task: Task,
    #[serde(default)]
    pub output: OutputSpec,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    /// Also write CSV tables next to `report.json`.
    #[serde(default = "yes")]
    pub csv: bool,
}

impl Default for OutputSpec {
    fn default() -> Self {
        OutputSpec { csv: true }
    }
}

fn yes() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Task {
    Moments(MomentsTask),
    Hamburger(HamburgerTask),
    Determinacy(DeterminacyTask),
    Classify(ClassifyTask),
    Recurrence(RecurrenceTask),
    Solve(SolveTask),
    CoreGap(CoreGapTask),
    Kint(KintTask),
    Separation(SeparationTask),
    Weakgap(WeakgapTask),
    WeakgapProperties(WeakgapPropertiesTask),
    Truncation(TruncationTask),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MomentSource {
    Quadrature,
    ClosedForm,
}

/// A function of `lambda`, sampled at the nodes.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum VectorSpec {
    #[default]
    Unit,
    /// Ascending coefficients.
    Polynomial { coeffs: Vec<f64> },
    Reciprocal,
    /// `sin(2 pi freq ln lambda)`.
    SinLog {
        #[serde(default = "one")]
        freq: f64,
    },
    /// Raw values, one per node.
    Values { values: Vec<f64> },
}

fn one() -> f64 {
    1.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NamedVector {
    pub name: String,
    pub vector: VectorSpec,
}

/// A subspace of the discretized space, orthonormalized in the ambient
/// inner product.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum FrameSpec {
    Krylov {
        degree: usize,
        #[serde(default)]
        g: VectorSpec,
    },
    /// Orthonormal polynomials of the given degrees.
    Probes { indices: Vec<usize> },
    Vectors { vectors: Vec<Vec<f64>> },
    /// Seeded Gaussian vectors.
    Random { dim: usize },
    /// The whole space.
    Full,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MomentsTask {
    pub order: usize,
    #[serde(default)]
    pub compare_closed_form: bool,
    #[serde(default)]
    pub hankel: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HamburgerTask {
    pub count: usize,
    pub max_atoms: usize,
    pub order: usize,
    #[serde(default = "hankel_tol")]
    pub tol: f64,
}

fn hankel_tol() -> f64 {
    DEFAULT_HANKEL_TOL
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CarlemanSpec {
    pub order: usize,
    pub source: MomentSource,
    #[serde(default = "carleman_tol")]
    pub tol: f64,
}

fn carleman_tol() -> f64 {
    DEFAULT_CARLEMAN_TOL
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesSpec {
    /// Degree horizon `K`.
    pub k: usize,
    #[serde(default = "imaginary_unit")]
    pub z0: [f64; 2],
    pub tail_window: usize,
    #[serde(default = "series_tol")]
    pub tail_tol: f64,
}

fn imaginary_unit() -> [f64; 2] {
    [0.0, 1.0]
}

fn series_tol() -> f64 {
    DEFAULT_SERIES_TAIL_TOL
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeterminacyTask {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub carleman: Option<CarlemanSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub series: Option<SeriesSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassifyTask {
    pub order: usize,
    pub source: MomentSource,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReferenceFamily {
    Legendre,
    Hermite,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RecurrenceTask {
    pub k: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reference: Option<ReferenceFamily>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolveTask {
    #[serde(default)]
    pub g: VectorSpec,
    pub m_max: usize,
    pub tol: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoreGapTask {
    #[serde(default)]
    pub g: VectorSpec,
    pub m: usize,
    pub tests: Vec<NamedVector>,
    /// Also report `<h, lambda^n>` relative to the norms for `n <= degree`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orthogonality_degree: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KintTask {
    #[serde(default)]
    pub g: VectorSpec,
    pub m: usize,
    pub m_big: usize,
    #[serde(default = "kint_threshold")]
    pub threshold: f64,
    pub samples: usize,
}

fn kint_threshold() -> f64 {
    DEFAULT_KINT_THRESHOLD
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeparationTask {
    pub m_frame: FrameSpec,
    pub n_frame: FrameSpec,
    pub samples: usize,
    #[serde(default = "kint_threshold")]
    pub threshold: f64,
}

fn inner_tol() -> f64 {
    1e-6
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeakgapTask {
    pub c: FrameSpec,
    pub d: FrameSpec,
    pub samples: usize,
    #[serde(default = "inner_tol")]
    pub inner_tol: f64,
    #[serde(default)]
    pub ascent_sweeps: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeakgapPropertiesTask {
    /// Number of random frame triples for the triangle inequality.
    pub triples: usize,
    pub max_dim: usize,
    pub samples: usize,
    #[serde(default = "inner_tol")]
    pub inner_tol: f64,
    #[serde(default)]
    pub ascent_sweeps: usize,
    /// Grid resolution of the brute-force oracle.
    pub grid: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TruncationTask {
    pub n_grid: Vec<f64>,
    pub degree: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nodes_per_piece: Option<usize>,
    #[serde(default)]
    pub g: VectorSpec,
    pub panel: Vec<NamedVector>,
    pub samples: usize,
    #[serde(default = "inner_tol")]
    pub inner_tol: f64,
    #[serde(default)]
    pub ascent_sweeps: usize,
    /// Ascending coefficients of the polynomials for the norm-monotonicity tables.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub norm_polynomials: Vec<Vec<f64>>,
}

impl Task {
    pub fn kind(&self) -> &'static str {
        match self {
            Task::Moments(_) => "moments",
            Task::Hamburger(_) => "hamburger",
            Task::Determinacy(_) => "determinacy",
            Task::Classify(_) => "classify",
            Task::Recurrence(_) => "recurrence",
            Task::Solve(_) => "solve",
            Task::CoreGap(_) => "core_gap",
            Task::Kint(_) => "kint",
            Task::Separation(_) => "separation",
            Task::Weakgap(_) => "weakgap",
            Task::WeakgapProperties(_) => "weakgap_properties",
            Task::Truncation(_) => "truncation",
        }
    }

    /// Tasks that draw random samples and therefore need a seed.
    pub fn needs_seed(&self) -> bool {
        matches!(
            self,
            Task::Hamburger(_)
                | Task::Kint(_)
                | Task::Separation(_)
                | Task::Weakgap(_)
                | Task::WeakgapProperties(_)
                | Task::Truncation(_)
        )
    }

    fn needs_measure(&self) -> bool {
        !matches!(self, Task::Hamburger(_))
    }
}

fn schema(msg: impl Into<String>) -> Error {
    Error::Schema(msg.into())
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(schema(format!("{name} must be positive and finite, got {v}")))
    }
}

fn at_least(name: &str, v: usize, min: usize) -> Result<()> {
    if v >= min {
        Ok(())
    } else {
        Err(schema(format!("{name} must be at least {min}, got {v}")))
    }
}

fn check_vector(v: &VectorSpec) -> Result<()> {
    match v {
        VectorSpec::Polynomial { coeffs } if coeffs.is_empty() => Err(schema("polynomial needs coefficients")),
        VectorSpec::SinLog { freq } if !freq.is_finite() => Err(schema("sin_log frequency must be finite")),
        _ => Ok(()),
    }
}

fn check_frame(f: &FrameSpec) -> Result<()> {
    match f {
        FrameSpec::Krylov { g, .. } => check_vector(g),
        FrameSpec::Probes { indices } if indices.is_empty() => Err(schema("probe frame needs indices")),
        FrameSpec::Vectors { vectors } if vectors.is_empty() => Err(schema("vector frame needs vectors")),
        FrameSpec::Random { dim } => at_least("random frame dim", *dim, 1),
        _ => Ok(()),
    }
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<Self> {
        let sc: Scenario = serde_json::from_str(text).map_err(|e| schema(e.to_string()))?;
        sc.validate()?;
        Ok(sc)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scenarios always serialize")
    }

    /// Schema-level checks of the task parameters against the task kind.
    /// Does not build the measure; see [`Scenario::build_measure`].
    pub fn validate(&self) -> Result<()> {
        if self.name.is_empty() || !self.name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-') {
            return Err(schema(format!("scenario name '{}' must match [A-Za-z0-9_-]+", self.name)));
        }
        if self.task.needs_seed() && self.seed.is_none() {
            return Err(schema(format!("task '{}' samples randomly and needs a seed", self.task.kind())));
        }
        if self.task.needs_measure() && self.measure.is_none() {
            return Err(schema(format!("task '{}' needs a measure", self.task.kind())));
        }
        match &self.task {
            Task::Moments(t) => at_least("order", t.order, if t.hankel { 2 } else { 0 }),
            Task::Hamburger(t) => {
                at_least("count", t.count, 1)?;
                at_least("max_atoms", t.max_atoms, 1)?;
                at_least("order", t.order, 2)?;
                positive("tol", t.tol)
            }
            Task::Determinacy(t) => {
                if t.carleman.is_none() && t.series.is_none() {
                    return Err(schema("determinacy needs a carleman or series block"));
                }
                if let Some(c) = &t.carleman {
                    at_least("carleman order", c.order, 2)?;
                    positive("carleman tol", c.tol)?;
                }
                if let Some(s) = &t.series {
                    at_least("series k", s.k, 2)?;
                    at_least("tail_window", s.tail_window, 2)?;
                    positive("tail_tol", s.tail_tol)?;
                    if s.z0[1] == 0.0 {
                        return Err(schema("z0 must be non-real"));
                    }
                }
                Ok(())
            }
            Task::Classify(t) => at_least("order", t.order, 6),
            Task::Recurrence(t) => at_least("k", t.k, 1),
            Task::Solve(t) => {
                check_vector(&t.g)?;
                positive("tol", t.tol)
            }
            Task::CoreGap(t) => {
                check_vector(&t.g)?;
                if t.tests.is_empty() {
                    return Err(schema("core_gap needs test functions"));
                }
                t.tests.iter().try_for_each(|n| check_vector(&n.vector))
            }
            Task::Kint(t) => {
                check_vector(&t.g)?;
                if t.m >= t.m_big {
                    return Err(schema("kint needs m < m_big"));
                }
                positive("threshold", t.threshold)
            }
            Task::Separation(t) => {
                check_frame(&t.m_frame)?;
                check_frame(&t.n_frame)?;
                positive("threshold", t.threshold)
            }
            Task::Weakgap(t) => {
                check_frame(&t.c)?;
                check_frame(&t.d)?;
                at_least("samples", t.samples, 1)?;
                positive("inner_tol", t.inner_tol)
            }
            Task::WeakgapProperties(t) => {
                at_least("triples", t.triples, 1)?;
                at_least("max_dim", t.max_dim, 1)?;
                at_least("samples", t.samples, 1)?;
                at_least("grid", t.grid, 8)?;
                positive("inner_tol", t.inner_tol)
            }
            Task::Truncation(t) => {
                check_vector(&t.g)?;
                if t.n_grid.is_empty() || t.n_grid.windows(2).any(|w| w[0] >= w[1]) || t.n_grid.iter().any(|n| !(*n > 0.0)) {
                    return Err(schema("n_grid must be positive and strictly increasing"));
                }
                at_least("samples", t.samples, 1)?;
                positive("inner_tol", t.inner_tol)?;
                t.panel.iter().try_for_each(|n| check_vector(&n.vector))?;
                if t.norm_polynomials.iter().any(|p| p.is_empty()) {
                    return Err(schema("norm polynomials need coefficients"));
                }
                Ok(())
            }
        }
    }

    /// The scenario's measure.
    pub fn build_measure(&self) -> Result<Option<SpectralMeasure>> {
        self.measure.as_ref().map(SpectralMeasure::from_description).transpose()
    }
}
