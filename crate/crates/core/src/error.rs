use thiserror::Error;

/// Errors raised by the laboratory.
///
/// Variants are grouped so the scenario runner can map them onto distinct
/// process exit codes (see [`Error::exit_code`]).
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid measure: {0}")]
    InvalidMeasure(String),

    #[error("non-finite function value {value} at node {node}")]
    NonFiniteEvaluation { node: f64, value: f64 },

    #[error("node collision at {0}: change the resolution so quadrature nodes stay distinct")]
    NodeCollision(f64),

    #[error("truncation to [-{0}, {0}] leaves a measure of zero mass")]
    EmptyTruncation(f64),

    #[error("moment of order {0} overflows double precision")]
    MomentOverflow(usize),

    #[error("closed-form moments are not available: {0}")]
    NoClosedForm(String),

    #[error("orthogonality lost at degree {degree} (deviation {deviation:.3e}); lower the degree or add nodes")]
    OrthogonalityLoss { degree: usize, deviation: f64 },

    #[error("numerical degeneration: {0}")]
    Degeneration(String),

    #[error("right-hand side is not in the range of A: {0}")]
    NotInRange(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("index {index} out of range (limit {limit})")]
    OutOfRange { index: usize, limit: usize },

    #[error("scenario schema error: {0}")]
    Schema(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit status used by the `skl` binary.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Schema(_) | Error::Json(_) => 2,
            Error::InvalidMeasure(_)
            | Error::NonFiniteEvaluation { .. }
            | Error::NodeCollision(_)
            | Error::EmptyTruncation(_)
            | Error::NoClosedForm(_) => 3,
            Error::MomentOverflow(_)
            | Error::OrthogonalityLoss { .. }
            | Error::Degeneration(_) => 4,
            Error::NotInRange(_) => 5,
            Error::InvalidArgument(_) | Error::OutOfRange { .. } => 6,
            Error::Io(_) | Error::Csv(_) => 1,
        }
    }
}
