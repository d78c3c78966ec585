pub mod error;
pub mod frame;
pub mod krylov;
pub mod measure;
pub mod metrics;
pub mod moments;
pub mod numeric;
pub mod orthopoly;
pub mod quadrature;
pub mod scenario;
pub mod space;
pub mod truncation;

pub use error::{Error, Result};
pub use measure::SpectralMeasure;
pub use space::{DiscretizedSpace, InnerProduct};
