//! Three-term recurrence, Jacobi matrix and Gauss nodes from a measure.

use skl::orthopoly::{jacobi_matrix, stieltjes_recurrence};
use skl::{DiscretizedSpace, SpectralMeasure};

fn main() -> skl::Result<()> {
    let legendre = DiscretizedSpace::discretize(&SpectralMeasure::uniform(-1.0, 1.0, 1.0, 20)?)?;
    let rc = stieltjes_recurrence(&legendre, 6)?;
    for (k, b) in rc.beta.iter().enumerate() {
        let k = k as f64 + 1.0;
        println!("beta_{k} = {b:.12}  (k/sqrt(4k^2-1) = {:.12})", k / (4.0 * k * k - 1.0).sqrt());
    }
    let j = jacobi_matrix(&rc, 3)?;
    println!("3-point Gauss-Legendre nodes: {:?}", j.eigenvalues);

    let atoms = DiscretizedSpace::discretize(&SpectralMeasure::atomic(&[(-1.0, 0.5), (1.0, 0.5)])?)?;
    let rc = stieltjes_recurrence(&atoms, 5)?;
    println!("two atoms: {} polynomials, {}", rc.len(), rc.degeneration.as_deref().unwrap_or("no degeneration"));
    Ok(())
}
