//! Moments by quadrature against closed forms, and Hankel positivity.

use skl::moments::{closed_form_moments, compute_moments, hankel_psd_check, MomentSequence};
use skl::{DiscretizedSpace, SpectralMeasure};

fn main() -> skl::Result<()> {
    let mu = SpectralMeasure::standard_gaussian(64)?;
    let quad = compute_moments(&DiscretizedSpace::discretize(&mu)?, 12)?;
    let exact = closed_form_moments(&mu, 12)?;
    for n in (0..=12).step_by(2) {
        println!("s_{n:<2} quadrature {:>14.6} closed form {:>14.6}", quad.get(n), exact.get(n));
    }

    let h = hankel_psd_check(&exact, 1e-10)?;
    println!("gaussian Hankel PSD up to size {}: {}", h.min_eigenvalues.len(), h.is_moment_sequence);

    let bad = hankel_psd_check(&MomentSequence::from_values(&[1.0, 0.0, -1.0]), 1e-10)?;
    println!("(1, 0, -1): first failing size {:?}", bad.first_failure_size);
    Ok(())
}
