//! Carleman sums, vector classification and the orthonormal-polynomial
//! series at z = i, side by side for the Gaussian and the log-normal.

use num_complex::Complex64;
use skl::moments::{carleman, classify_vector, closed_form_moments};
use skl::orthopoly::{determinacy_series_test, stieltjes_recurrence};
use skl::{DiscretizedSpace, SpectralMeasure};

fn main() -> skl::Result<()> {
    for (name, mu) in [
        ("gaussian", SpectralMeasure::standard_gaussian(300)?),
        ("lognormal", SpectralMeasure::standard_lognormal(300)?),
    ] {
        let s = closed_form_moments(&mu, 400)?;
        let c = carleman(&s, 1e-6);
        println!("{name}: Carleman partial sum {:.4} -> {:?}", c.partial_sums.last().unwrap(), c.verdict);

        let class = classify_vector(&closed_form_moments(&mu, 80)?)?;
        println!("  vector class {:?}", class.verdict);

        let rc = stieltjes_recurrence(&DiscretizedSpace::discretize(&mu)?, 13)?;
        let series = determinacy_series_test(&rc, Complex64::new(0.0, 1.0), 4, 1e-4)?;
        println!("  series ratio {:.4} -> {:?}", series.fitted_ratio, series.verdict);
    }
    Ok(())
}
