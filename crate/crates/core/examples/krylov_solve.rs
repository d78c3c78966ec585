//! Krylov least squares for lambda f = 1, and the core-condition gap for
//! a vector outside every Krylov space.

use skl::krylov::{core_condition_gap, solve_krylov, TestFunction};
use skl::{DiscretizedSpace, SpectralMeasure};

fn main() -> skl::Result<()> {
    let u = DiscretizedSpace::discretize(&SpectralMeasure::uniform(1.0, 2.0, 1.0, 64)?)?;
    let r = solve_krylov(&u, &u.ones(), 15, 1e-10)?;
    for (m, res) in r.degrees.iter().zip(&r.residuals).step_by(3) {
        println!("m = {m:>2}  residual {res:.3e}");
    }
    println!("converged {}, rate {:?}", r.converged, r.asymptotic_ratio);

    let zero = DiscretizedSpace::discretize(&SpectralMeasure::atomic(&[(0.0, 0.5), (2.0, 0.5)])?)?;
    if let Err(e) = solve_krylov(&zero, &zero.ones(), 3, 1e-10) {
        println!("atom at zero: {e}");
    }

    let l = DiscretizedSpace::discretize(&SpectralMeasure::standard_lognormal(300)?)?;
    let h = TestFunction { name: "sin(2 pi ln x)".into(), values: l.sample(|x| (2.0 * std::f64::consts::PI * x.ln()).sin()) };
    let gap = core_condition_gap(&l, &l.ones(), 10, &[h])?;
    let e = &gap.entries[0];
    println!("lognormal witness: relative residual {:.6} at every degree", e.relative_residual);
    Ok(())
}
