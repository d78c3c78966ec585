//! Build measures, discretize them and inspect the resulting spaces.

use skl::{DiscretizedSpace, InnerProduct, SpectralMeasure};

fn main() -> skl::Result<()> {
    let mixed = SpectralMeasure::from_json(
        r#"{"atoms":[{"x":0,"w":0.3}],"ac":[{"kind":"uniform","support":[1,2],"params":{"mass":0.7},"nodes":8}]}"#,
    )?;
    let space = DiscretizedSpace::discretize(&mixed)?;
    println!("mixed: mass {:.3}, {} nodes", mixed.total_mass(), space.len());
    let gap = mixed.spectral_gap_at_zero(1e-12);
    println!("  zero in resolvent: {}", gap.zero_in_resolvent);

    let gauss = SpectralMeasure::standard_gaussian(48)?;
    for n in [1.0, 2.0, 3.0] {
        let t = gauss.truncate(n)?;
        println!("gaussian truncated to [-{n}, {n}]: mass {:.10}", t.total_mass());
    }

    let logn = SpectralMeasure::standard_lognormal(64)?;
    let s = DiscretizedSpace::discretize(&logn)?;
    let x = s.sample(|l| l);
    println!("lognormal: ||lambda||^2 = {:.12} (e^2 = {:.12})", s.norm(InnerProduct::Ambient, &x).powi(2), std::f64::consts::E.powi(2));
    println!("           graph norm of 1 = {:.6}", s.norm(InnerProduct::Graph, &s.ones()));
    Ok(())
}
