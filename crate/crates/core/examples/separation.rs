//! Separation between subspaces and the trivial-intersection indicator.

use skl::frame::SubspaceFrame;
use skl::metrics::{kint_indicator, separation_range, DEFAULT_KINT_THRESHOLD};
use skl::{DiscretizedSpace, InnerProduct, SpectralMeasure};

fn main() -> skl::Result<()> {
    let s = DiscretizedSpace::discretize(&SpectralMeasure::atomic(&[(1.0, 0.5), (2.0, 0.5)])?)?;
    let m = SubspaceFrame::from_vectors(&s, &[vec![1.0, 0.0]], InnerProduct::Ambient)?;
    let theta = std::f64::consts::FRAC_PI_3;
    let n = SubspaceFrame::from_vectors(&s, &[vec![theta.cos(), theta.sin()]], InnerProduct::Ambient)?;
    let r = separation_range(&s, &m, &n, 16, 7, DEFAULT_KINT_THRESHOLD)?;
    println!("two lines: sigma_max {:.6}, min separation {:.6}", r.sigma_max, r.min_separation);

    for (name, mu) in [
        ("uniform[1,2]", SpectralMeasure::uniform(1.0, 2.0, 1.0, 64)?),
        ("gaussian", SpectralMeasure::standard_gaussian(64)?),
    ] {
        let space = DiscretizedSpace::discretize(&mu)?;
        let k = kint_indicator(&space, &space.ones(), 5, 40, DEFAULT_KINT_THRESHOLD, 32, 1)?;
        match &k.separation {
            Some(sep) => println!(
                "{name}: complement dim {}, min separation {:.5}, trivial intersection indicated {}",
                k.complement_dim, sep.min_separation, sep.trivial_intersection_indicated
            ),
            None => println!("{name}: degenerate ({:?})", k.notices),
        }
    }
    Ok(())
}
