//! Weak norm against an orthopoly probe frame and the estimated weak gap
//! between two subspaces, checked against a brute-force grid.

use skl::frame::SubspaceFrame;
use skl::metrics::{brute_force_dw, dw_estimate, weak_norm, ProbeFrame, WeakGapParams};
use skl::{DiscretizedSpace, InnerProduct, SpectralMeasure};

fn main() -> skl::Result<()> {
    let s = DiscretizedSpace::discretize(&SpectralMeasure::uniform(-1.0, 1.0, 1.0, 12)?)?;
    let probes = ProbeFrame::orthopoly(&s)?;
    let v = probes.frame().basis.clone();
    for k in [0, 1, 2, 5] {
        println!("||p_{k}||_w = {:.6}", weak_norm(&s, &v[k], &probes));
    }

    let line = |k: usize| SubspaceFrame::from_vectors(&s, &[v[k].clone()], InnerProduct::Ambient);
    let (c, d) = (line(0)?, line(3)?);
    let est = dw_estimate(&s, &c, &d, &probes, &WeakGapParams::new(32, 5))?;
    let grid = brute_force_dw(&s, &c, &d, &probes, 4000)?;
    println!("dhat(p_0, p_3) = {:.6}, grid search {:.6}", est.dhat, grid);
    Ok(())
}
