//! Truncation study for the Gaussian: Krylov spaces of the truncated
//! vectors g_n approach the full space as n grows.

use skl::krylov::TestFunction;
use skl::metrics::WeakGapParams;
use skl::truncation::{master_space, monotone_norm_check, run_truncation_study, TruncationParams};
use skl::SpectralMeasure;

fn main() -> skl::Result<()> {
    let grid = vec![1.0, 2.0, 3.0, 4.0];
    let mu = SpectralMeasure::standard_gaussian(8)?;
    let s = master_space(&mu, &grid, Some(8))?;
    let panel = [
        TestFunction { name: "one".into(), values: s.ones() },
        TestFunction { name: "exp(-x^2)".into(), values: s.sample(|x| (-x * x).exp()) },
    ];
    let params = TruncationParams { n_grid: grid.clone(), degree: 80, weak_gap: WeakGapParams::new(8, 2) };
    let study = run_truncation_study(&s, &s.ones(), &panel, &params)?;
    for step in &study.steps {
        println!(
            "n = {}  krylov dim {:>3}  ||1 - P 1||^2 = {:.3e}  dhat {:.4}",
            step.n,
            step.krylov_dim,
            step.panel[0].projection_error.powi(2),
            step.dhat_to_l.dhat
        );
    }
    println!("verdicts: {:?}", study.verdicts);

    let tables = monotone_norm_check(&s, &s.ones(), &grid, &[vec![0.0, 0.0, 1.0]])?;
    println!("||lambda^2 g_n||: {:?} -> {:.6}", tables[0].ambient, tables[0].full_ambient);
    Ok(())
}
