//! Truncated theta series against the closed-form elliptic r-matrix.

use dynr::verify::affine::{affine_series_check, affine_series_report};
use dynr::verify::SamplePlan;
use dynr::Complex64;

fn main() -> dynr::Result<()> {
    let g = dynr::lie::algebra("A1")?;
    let tau = Complex64::new(0.0, 0.6);
    let z = Complex64::new(0.3, 0.0);
    let lambda = [Complex64::new(0.4, 0.2)];
    for n in [2, 4, 8, 16, 32] {
        println!("N = {n:>2}: deviation {:.2e}", affine_series_check(&g, &lambda, tau, z, n)?);
    }
    let report = affine_series_report(&g, tau, z, &[7, 13, 25, 50], &SamplePlan::default())?;
    print!("{}", report.to_text());
    Ok(())
}
