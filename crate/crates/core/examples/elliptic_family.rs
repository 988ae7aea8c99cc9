//! Elliptic r-matrix on A2 at several modular parameters, with its
//! coefficients at one point.

use dynr::rmatrix::{DynamicalR, Family, RMatrix, RMatrixSpec};
use dynr::verify::{verify_cdybe, SamplePlan};
use dynr::Complex64;

fn main() -> dynr::Result<()> {
    let g = dynr::lie::algebra("A2")?;
    let lambda = [Complex64::new(0.3, 0.1), Complex64::new(-0.2, 0.25)];
    let z = Complex64::new(0.2, 0.05);
    for tau in [Complex64::new(0.0, 1.0), Complex64::new(0.5, 1.5), Complex64::new(0.0, 2.0)] {
        let r = RMatrix::new(RMatrixSpec::new(Family::EllipticSpectral, g.lie_type()).with_tau(tau), g.clone())?;
        let p = r.parts(&lambda, Some(z), false)?;
        let report = verify_cdybe(&r, &SamplePlan::default())?;
        println!(
            "τ = {tau}: ρ(z) = {:.6}, σ coefficient of {} = {:.6}, residual {:.1e}",
            p.s[0],
            g.root_system.label(g.root_system.positive_roots[0]),
            p.phi[g.root_system.positive_roots[0]],
            report.check("cdybe").unwrap().max_residual
        );
    }
    Ok(())
}
