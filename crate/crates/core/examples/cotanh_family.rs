//! The cotangent family and its degenerations on A2.

use dynr::rmatrix::{DynamicalR, Family, RMatrix, RMatrixSpec};
use dynr::verify::{verify_cdybe, SamplePlan};
use dynr::Complex64;

fn main() -> dynr::Result<()> {
    let g = dynr::lie::algebra("A2")?;
    let rs = &g.root_system;
    let eps = Complex64::new(1.0, 1.0);
    let nu = vec![Complex64::new(0.2, 0.0), Complex64::new(-0.1, 0.3)];
    let specs = [
        RMatrixSpec::new(Family::TrigCotanh, g.lie_type()).with_eps(eps).with_nu(nu.clone()),
        RMatrixSpec::new(Family::TrigDegenerate, g.lie_type()).with_eps(eps).with_nu(nu.clone()),
        RMatrixSpec::new(Family::TrigDegenerate, g.lie_type())
            .with_eps(eps)
            .with_nu(nu)
            .with_x(vec![rs.simple_roots[0]]),
    ];
    let lambda = [Complex64::new(0.4, 0.1), Complex64::new(-0.3, 0.2)];
    for spec in specs {
        let r = RMatrix::new(spec.clone(), g.clone())?;
        let phi = r.parts(&lambda, None, false)?.phi;
        println!("{}", spec.id());
        for &a in &rs.positive_roots {
            println!("  φ_{:<6} = {:.6}", rs.label(a), phi[a]);
        }
        let report = verify_cdybe(&r, &SamplePlan::default())?;
        println!("  residual {:.1e}", report.check("cdybe").unwrap().max_residual);
    }
    Ok(())
}
