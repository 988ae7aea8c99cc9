//! Recover the coupling constant of spectral r-matrices from their residue
//! at z = 0.

use dynr::rmatrix::{gauge_apply, Family, GaugeRecord, RMatrix, RMatrixSpec};
use dynr::verify::axioms::{extract_residue, RESIDUE_POINTS, RESIDUE_RADIUS};
use dynr::Complex64;

fn main() -> dynr::Result<()> {
    let g = dynr::lie::algebra("A1")?;
    let lambda = [Complex64::new(0.45, 0.1)];
    let scale = GaugeRecord::Scale { a: Complex64::new(1.0, 0.0), b: Complex64::new(2.0, 0.0) };
    for family in [Family::EllipticSpectral, Family::TrigSpectral, Family::RationalSpectral] {
        let spec = RMatrixSpec::new(family, g.lie_type());
        for spec in [spec.clone(), gauge_apply(&spec, scale.clone())?] {
            let r = RMatrix::new(spec.clone(), g.clone())?;
            let res = extract_residue(&r, &lambda, RESIDUE_RADIUS, RESIDUE_POINTS)?;
            println!("{:<40} ε = {:.10}  (off Ω by {:.1e})", spec.id(), res.eps, res.deviation);
        }
    }
    Ok(())
}
