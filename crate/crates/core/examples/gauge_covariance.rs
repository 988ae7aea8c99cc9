//! Stack all four gauge kinds on the trigonometric spectral r-matrix and
//! check that the result still solves the equation.

use dynr::rmatrix::{gauge_apply, DynamicalR, Family, GaugeRecord, RMatrix, RMatrixSpec};
use dynr::verify::{verify_cdybe, SamplePlan};
use dynr::Complex64;

fn main() -> dynr::Result<()> {
    let g = dynr::lie::algebra("A2")?;
    let c = |re: f64, im: f64| Complex64::new(re, im);
    let zero = c(0.0, 0.0);
    let gauges = [
        GaugeRecord::TwoForm { c: vec![vec![zero, c(0.4, 0.1)], vec![c(-0.4, -0.1), zero]] },
        GaugeRecord::Psi {
            q: vec![vec![c(0.3, 0.0), c(0.1, 0.1)], vec![c(0.1, 0.1), c(-0.2, 0.0)]],
            v: vec![c(0.5, 0.0), c(0.0, 0.2)],
        },
        GaugeRecord::Shift { nu: vec![c(0.1, -0.1), c(0.2, 0.0)] },
        GaugeRecord::Scale { a: c(1.2, 0.0), b: c(0.8, 0.1) },
    ];
    let mut spec = RMatrixSpec::new(Family::TrigSpectral, g.lie_type()).with_x(vec![g.root_system.simple_roots[0]]);
    let plan = SamplePlan::default();
    for gauge in gauges {
        spec = gauge_apply(&spec, gauge)?;
        let r = RMatrix::new(spec.clone(), g.clone())?;
        let report = verify_cdybe(&r, &plan)?;
        println!(
            "after kind {}: coupling {:.4}, residual {:.1e}",
            spec.gauge_stack.last().unwrap().kind(),
            r.coupling(),
            report.check("cdybe").unwrap().max_residual
        );
    }
    println!("{}", spec.to_json());
    Ok(())
}
