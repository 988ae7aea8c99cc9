//! Rational r-matrices on B2, one per closed root subset.

use dynr::combinatorics::enumerate_closed_subsets;
use dynr::rmatrix::{Family, RMatrix, RMatrixSpec};
use dynr::verify::{verify_cdybe, SamplePlan};

fn main() -> dynr::Result<()> {
    let g = dynr::lie::algebra("B2")?;
    let rs = &g.root_system;
    let plan = SamplePlan::default();
    for x in enumerate_closed_subsets(rs)? {
        let labels: Vec<String> = x.members.iter().map(|&r| rs.label(r)).collect();
        let spec = RMatrixSpec::new(Family::RationalConstant, g.lie_type()).with_x(x.members);
        let report = verify_cdybe(&RMatrix::new(spec, g.clone())?, &plan)?;
        let cdybe = report.check("cdybe").unwrap();
        println!("X = {{{}}}: residual {:.1e}, pass {}", labels.join(", "), cdybe.max_residual, report.pass());
    }
    Ok(())
}
