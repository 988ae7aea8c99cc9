//! Reduce the rational r-matrix on A2 to a solution for the pair
//! h ⊂ l ⊂ g with l spanned by one root.

use dynr::rmatrix::{Family, RMatrix, RMatrixSpec};
use dynr::verify::pair::reduce_pair_check;
use dynr::verify::SamplePlan;

fn main() -> dynr::Result<()> {
    let g = dynr::lie::algebra("A2")?;
    let rs = &g.root_system;
    let r = RMatrix::new(RMatrixSpec::new(Family::RationalConstant, g.lie_type()).with_x((0..rs.len()).collect()), g.clone())?;
    let report = reduce_pair_check(&r, &[rs.simple_roots[0]], &SamplePlan::default())?;
    print!("{}", report.to_text());
    Ok(())
}
