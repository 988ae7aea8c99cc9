//! Full verification report for a spec read from JSON, printed as JSON.

use dynr::rmatrix::{RMatrix, RMatrixSpec};
use dynr::verify::{check_axioms, verify_cdybe, SamplePlan};

fn main() -> dynr::Result<()> {
    let spec = RMatrixSpec::from_json(r#"{"family":"trig-cotanh","algebra":"B2","eps":[1.0,0.5],"nu":[[0.1,0.0],[0.0,0.2]]}"#)?;
    let r = RMatrix::from_spec(spec)?;
    let plan = SamplePlan::default().with_seed(7).with_count(5);
    let mut report = verify_cdybe(&r, &plan)?;
    report.merge(check_axioms(&r, &plan)?);
    println!("{}", report.to_json_without_timing());
    std::process::exit(if report.pass() { 0 } else { 1 });
}
