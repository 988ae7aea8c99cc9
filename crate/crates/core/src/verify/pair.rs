//! Reduction of r-matrices for a pair `h ⊂ l ⊂ g` to the Cartan case.

use std::sync::Arc;

use num_complex::Complex64;

use crate::combinatorics::is_closed_subset;
use crate::error::{Error, Result};
use crate::lie::SimpleLieAlgebra;
use crate::rmatrix::{DynamicalR, Family, Perturbation, Perturbed, RMatrix, RMatrixSpec};
use crate::verify::axioms::CONTROL_THRESHOLD;
use crate::verify::checks::residual_norms;
use crate::verify::report::{CheckResult, ControlResult, VerificationReport};
use crate::verify::residual::pair_cdybe_residual;
use crate::verify::sampling::{Sample, SamplePlan};

/// `ρ(λ) = Σ_{α∈Δ(l)₊} (e_α⊗e_{−α} − e_{−α}⊗e_α)/(α,λ)`, which is the
/// rational family with `X = ±Δ(l)₊`.
pub fn rho_matrix(g: &Arc<SimpleLieAlgebra>, l_positive: &[usize]) -> Result<RMatrix> {
    let rs = &g.root_system;
    if l_positive.iter().any(|&a| a >= rs.len() || !rs.is_positive(a)) {
        return Err(Error::SubalgebraInvalid("roots of l must be positive roots".into()));
    }
    let mut x: Vec<usize> = l_positive.to_vec();
    x.extend(l_positive.iter().map(|&a| rs.negative(a)));
    if !is_closed_subset(rs, &x) {
        return Err(Error::SubalgebraInvalid(
            "±Δ(l)₊ is not closed under root addition".into(),
        ));
    }
    RMatrix::new(RMatrixSpec::new(Family::RationalConstant, g.lie_type()).with_x(x), g.clone())
}

fn pair_norms(r_tilde: &dyn DynamicalR, rho: &RMatrix, samples: &[Sample], plan: &SamplePlan) -> Result<Vec<f64>> {
    plan.map(samples, |s| Ok(pair_cdybe_residual(r_tilde, rho, &s.lambda, plan.mode)?.norm()))
}

/// Checks that `r = r̃ − ρ` satisfies the pair equation on `h*` exactly
/// when `r̃` satisfies the Cartan equation, and that `ρ` alone solves it.
pub fn reduce_pair_check(r_tilde: &RMatrix, l_positive: &[usize], plan: &SamplePlan) -> Result<VerificationReport> {
    if r_tilde.is_spectral() {
        return Err(Error::SpecInvalid("pair reduction applies to constant r-matrices".into()));
    }
    let g = r_tilde.algebra();
    let rho = rho_matrix(g, l_positive)?;
    // both ρ and r̃ must be away from their poles
    let guard = Guarded { a: r_tilde, b: &rho };
    let samples = plan.samples(&guard, false)?;

    let mut report = VerificationReport::new(format!("pair[{}]", r_tilde.label()), g.id(), plan.seed);
    report.checks.push(CheckResult::new("pair-cdybe", plan.tolerance, pair_norms(r_tilde, &rho, &samples, plan)?));
    report.checks.push(CheckResult::new("tilde-cdybe", plan.tolerance, residual_norms(r_tilde, &samples, plan)?));
    report.checks.push(CheckResult::new("rho-cdybe", plan.tolerance, residual_norms(&rho, &samples, plan)?));

    let broken = Perturbed {
        inner: r_tilde,
        perturbation: Perturbation::AddRootCoefficient {
            root: g.root_system.positive_roots[0],
            value: Complex64::new(0.1, 0.0),
        },
    };
    let control = pair_norms(&broken, &rho, &samples, plan)?;
    report
        .controls
        .push(ControlResult::new("pair-cdybe/add-coefficient", CONTROL_THRESHOLD, &control));
    Ok(report)
}

struct Guarded<'a> {
    a: &'a RMatrix,
    b: &'a RMatrix,
}

impl DynamicalR for Guarded<'_> {
    fn algebra(&self) -> &Arc<SimpleLieAlgebra> {
        self.a.algebra()
    }

    fn is_spectral(&self) -> bool {
        false
    }

    fn coupling(&self) -> Complex64 {
        self.a.coupling()
    }

    fn label(&self) -> String {
        self.a.label()
    }

    fn pole_distance(&self, lambda: &[Complex64], z: Option<Complex64>) -> f64 {
        self.a.pole_distance(lambda, z).min(self.b.pole_distance(lambda, z))
    }

    fn parts(&self, lambda: &[Complex64], z: Option<Complex64>, derivative: bool) -> Result<crate::rmatrix::Parts> {
        self.a.parts(lambda, z, derivative)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::algebra;

    #[test]
    fn a2_with_one_root_in_l() {
        let g = algebra("A2").unwrap();
        let a1 = g.root_system.simple_roots[0];
        let r = RMatrix::new(
            RMatrixSpec::new(Family::RationalConstant, g.lie_type()).with_x((0..6).collect()),
            g.clone(),
        )
        .unwrap();
        let report = reduce_pair_check(&r, &[a1], &SamplePlan::default()).unwrap();
        assert!(report.pass(), "{}", report.to_text());
    }

    #[test]
    fn empty_l_is_the_cartan_case() {
        let g = algebra("B2").unwrap();
        let rho = rho_matrix(&g, &[]).unwrap();
        assert_eq!(rho.eval(&[Complex64::new(0.3, 0.0), Complex64::new(0.5, 0.0)], None).unwrap().norm(), 0.0);
        let r = RMatrix::new(RMatrixSpec::new(Family::TrigCotanh, g.lie_type()), g.clone()).unwrap();
        let report = reduce_pair_check(&r, &[], &SamplePlan::default()).unwrap();
        assert!(report.pass(), "{}", report.to_text());
        let pair = &report.check("pair-cdybe").unwrap().residuals;
        let plain = &report.check("tilde-cdybe").unwrap().residuals;
        for (p, q) in pair.iter().zip(plain) {
            assert!((p - q).abs() < 1e-12);
        }
    }

    #[test]
    fn non_closed_l_is_rejected() {
        let g = algebra("A2").unwrap();
        let rs = &g.root_system;
        let r = RMatrix::new(RMatrixSpec::new(Family::TrigCotanh, g.lie_type()), g.clone()).unwrap();
        let both = rs.simple_roots.clone();
        assert!(matches!(
            reduce_pair_check(&r, &both, &SamplePlan::default()),
            Err(Error::SubalgebraInvalid(_))
        ));
    }
}
