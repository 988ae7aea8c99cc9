//! Zero weight, unitarity and residue conditions.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::rmatrix::{DynamicalR, Perturbation, Perturbed};
use crate::tensor::{act_diag, Tensor2};
use crate::verify::report::{CheckResult, ControlResult, VerificationReport};
use crate::verify::sampling::SamplePlan;

pub const ZERO_WEIGHT_TOLERANCE: f64 = 1e-12;
pub const UNITARITY_TOLERANCE: f64 = 1e-11;
pub const RESIDUE_RADIUS: f64 = 0.05;
pub const RESIDUE_POINTS: usize = 16;
pub const CONTROL_THRESHOLD: f64 = 1e-3;

/// `max_i ‖[x_i⊗1 + 1⊗x_i, t]‖`.
pub fn zero_weight_defect(t: &Tensor2) -> f64 {
    (0..t.algebra.rank()).map(|i| act_diag(i, t).norm()).fold(0.0, f64::max)
}

/// `‖r + r²¹ − εΩ‖` for constant `r`, `‖r¹²(z) + r²¹(−z)‖` for spectral `r`.
pub fn unitarity_defect(r: &dyn DynamicalR, lambda: &[Complex64], z: Option<Complex64>) -> Result<f64> {
    let g = r.algebra();
    match z.filter(|_| r.is_spectral()) {
        None => {
            let t = r.eval(lambda, None)?;
            let omega = Tensor2::casimir(g).scale(r.coupling());
            Ok((&(&t + &t.transpose()) - &omega).norm())
        }
        Some(z) => {
            let a = r.eval(lambda, Some(z))?;
            let b = r.eval(lambda, Some(-z))?;
            Ok((&a + &b.transpose()).norm())
        }
    }
}

#[derive(Debug, Clone)]
pub struct Residue {
    pub residue: Tensor2,
    /// Coefficient of the projection of the residue onto `Ω`.
    pub eps: Complex64,
    /// `‖residue − eps·Ω‖`.
    pub deviation: f64,
}

/// Residue at `z = 0` from the trapezoidal contour average
/// `(1/M) Σ_j z_j r(λ, z_j)`, `z_j = radius·e^{2πij/M}`.
pub fn extract_residue(r: &dyn DynamicalR, lambda: &[Complex64], radius: f64, points: usize) -> Result<Residue> {
    if !r.is_spectral() {
        return Err(Error::SpecInvalid(format!("{} has no spectral parameter", r.label())));
    }
    if !(radius > 0.0) || points == 0 {
        return Err(Error::SpecInvalid("residue contour needs radius > 0 and points > 0".into()));
    }
    let g = r.algebra();
    let mut acc = Tensor2::zeros(g);
    for j in 0..points {
        let z = Complex64::from_polar(radius, 2.0 * PI * j as f64 / points as f64);
        acc = &acc + &r.eval(lambda, Some(z))?.scale(z);
    }
    let residue = acc.scale(Complex64::new(1.0 / points as f64, 0.0));
    let eps = (0..g.dim)
        .map(|b| residue[(b, g.dual(b))])
        .sum::<Complex64>()
        / g.dim as f64;
    let deviation = (&residue - &Tensor2::casimir(g).scale(eps)).norm();
    Ok(Residue {
        residue,
        eps,
        deviation,
    })
}

/// Zero-weight, unitarity and (for spectral `r`) residue checks at the
/// plan's samples, with a unitarity-breaking negative control.
pub fn check_axioms(r: &dyn DynamicalR, plan: &SamplePlan) -> Result<VerificationReport> {
    let spectral = r.is_spectral();
    let samples = plan.samples(r, spectral)?;
    let z_of = |s: &crate::verify::Sample| s.differences().map(|d| d[0]);
    let mut report = VerificationReport::new(r.label(), r.algebra().id(), plan.seed);

    let weights = plan.map(&samples, |s| Ok(zero_weight_defect(&r.eval(&s.lambda, z_of(s))?)))?;
    report.checks.push(CheckResult::new("zero-weight", ZERO_WEIGHT_TOLERANCE, weights));

    let unitarity = plan.map(&samples, |s| unitarity_defect(r, &s.lambda, z_of(s)))?;
    report.checks.push(CheckResult::new("unitarity", UNITARITY_TOLERANCE, unitarity));

    if spectral {
        let eps = r.coupling();
        let residues = plan.map(&samples, |s| {
            let res = extract_residue(r, &s.lambda, RESIDUE_RADIUS, RESIDUE_POINTS)?;
            Ok((res.eps - eps).norm().max(res.deviation))
        })?;
        report.checks.push(CheckResult::new("residue", plan.tolerance, residues));
    }

    let root = r.algebra().root_system.positive_roots[0];
    let broken = Perturbed {
        inner: r,
        perturbation: Perturbation::AddRootCoefficient {
            root,
            value: Complex64::new(0.1, 0.0),
        },
    };
    let control = plan.map(&samples, |s| unitarity_defect(&broken, &s.lambda, z_of(s)))?;
    report
        .controls
        .push(ControlResult::new("unitarity/add-coefficient", CONTROL_THRESHOLD, &control));
    Ok(report)
}
