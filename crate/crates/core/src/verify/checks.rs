//! Sampled equation checks with negative controls.

use num_complex::Complex64;

use crate::error::Result;
use crate::rmatrix::{DerivativeMode, DynamicalR, Perturbation, Perturbed};
use crate::tensor::Tensor3;
use crate::verify::axioms::CONTROL_THRESHOLD;
use crate::verify::report::{CheckResult, ControlResult, VerificationReport};
use crate::verify::residual::{cdybe_residual_constant, cdybe_residual_spectral, swap12_defect, weight_defect};
use crate::verify::sampling::{Sample, SamplePlan, DEFAULT_FD_TOLERANCE};

pub const SKEW_TOLERANCE: f64 = 1e-10;
pub const RESIDUAL_WEIGHT_TOLERANCE: f64 = 1e-11;

/// The equation's left-hand side at one sample.
pub fn residual_at(r: &dyn DynamicalR, s: &Sample, mode: DerivativeMode) -> Result<Tensor3> {
    match s.z {
        Some(z) if r.is_spectral() => cdybe_residual_spectral(r, &s.lambda, z, mode),
        _ => cdybe_residual_constant(r, &s.lambda, mode),
    }
}

pub fn residual_norms(r: &dyn DynamicalR, samples: &[Sample], plan: &SamplePlan) -> Result<Vec<f64>> {
    plan.map(samples, |s| Ok(residual_at(r, s, plan.mode)?.norm()))
}

/// Perturbations that must break the equation: a shifted coefficient, a
/// sign flip of the largest coefficient and a wrong coupling constant.
pub fn control_perturbations(r: &dyn DynamicalR, first: &Sample) -> Result<Vec<(&'static str, Perturbation)>> {
    let rs = &r.algebra().root_system;
    let mut out = vec![(
        "add-coefficient",
        Perturbation::AddRootCoefficient {
            root: rs.positive_roots[0],
            value: Complex64::new(0.1, 0.0),
        },
    )];
    let z = first.differences().map(|d| d[0]);
    let parts = r.parts(&first.lambda, z, false)?;
    let (root, size) = parts
        .phi
        .iter()
        .enumerate()
        .map(|(a, v)| (a, v.norm()))
        .fold((0, 0.0), |best, cur| if cur.1 > best.1 { cur } else { best });
    if size > 1e-3 {
        out.push(("flip-sign", Perturbation::FlipRootSign { root }));
    }
    out.push((
        "wrong-coupling",
        Perturbation::AddCasimir {
            value: Complex64::new(0.25, 0.0),
        },
    ));
    Ok(out)
}

pub fn negative_controls(r: &dyn DynamicalR, samples: &[Sample], plan: &SamplePlan) -> Result<Vec<ControlResult>> {
    let mut out = Vec::new();
    for (name, perturbation) in control_perturbations(r, &samples[0])? {
        let broken = Perturbed { inner: r, perturbation };
        let norms = residual_norms(&broken, samples, plan)?;
        out.push(ControlResult::new(format!("cdybe/{name}"), CONTROL_THRESHOLD, &norms));
    }
    Ok(out)
}

/// Equation residual at every sample, the structural properties of the
/// residual, and the negative controls.
pub fn verify_cdybe(r: &dyn DynamicalR, plan: &SamplePlan) -> Result<VerificationReport> {
    let spectral = r.is_spectral();
    let samples = plan.samples(r, spectral)?;
    let mut report = VerificationReport::new(r.label(), r.algebra().id(), plan.seed);
    let residuals = plan.map(&samples, |s| residual_at(r, s, plan.mode))?;
    report.checks.push(CheckResult::new(
        "cdybe",
        plan.tolerance,
        residuals.iter().map(Tensor3::norm).collect(),
    ));
    report.checks.push(CheckResult::new(
        "residual-weight",
        RESIDUAL_WEIGHT_TOLERANCE,
        residuals.iter().map(weight_defect).collect(),
    ));
    if !spectral {
        report.checks.push(CheckResult::new(
            "residual-skew",
            SKEW_TOLERANCE,
            residuals.iter().map(swap12_defect).collect(),
        ));
    }
    if plan.mode == DerivativeMode::Analytic {
        let fd = plan.map(&samples, |s| residual_at(r, s, DerivativeMode::FiniteDifference))?;
        report.checks.push(CheckResult::new(
            "fd-agreement",
            DEFAULT_FD_TOLERANCE,
            residuals.iter().zip(&fd).map(|(a, b)| a.distance(b)).collect(),
        ));
    }
    report.controls = negative_controls(r, &samples, plan)?;
    Ok(report)
}
