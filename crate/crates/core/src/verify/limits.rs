//! Convergence of families along parameter schedules.

use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::combinatorics::simple_roots_of;
use crate::error::{Error, Result};
use crate::lie::SimpleLieAlgebra;
use crate::rmatrix::{DynamicalR, Family, RMatrix, RMatrixSpec};
use crate::verify::report::{CheckResult, VerificationReport};
use crate::verify::sampling::{Sample, SamplePlan};

pub const LIMIT_TOLERANCE: f64 = 1e-5;

/// A one-parameter family of specs with an optional asserted limit.
#[derive(Debug, Clone)]
pub struct LimitPath {
    pub name: String,
    pub params: Vec<Complex64>,
    pub specs: Vec<RMatrixSpec>,
    pub target: Option<RMatrixSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LimitOutcome {
    pub params: Vec<Complex64>,
    /// Sup deviation between consecutive schedule entries.
    pub cauchy: Vec<f64>,
    /// Sup deviation of each entry from the target, if one is asserted.
    pub target_deviation: Option<Vec<f64>>,
}

impl LimitOutcome {
    pub fn last_cauchy(&self) -> f64 {
        self.cauchy.last().copied().unwrap_or(f64::INFINITY)
    }

    pub fn final_deviation(&self) -> Option<f64> {
        self.target_deviation.as_ref().and_then(|d| d.last().copied())
    }

    pub fn cauchy_is_decreasing(&self) -> bool {
        self.cauchy.windows(2).all(|w| w[1] <= w[0])
    }
}

/// Cotangent family with `ν(t) = μ − (t/ε) Σ_{i∉X} ω_i`, whose limit as
/// `t → ∞` is the degenerate family with shift `μ` and the same `X`.
pub fn cotanh_path(
    g: &SimpleLieAlgebra,
    eps: Complex64,
    mu: &[Complex64],
    x: &[usize],
    ts: &[f64],
) -> Result<LimitPath> {
    let rs = &g.root_system;
    let simple = simple_roots_of(rs, &rs.positive_roots);
    if x.iter().any(|r| !simple.contains(r)) {
        return Err(Error::SpecInvalid("x must consist of simple roots".into()));
    }
    let weights = rs.fundamental_weights();
    let mut direction = vec![0.0; rs.rank()];
    for (i, &s) in rs.simple_roots.iter().enumerate() {
        if !x.contains(&s) {
            direction.iter_mut().zip(&weights[i]).for_each(|(d, w)| *d += w);
        }
    }
    let specs = ts
        .iter()
        .map(|&t| {
            let nu = mu.iter().zip(&direction).map(|(m, d)| m - t * d / eps).collect();
            RMatrixSpec::new(Family::TrigCotanh, g.lie_type()).with_eps(eps).with_nu(nu)
        })
        .collect();
    let target = RMatrixSpec::new(Family::TrigDegenerate, g.lie_type())
        .with_eps(eps)
        .with_nu(mu.to_vec())
        .with_x(x.to_vec());
    Ok(LimitPath {
        name: "cotanh-to-degenerate".into(),
        params: ts.iter().map(|&t| Complex64::new(t, 0.0)).collect(),
        specs,
        target: Some(target),
    })
}

/// Elliptic family along a list of modular parameters.
pub fn elliptic_tau_path(g: &SimpleLieAlgebra, taus: &[Complex64]) -> LimitPath {
    LimitPath {
        name: "elliptic-tau".into(),
        params: taus.to_vec(),
        specs: taus
            .iter()
            .map(|&tau| RMatrixSpec::new(Family::EllipticSpectral, g.lie_type()).with_tau(tau))
            .collect(),
        target: None,
    }
}

/// Rational family with `ν = −t·d`; the limit keeps the roots of `X`
/// orthogonal to `d`.
pub fn rational_ray_path(g: &SimpleLieAlgebra, x: &[usize], direction: &[f64], ts: &[f64]) -> Result<LimitPath> {
    let rs = &g.root_system;
    if direction.len() != rs.rank() {
        return Err(Error::SpecInvalid("ray direction has wrong length".into()));
    }
    let kept: Vec<usize> = x
        .iter()
        .copied()
        .filter(|&a| rs.roots[a].iter().zip(direction).map(|(p, q)| p * q).sum::<f64>().abs() < 1e-12)
        .collect();
    let specs = ts
        .iter()
        .map(|&t| {
            let nu = direction.iter().map(|d| Complex64::new(-t * d, 0.0)).collect();
            RMatrixSpec::new(Family::RationalConstant, g.lie_type()).with_x(x.to_vec()).with_nu(nu)
        })
        .collect();
    Ok(LimitPath {
        name: "rational-ray".into(),
        params: ts.iter().map(|&t| Complex64::new(t, 0.0)).collect(),
        specs,
        target: Some(RMatrixSpec::new(Family::RationalConstant, g.lie_type()).with_x(kept)),
    })
}

fn sup_deviation(a: &RMatrix, b: &RMatrix, samples: &[Sample], plan: &SamplePlan) -> Result<f64> {
    let devs = plan.map(samples, |s| {
        let z = s.differences().map(|d| d[0]);
        Ok(a.eval(&s.lambda, z)?.distance(&b.eval(&s.lambda, z)?))
    })?;
    Ok(devs.into_iter().fold(0.0, f64::max))
}

/// Evaluates the path at the plan's samples; samples are drawn against the
/// last entry of the schedule.
pub fn limit_compare(g: &Arc<SimpleLieAlgebra>, path: &LimitPath, plan: &SamplePlan) -> Result<LimitOutcome> {
    if path.specs.is_empty() {
        return Err(Error::SpecInvalid("empty limit schedule".into()));
    }
    let rs: Vec<RMatrix> = path
        .specs
        .iter()
        .map(|s| RMatrix::new(s.clone(), g.clone()))
        .collect::<Result<_>>()?;
    let last = rs.last().expect("nonempty");
    let target = path.target.clone().map(|t| RMatrix::new(t, g.clone())).transpose()?;
    let samples = plan.samples(target.as_ref().unwrap_or(last), last.is_spectral())?;
    let mut cauchy = Vec::new();
    for w in rs.windows(2) {
        cauchy.push(sup_deviation(&w[0], &w[1], &samples, plan)?);
    }
    let target_deviation = target
        .map(|t| rs.iter().map(|r| sup_deviation(r, &t, &samples, plan)).collect::<Result<Vec<_>>>())
        .transpose()?;
    Ok(LimitOutcome {
        params: path.params.clone(),
        cauchy,
        target_deviation,
    })
}

/// Report with a Cauchy check on the last step and, when a target is
/// asserted, a check on the final deviation.
pub fn limit_report(g: &Arc<SimpleLieAlgebra>, path: &LimitPath, plan: &SamplePlan) -> Result<VerificationReport> {
    let out = limit_compare(g, path, plan)?;
    let mut report = VerificationReport::new(path.name.clone(), g.id(), plan.seed);
    report.checks.push(CheckResult::new("cauchy", LIMIT_TOLERANCE, vec![out.last_cauchy()]));
    if let Some(d) = out.final_deviation() {
        report.checks.push(CheckResult::new("target", LIMIT_TOLERANCE, vec![d]));
    }
    let growth = out.cauchy.windows(2).map(|w| (w[1] - w[0]).max(0.0)).fold(0.0, f64::max);
    report.checks.push(CheckResult::new("cauchy-decrease", 1e-12, vec![growth]));
    Ok(report)
}

/// Sample plan suited to limits: small imaginary parts keep the neglected
/// exponentially small terms small.
pub fn limit_plan(seed: u64, count: usize) -> SamplePlan {
    SamplePlan::default()
        .with_seed(seed)
        .with_count(count)
        .with_boxes((-1.0, 1.0), (-0.2, 0.2))
        .with_z_boxes((-0.3, 0.3), (-0.05, 0.05))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::algebra;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn cotanh_converges_to_degenerate() {
        let g = algebra("A2").unwrap();
        let x = vec![g.root_system.simple_roots[0]];
        let path = cotanh_path(&g, c(1.0), &[c(0.1), c(-0.2)], &x, &[20.0, 40.0]).unwrap();
        let out = limit_compare(&g, &path, &limit_plan(42, 10)).unwrap();
        assert!(out.last_cauchy() < 1e-5, "{out:?}");
        assert!(out.final_deviation().unwrap() < 1e-5, "{out:?}");
    }

    #[test]
    fn elliptic_tau_schedule_is_cauchy() {
        let g = algebra("A1").unwrap();
        let taus = [Complex64::new(0.0, 4.0), Complex64::new(0.0, 6.0), Complex64::new(0.0, 8.0)];
        let out = limit_compare(&g, &elliptic_tau_path(&g, &taus), &limit_plan(42, 10)).unwrap();
        assert!(out.last_cauchy() < 1e-5, "{out:?}");
        assert!(out.cauchy_is_decreasing());
    }

    #[test]
    fn rational_ray_drops_non_orthogonal_roots() {
        let g = algebra("B2").unwrap();
        let rs = &g.root_system;
        // d = (1, 0) is orthogonal to the short roots (0, ±1)
        let path = rational_ray_path(&g, &(0..rs.len()).collect::<Vec<_>>(), &[1.0, 0.0], &[1e4, 1e6, 1e8]).unwrap();
        assert_eq!(path.target.as_ref().unwrap().x.len(), 2);
        let out = limit_compare(&g, &path, &limit_plan(42, 10)).unwrap();
        assert!(out.last_cauchy() < 1e-5);
        assert!(out.final_deviation().unwrap() < 1e-7);
    }
}
