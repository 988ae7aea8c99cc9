//! The r-matrix built from truncated classical theta series, checked
//! against the theta-function closed form.
//!
//! With `u = e^{−2πiz}` and `k = πiτ`, the coefficient of `e_α⊗e_{−α}` is
//! `Σ_n uⁿ(1 + coth((α,λ) + kn))` and the Cartan part is
//! `1 + Σ_{n≠0} uⁿ(1 + coth(kn))` times `Σx_i⊗x_i`. The sums equal
//! `a·r_ell(aλ, z)` with `a = −1/(πi)`.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::lie::{self, SimpleLieAlgebra};
use crate::rmatrix::{gauge_apply, DynamicalR, Family, GaugeRecord, Parts, RMatrix, RMatrixSpec};
use crate::special::{classical_series, continued_series, lattice_distance, rho_fn, sigma_w, SeriesKind, ThetaParams};
use crate::verify::checks::{negative_controls, residual_norms};
use crate::verify::report::{CheckResult, VerificationReport};
use crate::verify::sampling::SamplePlan;

pub const SERIES_TOLERANCE: f64 = 1e-9;
pub const IDENTITY_TOLERANCE: f64 = 1e-10;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// `−1/(πi)`.
pub fn affine_scale() -> Complex64 {
    -1.0 / (PI * I)
}

/// Series r-matrix truncated to `|n| ≤ terms`.
#[derive(Debug, Clone)]
pub struct AffineSeriesR {
    algebra: Arc<SimpleLieAlgebra>,
    theta: ThetaParams,
    pub terms: usize,
}

impl AffineSeriesR {
    pub fn new(algebra: Arc<SimpleLieAlgebra>, tau: Complex64, terms: usize) -> Result<Self> {
        let theta = ThetaParams::new(tau)?;
        if tau.im < 0.5 {
            return Err(Error::SpecInvalid(format!("series check needs Im(tau) >= 0.5, got {tau}")));
        }
        Ok(AffineSeriesR { algebra, theta, terms })
    }

    pub fn tau(&self) -> Complex64 {
        self.theta.tau
    }
}

impl DynamicalR for AffineSeriesR {
    fn algebra(&self) -> &Arc<SimpleLieAlgebra> {
        &self.algebra
    }

    fn is_spectral(&self) -> bool {
        true
    }

    fn coupling(&self) -> Complex64 {
        affine_scale()
    }

    fn label(&self) -> String {
        format!("affine-series/{}/N={}", self.algebra.id(), self.terms)
    }

    fn pole_distance(&self, lambda: &[Complex64], z: Option<Complex64>) -> f64 {
        let rs = &self.algebra.root_system;
        let tau = self.theta.tau;
        let mut best = rs
            .positive_roots
            .iter()
            .map(|&a| PI * lattice_distance(lie::dot(&rs.roots[a], lambda) / (PI * I), tau))
            .fold(f64::INFINITY, f64::min);
        if let Some(z) = z {
            best = best.min(lattice_distance(z, tau)).min(tau.im - z.im.abs());
        }
        best
    }

    fn parts(&self, lambda: &[Complex64], z: Option<Complex64>, derivative: bool) -> Result<Parts> {
        let z = z.ok_or_else(|| Error::SpecInvalid("series r-matrix needs a spectral parameter".into()))?;
        let rs = &self.algebra.root_system;
        let n = rs.rank();
        let u = (-2.0 * PI * I * z).exp();
        let mut p = Parts::zeros(n, rs.len(), derivative);
        let (t, _) = continued_series(SeriesKind::RhoSum, u, Complex64::new(0.0, 0.0), &self.theta, self.terms)?;
        p.add_identity(t);
        for a in 0..rs.len() {
            let w = lie::dot(&rs.roots[a], lambda);
            let (v, slope) = continued_series(SeriesKind::SigmaSum, u, w, &self.theta, self.terms)?;
            p.phi[a] = v;
            if derivative {
                for k in 0..n {
                    p.dphi[a * n + k] = slope * rs.roots[a][k];
                }
            }
        }
        Ok(p)
    }
}

/// The closed form: elliptic family with a kind-4 gauge `(a, b) = (−1/(πi), 1)`.
pub fn affine_closed_form(g: &Arc<SimpleLieAlgebra>, tau: Complex64) -> Result<RMatrix> {
    let spec = RMatrixSpec::new(Family::EllipticSpectral, g.lie_type()).with_tau(tau);
    let spec = gauge_apply(
        &spec,
        GaugeRecord::Scale {
            a: affine_scale(),
            b: Complex64::new(1.0, 0.0),
        },
    )?;
    RMatrix::new(spec, g.clone())
}

/// Sup deviation over all coefficients between the truncated series and the
/// closed form at `(λ, z)`.
pub fn affine_series_check(
    g: &Arc<SimpleLieAlgebra>,
    lambda: &[Complex64],
    tau: Complex64,
    z: Complex64,
    terms: usize,
) -> Result<f64> {
    let series = AffineSeriesR::new(g.clone(), tau, terms)?;
    let closed = affine_closed_form(g, tau)?;
    Ok(series.eval(lambda, Some(z))?.distance(&closed.eval(lambda, Some(z))?))
}

/// `|Σ-series − closed form|` for both classical expansions at `z` (which
/// must satisfy `0 < Im z < Im τ`) and shift `a`.
pub fn classical_identity_defects(a: Complex64, z: Complex64, theta: &ThetaParams, terms: usize) -> Result<(f64, f64)> {
    let u = (-2.0 * PI * I * z).exp();
    let scale = affine_scale();
    let sigma = classical_series(SeriesKind::SigmaSum, u, a, theta, terms)?;
    let rho = classical_series(SeriesKind::RhoSum, u, a, theta, terms)?;
    let sigma_closed = scale * sigma_w(a / (PI * I), z, theta)?;
    let rho_closed = scale * rho_fn(z, theta)?;
    Ok(((sigma - sigma_closed).norm(), (rho - rho_closed).norm()))
}

/// Series-versus-closed-form deviations for each truncation in `terms`
/// (at spectral point `z` and the plan's λ samples), the equation residual
/// of the longest truncation, and the two scalar expansions.
pub fn affine_series_report(
    g: &Arc<SimpleLieAlgebra>,
    tau: Complex64,
    z: Complex64,
    terms: &[usize],
    plan: &SamplePlan,
) -> Result<VerificationReport> {
    let n_max = *terms
        .iter()
        .max()
        .ok_or_else(|| Error::SpecInvalid("no truncation orders given".into()))?;
    let series = AffineSeriesR::new(g.clone(), tau, n_max)?;
    let closed = affine_closed_form(g, tau)?;
    let mut report = VerificationReport::new(series.label(), g.id(), plan.seed);
    let samples = plan.samples(&series, false)?;

    let mut per_n = Vec::new();
    for &n in terms {
        let s_n = AffineSeriesR::new(g.clone(), tau, n)?;
        let devs = plan.map(&samples, |s| {
            Ok(s_n.eval(&s.lambda, Some(z))?.distance(&closed.eval(&s.lambda, Some(z))?))
        })?;
        per_n.push(devs.into_iter().fold(0.0, f64::max));
    }
    report
        .checks
        .push(CheckResult::new("series-vs-closed-form", SERIES_TOLERANCE, vec![*per_n.last().unwrap()]));
    // non-increasing in N down to the rounding floor
    let growth = per_n.windows(2).map(|w| (w[1] - w[0].max(1e-12)).max(0.0)).fold(0.0, f64::max);
    report.checks.push(CheckResult::new("series-decrease", 1e-12, vec![growth]));

    let spectral_samples = plan.samples(&series, true)?;
    report.checks.push(CheckResult::new(
        "affine-cdybe",
        plan.tolerance,
        residual_norms(&series, &spectral_samples, plan)?,
    ));

    let theta = ThetaParams::new(tau)?;
    let z_up = Complex64::new(z.re, tau.im / 2.0);
    let rs = &g.root_system;
    let defects = plan.map(&samples, |s| {
        let a = lie::dot(&rs.roots[rs.positive_roots[0]], &s.lambda);
        classical_identity_defects(a, z_up, &theta, n_max)
    })?;
    report.checks.push(CheckResult::new(
        "sigma-expansion",
        IDENTITY_TOLERANCE,
        defects.iter().map(|d| d.0).collect(),
    ));
    report.checks.push(CheckResult::new(
        "rho-expansion",
        IDENTITY_TOLERANCE,
        defects.iter().map(|d| d.1).collect(),
    ));
    report.controls = negative_controls(&series, &spectral_samples, plan)?;
    Ok(report)
}
