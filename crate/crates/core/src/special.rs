//! Scalar special functions behind the r-matrix coefficients.
//!
//! `θ₁(z,τ) = −Σ_j exp(πi(j+½)²τ + 2πi(j+½)(z+½))` is summed directly. The
//! summation window is centred on the largest term, which sits near
//! `j+½ = −Im z / Im τ`, so the Gaussian tail bound holds for any `z`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const POLE_THRESHOLD: f64 = 1e-8;
pub const MAX_THETA_TERMS: usize = 512;

const I: Complex64 = Complex64::new(0.0, 1.0);

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThetaParams {
    pub tau: Complex64,
    /// Largest admissible half-width `J` of the summation window.
    pub truncation: usize,
    /// Target size of the neglected terms relative to the largest term.
    pub tol: f64,
}

impl ThetaParams {
    pub fn new(tau: Complex64) -> Result<Self> {
        Self::with(tau, MAX_THETA_TERMS, 1e-17)
    }

    pub fn with(tau: Complex64, truncation: usize, tol: f64) -> Result<Self> {
        if !(tau.im > 0.0) {
            return Err(Error::SpecInvalid(format!("Im(tau) must be positive, got {tau}")));
        }
        if truncation == 0 || !(tol > 0.0) {
            return Err(Error::SpecInvalid("theta truncation and tol must be positive".into()));
        }
        Ok(ThetaParams { tau, truncation, tol })
    }

    /// Half-width of the summation window meeting `tol`.
    pub fn window(&self) -> Result<usize> {
        let j = ((-self.tol.ln()) / (PI * self.tau.im)).sqrt().ceil() as usize + 1;
        if j > self.truncation {
            return Err(Error::ConvergenceFailure(format!(
                "theta series needs {j} terms per side at tau = {}, cap is {}",
                self.tau, self.truncation
            )));
        }
        Ok(j)
    }
}

/// `θ₁(z,τ)` and `∂_z θ₁(z,τ)` from one pass over the series.
pub fn theta1_with_dz(z: Complex64, p: &ThetaParams) -> Result<(Complex64, Complex64)> {
    let half = p.window()? as i64;
    let centre = (-z.im / p.tau.im - 0.5).round() as i64;
    let mut value = c(0.0);
    let mut deriv = c(0.0);
    for j in (centre - half)..=(centre + half) {
        let n = j as f64 + 0.5;
        let term = (PI * I * n * n * p.tau + 2.0 * PI * I * n * (z + 0.5)).exp();
        value -= term;
        deriv -= 2.0 * PI * I * n * term;
    }
    Ok((value, deriv))
}

pub fn theta1(z: Complex64, p: &ThetaParams) -> Result<Complex64> {
    theta1_with_dz(z, p).map(|(v, _)| v)
}

pub fn theta1_dz(z: Complex64, p: &ThetaParams) -> Result<Complex64> {
    theta1_with_dz(z, p).map(|(_, d)| d)
}

/// `θ₁(x)` normalized by `θ₁'(0)`, rejecting points near the zero lattice.
fn guarded_theta(x: Complex64, d0: Complex64, p: &ThetaParams, what: &str) -> Result<(Complex64, Complex64)> {
    let (v, d) = theta1_with_dz(x, p)?;
    if (v / d0).norm() < POLE_THRESHOLD {
        return Err(Error::PoleProximity(format!("{what} = {x} is on the period lattice")));
    }
    Ok((v, d))
}

/// `σ_w(z,τ) = θ₁(w−z)θ₁'(0) / (θ₁(w)θ₁(z))`.
pub fn sigma_w(w: Complex64, z: Complex64, p: &ThetaParams) -> Result<Complex64> {
    sigma_w_with_dw(w, z, p).map(|(v, _)| v)
}

/// `σ_w(z,τ)` together with `∂σ_w(z,τ)/∂w`.
pub fn sigma_w_with_dw(w: Complex64, z: Complex64, p: &ThetaParams) -> Result<(Complex64, Complex64)> {
    let d0 = theta1_dz(c(0.0), p)?;
    let (tw, dtw) = guarded_theta(w, d0, p, "w")?;
    let (tz, _) = guarded_theta(z, d0, p, "z")?;
    let (twz, dtwz) = theta1_with_dz(w - z, p)?;
    let denom = tw * tz;
    let value = twz * d0 / denom;
    let dw = d0 * (dtwz - twz * dtw / tw) / denom;
    Ok((value, dw))
}

/// `ρ(z,τ) = θ₁'(z)/θ₁(z)`.
pub fn rho_fn(z: Complex64, p: &ThetaParams) -> Result<Complex64> {
    let d0 = theta1_dz(c(0.0), p)?;
    let (v, d) = guarded_theta(z, d0, p, "z")?;
    Ok(d / v)
}

/// Distance from `w` to the lattice `ℤ + τℤ`.
pub fn lattice_distance(w: Complex64, tau: Complex64) -> f64 {
    let m0 = (w.im / tau.im).round();
    let mut best = f64::INFINITY;
    for dm in -1..=1 {
        let shifted = w - tau * (m0 + dm as f64);
        let n0 = shifted.re.round();
        for dn in -1..=1 {
            best = best.min((shifted - (n0 + dn as f64)).norm());
        }
    }
    best
}

/// Distance from `w` to `period·ℤ` for a nonzero complex `period`.
pub fn line_lattice_distance(w: Complex64, period: Complex64) -> f64 {
    let t = w / period;
    (t - t.re.round()).norm() * period.norm()
}

/// `coth` evaluated without overflow for large real parts.
pub fn coth(x: Complex64) -> Complex64 {
    if x.re < 0.0 {
        return -coth(-x);
    }
    let q = (-2.0 * x).exp();
    (1.0 + q) / (1.0 - q)
}

/// `1 + coth(x)` without cancellation when `coth(x)` is close to `−1`.
pub fn one_plus_coth(x: Complex64) -> Complex64 {
    if x.re >= 0.0 {
        2.0 / (1.0 - (-2.0 * x).exp())
    } else {
        let q = (2.0 * x).exp();
        2.0 * q / (q - 1.0)
    }
}

/// `coth(x) − 1` without cancellation when `coth(x)` is close to `1`.
pub fn coth_minus_one(x: Complex64) -> Complex64 {
    -one_plus_coth(-x)
}

pub(crate) fn check_coth_pole(x: Complex64) -> Result<()> {
    let y = if x.re < 0.0 { -x } else { x };
    // |sinh y| = e^{Re y} |1 - e^{-2y}| / 2
    let sinh_abs = (1.0 - (-2.0 * y).exp()).norm() * 0.5 * y.re.exp();
    if sinh_abs < POLE_THRESHOLD {
        return Err(Error::PoleProximity(format!("coth pole at {x}")));
    }
    Ok(())
}

/// `(ε/2)·coth((ε/2)·w)`.
pub fn coth_scaled(eps: Complex64, w: Complex64) -> Result<Complex64> {
    if eps == c(0.0) {
        return Err(Error::SpecInvalid("coth_scaled needs a nonzero coupling".into()));
    }
    let h = eps / 2.0;
    check_coth_pole(h * w)?;
    Ok(h * coth(h * w))
}

/// `d/dw [(ε/2)·coth((ε/2)·w)] = −(ε/2)²/sinh²((ε/2)w)`.
pub fn coth_scaled_dw(eps: Complex64, w: Complex64) -> Result<Complex64> {
    let h = eps / 2.0;
    let ct = coth_scaled(eps, w)? / h;
    Ok(h * h * (1.0 - ct * ct))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SeriesKind {
    SigmaSum,
    RhoSum,
}

/// Partial sums of the classical theta-function expansions:
///
/// * `SigmaSum`: `Σ_{|n|≤N} uⁿ(1 + coth(a + πiτn))`
/// * `RhoSum`: `1 + Σ_{0<|n|≤N} uⁿ(1 + coth(πiτn))` (`a` is ignored)
///
/// With `u = e^{−2πiz}` they approach `−σ_{a/πi}(z,τ)/πi` and `−ρ(z,τ)/πi`.
/// The series converge on `1 < |u| < e^{2π Im τ}`.
pub fn classical_series(kind: SeriesKind, u: Complex64, a: Complex64, p: &ThetaParams, n: usize) -> Result<Complex64> {
    let upper = (2.0 * PI * p.tau.im).exp();
    let r = u.norm();
    if !(r > 1.0 && r < upper) {
        return Err(Error::ConvergenceFailure(format!(
            "|u| = {r} outside the annulus (1, {upper})"
        )));
    }
    let k = PI * I * p.tau;
    let n = n as i64;
    let mut total = c(0.0);
    for m in -n..=n {
        let x = match kind {
            SeriesKind::SigmaSum => a + k * m as f64,
            SeriesKind::RhoSum if m == 0 => continue,
            SeriesKind::RhoSum => k * m as f64,
        };
        check_coth_pole(x)?;
        total += u.powi(m as i32) * one_plus_coth(x);
    }
    if kind == SeriesKind::RhoSum {
        total += 1.0;
    }
    Ok(total)
}

/// The same sums continued past `|u| = 1`: the `n < 0` terms are split as
/// `2uⁿ + uⁿ(coth(x_n) − 1)` and the geometric part is summed to `2/(u−1)`.
/// Valid on `e^{−2π Im τ} < |u| < e^{2π Im τ}`, `u ≠ 1`. Returns the value
/// and its derivative in `a` (zero for `RhoSum`).
pub fn continued_series(
    kind: SeriesKind,
    u: Complex64,
    a: Complex64,
    p: &ThetaParams,
    n: usize,
) -> Result<(Complex64, Complex64)> {
    let bound = (2.0 * PI * p.tau.im).exp();
    let r = u.norm();
    if !(r > 1.0 / bound && r < bound) {
        return Err(Error::ConvergenceFailure(format!(
            "|u| = {r} outside the annulus ({}, {bound})",
            1.0 / bound
        )));
    }
    if (u - 1.0).norm() < POLE_THRESHOLD {
        return Err(Error::PoleProximity("u = 1".into()));
    }
    let k = PI * I * p.tau;
    let shift = match kind {
        SeriesKind::SigmaSum => a,
        SeriesKind::RhoSum => c(0.0),
    };
    let mut value = 2.0 / (u - 1.0);
    let mut slope = c(0.0);
    for m in -(n as i64)..=(n as i64) {
        if kind == SeriesKind::RhoSum && m == 0 {
            value += 1.0;
            continue;
        }
        let x = shift + k * m as f64;
        check_coth_pole(x)?;
        let un = u.powi(m as i32);
        value += un * if m >= 0 { one_plus_coth(x) } else { coth_minus_one(x) };
        // d/dx coth = −(coth − 1)(coth + 1)
        slope -= un * coth_minus_one(x) * one_plus_coth(x);
    }
    if kind == SeriesKind::RhoSum {
        slope = c(0.0);
    }
    Ok((value, slope))
}
