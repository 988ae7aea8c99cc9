//! Scalar identities satisfied by the coefficients `φ_α` of a solution.
//!
//! For constant r-matrices the coefficients are shifted by half the
//! coupling, `φ̂_α = φ_α − ε/2`, which turns unitarity into `φ̂_{−α} = −φ̂_α`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::rmatrix::{DerivativeMode, DynamicalR};
use crate::special::{rho_fn, sigma_w_with_dw, ThetaParams};

fn check_root_sum(r: &dyn DynamicalR, roots: [usize; 3]) -> Result<()> {
    let rs = &r.algebra().root_system;
    if roots.iter().any(|&a| a >= rs.len()) {
        return Err(Error::SpecInvalid("root index out of range".into()));
    }
    let sum: f64 = (0..rs.rank())
        .map(|k| roots.iter().map(|&a| rs.roots[a][k]).sum::<f64>().abs())
        .sum();
    if sum > 1e-12 {
        return Err(Error::RootSumNonzero);
    }
    Ok(())
}

/// For `α + β + γ = 0`: `φ̂_αφ̂_β + φ̂_αφ̂_γ + φ̂_γφ̂_β + ε²/4` for constant `r`,
/// and `φ_α(z₁₃)φ_β(z₂₃) + φ_β(z₂₁)φ_γ(z₃₁) + φ_α(z₁₂)φ_γ(z₃₂)` for spectral `r`.
pub fn check_phi_triangle(
    r: &dyn DynamicalR,
    roots: [usize; 3],
    lambda: &[Complex64],
    z: Option<[Complex64; 3]>,
) -> Result<Complex64> {
    check_root_sum(r, roots)?;
    let [a, b, c] = roots;
    if r.is_spectral() {
        let [z1, z2, z3] =
            z.ok_or_else(|| Error::SpecInvalid("spectral triangle needs z1, z2, z3".into()))?;
        let phi = |root: usize, w: Complex64| -> Result<Complex64> { Ok(r.parts(lambda, Some(w), false)?.phi[root]) };
        return Ok(phi(a, z1 - z3)? * phi(b, z2 - z3)?
            + phi(b, z2 - z1)? * phi(c, z3 - z1)?
            + phi(a, z1 - z2)? * phi(c, z3 - z2)?);
    }
    let eps = r.coupling();
    let p = r.parts(lambda, None, false)?;
    let h = |root: usize| p.phi[root] - eps / 2.0;
    Ok(h(a) * h(b) + h(a) * h(c) + h(c) * h(b) + eps * eps / 4.0)
}

/// `max_k |∂φ̂_α/∂λ_k + (φ̂_α² − ε²/4) α_k|` for constant `r`.
pub fn phi_ode_residual(r: &dyn DynamicalR, root: usize, lambda: &[Complex64], mode: DerivativeMode) -> Result<f64> {
    if r.is_spectral() {
        return Err(Error::SpecInvalid("the coefficient equation applies to constant r-matrices".into()));
    }
    let rs = &r.algebra().root_system;
    let eps = r.coupling();
    let p = r.parts_with_derivative(lambda, None, mode)?;
    let n = p.rank;
    let h = p.phi[root] - eps / 2.0;
    Ok((0..n)
        .map(|k| (p.dphi[root * n + k] + (h * h - eps * eps / 4.0) * rs.roots[root][k]).norm())
        .fold(0.0, f64::max))
}

/// For a spectral `r` whose Cartan part is `t(z)·Σx_i⊗x_i`, with
/// `μ(h, z) = φ_α`: `∂_hμ(h,u+v) − (t(u)+t(v))μ(h,u+v) + μ(h,u)μ(h,v)`.
pub fn mu_t_residual(
    r: &dyn DynamicalR,
    root: usize,
    lambda: &[Complex64],
    u: Complex64,
    v: Complex64,
    mode: DerivativeMode,
) -> Result<Complex64> {
    if !r.is_spectral() {
        return Err(Error::SpecInvalid("needs a spectral r-matrix".into()));
    }
    let alpha = &r.algebra().root_system.roots[root];
    let norm2: f64 = alpha.iter().map(|x| x * x).sum();
    let pu = r.parts(lambda, Some(u), false)?;
    let pv = r.parts(lambda, Some(v), false)?;
    let puv = r.parts_with_derivative(lambda, Some(u + v), mode)?;
    let n = puv.rank;
    let dmu: Complex64 = (0..n).map(|k| puv.dphi[root * n + k] * alpha[k]).sum::<Complex64>() / norm2;
    Ok(dmu - (pu.s[0] + pv.s[0]) * puv.phi[root] + pu.phi[root] * pv.phi[root])
}

/// The same equation for the theta-function solution `μ(h,z) = σ_{−h}(z)`,
/// `t = ρ`, without reference to an algebra.
pub fn elliptic_mu_t_residual(h: Complex64, u: Complex64, v: Complex64, theta: &ThetaParams) -> Result<Complex64> {
    let (s_uv, ds_uv) = sigma_w_with_dw(-h, u + v, theta)?;
    let s_u = sigma_w_with_dw(-h, u, theta)?.0;
    let s_v = sigma_w_with_dw(-h, v, theta)?.0;
    Ok(-ds_uv - (rho_fn(u, theta)? + rho_fn(v, theta)?) * s_uv + s_u * s_v)
}

/// Root triples `(α, β, γ)` with `α + β + γ = 0`.
pub fn zero_sum_triples(r: &dyn DynamicalR) -> Vec<[usize; 3]> {
    let rs = &r.algebra().root_system;
    let mut out = Vec::new();
    for a in 0..rs.len() {
        for b in 0..rs.len() {
            if let Some(s) = rs.sum(a, b) {
                out.push([a, b, rs.negative(s)]);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::algebra;
    use crate::rmatrix::{Family, RMatrix, RMatrixSpec};

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn cx(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn cotanh_triangle_hand_value() {
        let g = algebra("A2").unwrap();
        let rs = &g.root_system;
        let (a1, a2) = (rs.simple_roots[0], rs.simple_roots[1]);
        let gamma = rs.negative(rs.sum(a1, a2).unwrap());
        // λ with (α₁,λ) = (α₂,λ) = ln 2
        let l2 = c(2f64.ln());
        let w = rs.fundamental_weights();
        let lambda: Vec<Complex64> = (0..2).map(|k| l2 * (w[0][k] + w[1][k])).collect();
        let spec = RMatrixSpec::new(Family::TrigCotanh, g.lie_type()).with_eps(c(2.0));
        let r = RMatrix::new(spec, g.clone()).unwrap();
        let p = r.parts(&lambda, None, false).unwrap();
        assert!((p.phi[a1] - 1.0 - 5.0 / 3.0).norm() < 1e-14);
        assert!((p.phi[gamma] - 1.0 + 17.0 / 15.0).norm() < 1e-14);
        // 25/9 − 34/9 + 1
        let v = check_phi_triangle(&r, [a1, a2, gamma], &lambda, None).unwrap();
        assert!(v.norm() < 1e-14);
    }

    #[test]
    fn rational_triangle_and_ode() {
        let g = algebra("G2").unwrap();
        let spec = RMatrixSpec::new(Family::RationalConstant, g.lie_type()).with_x((0..12).collect());
        let r = RMatrix::new(spec, g).unwrap();
        let lambda = [cx(0.37, 0.2), cx(-0.81, 0.45)];
        for t in zero_sum_triples(&r) {
            assert!(check_phi_triangle(&r, t, &lambda, None).unwrap().norm() < 1e-12);
        }
        for root in 0..12 {
            assert!(phi_ode_residual(&r, root, &lambda, DerivativeMode::Analytic).unwrap() < 1e-12);
        }
    }

    #[test]
    fn spectral_triangle_and_mu_t() {
        let g = algebra("A2").unwrap();
        let lambda = [cx(0.3, 0.1), cx(-0.2, 0.25)];
        let z = [cx(0.11, 0.03), cx(-0.23, 0.01), cx(0.31, -0.02)];
        for family in [Family::EllipticSpectral, Family::TrigSpectral, Family::RationalSpectral] {
            let x = if family == Family::RationalSpectral { (0..6).collect() } else { g.root_system.simple_roots.clone() };
            let r = RMatrix::new(RMatrixSpec::new(family, g.lie_type()).with_x(x), g.clone()).unwrap();
            for t in zero_sum_triples(&r) {
                let v = check_phi_triangle(&r, t, &lambda, Some(z)).unwrap();
                assert!(v.norm() < 1e-10, "{family}");
            }
            let m = mu_t_residual(&r, 0, &lambda, cx(0.2, 0.05), cx(-0.35, 0.02), DerivativeMode::Analytic).unwrap();
            assert!(m.norm() < 1e-10, "{family}: {m}");
        }
        let theta = ThetaParams::new(cx(0.1, 1.2)).unwrap();
        let m = elliptic_mu_t_residual(cx(0.4, 0.3), cx(0.2, -0.1), cx(0.15, 0.2), &theta).unwrap();
        assert!(m.norm() < 1e-11);
    }

    #[test]
    fn root_sum_is_checked() {
        let g = algebra("A2").unwrap();
        let r = RMatrix::new(RMatrixSpec::new(Family::TrigCotanh, g.lie_type()), g).unwrap();
        let lambda = [c(0.3), c(0.4)];
        assert_eq!(check_phi_triangle(&r, [0, 0, 0], &lambda, None), Err(Error::RootSumNonzero));
    }
}
