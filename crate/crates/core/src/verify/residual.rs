//! Left-hand sides of the classical dynamical Yang-Baxter equation.

use num_complex::Complex64;

use crate::error::Result;
use crate::rmatrix::{DerivativeMode, DynamicalR};
use crate::tensor::{act_diag3, alt3, bracket_legs_into, cyb_brackets, Placement, Tensor2, Tensor3};

/// `Alt(dr) + [r¹²,r¹³] + [r¹²,r²³] + [r¹³,r²³]` at `λ`.
pub fn cdybe_residual_constant(r: &dyn DynamicalR, lambda: &[Complex64], mode: DerivativeMode) -> Result<Tensor3> {
    let g = r.algebra();
    let p = r.parts_with_derivative(lambda, None, mode)?;
    let t = p.to_tensor(g);
    let mut out = alt3(&p.d_tensor(g));
    out += &cyb_brackets(&t, &t, &t)?;
    Ok(out)
}

/// `Σ x⁽¹⁾∂r²³(z₂₃) + x⁽²⁾∂r³¹(z₃₁) + x⁽³⁾∂r¹²(z₁₂)` from the three `dr`
/// tensors laid out as `x ⊗ ∂r`.
pub fn alt_spectral(d23: &Tensor3, d31: &Tensor3, d12: &Tensor3) -> Tensor3 {
    let n = d23.dim;
    let mut out = Tensor3::zeros(&d23.algebra);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                out[(i, j, k)] = d23[(i, j, k)] + d31[(j, k, i)] + d12[(k, i, j)];
            }
        }
    }
    out
}

/// Spectral residual at `λ` and spectral points `z₁, z₂, z₃`.
pub fn cdybe_residual_spectral(
    r: &dyn DynamicalR,
    lambda: &[Complex64],
    z: [Complex64; 3],
    mode: DerivativeMode,
) -> Result<Tensor3> {
    let g = r.algebra();
    let [z1, z2, z3] = z;
    let at = |w: Complex64| r.parts_with_derivative(lambda, Some(w), mode);
    let p12 = at(z1 - z2)?;
    let p13 = at(z1 - z3)?;
    let p23 = at(z2 - z3)?;
    let p31 = at(z3 - z1)?;
    let mut out = alt_spectral(&p23.d_tensor(g), &p31.d_tensor(g), &p12.d_tensor(g));
    out += &cyb_brackets(&p12.to_tensor(g), &p13.to_tensor(g), &p23.to_tensor(g))?;
    Ok(out)
}

/// Residual of the equation for a pair `l ⊃ h`, restricted to `h*`, for
/// `r = r̃ − ρ`: `Alt(d_h r + [ρ¹²+ρ¹³, r²³]) + [r¹²,r¹³] + [r¹²,r²³] + [r¹³,r²³]`.
pub fn pair_cdybe_residual(
    r_tilde: &dyn DynamicalR,
    rho: &dyn DynamicalR,
    lambda: &[Complex64],
    mode: DerivativeMode,
) -> Result<Tensor3> {
    let g = r_tilde.algebra();
    let pt = r_tilde.parts_with_derivative(lambda, None, mode)?;
    let pr = rho.parts_with_derivative(lambda, None, mode)?;
    let rho_t = pr.to_tensor(g);
    let r: Tensor2 = &pt.to_tensor(g) - &rho_t;
    let mut w = &pt.d_tensor(g) - &pr.d_tensor(g);
    bracket_legs_into(&rho_t, &r, Placement::P12_23, &mut w)?;
    bracket_legs_into(&rho_t, &r, Placement::P13_23, &mut w)?;
    let mut out = alt3(&w);
    out += &cyb_brackets(&r, &r, &r)?;
    Ok(out)
}

/// `‖Z + Z^{213}‖`; vanishes when `Z` is antisymmetric in its first two legs.
pub fn swap12_defect(z: &Tensor3) -> f64 {
    (z + &z.permute_legs([1, 0, 2])).norm()
}

/// `max_i ‖[x_i⊗1⊗1 + 1⊗x_i⊗1 + 1⊗1⊗x_i, Z]‖` over the Cartan basis.
pub fn weight_defect(z: &Tensor3) -> f64 {
    (0..z.algebra.rank()).map(|i| act_diag3(i, z).norm()).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::algebra;
    use crate::rmatrix::{Family, Perturbation, RMatrix, RMatrixSpec};

    fn cx(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    const LAMBDA: [Complex64; 2] = [Complex64::new(0.41, 0.23), Complex64::new(-0.67, 0.12)];
    const Z: [Complex64; 3] = [
        Complex64::new(0.13, 0.02),
        Complex64::new(-0.21, 0.05),
        Complex64::new(0.34, -0.04),
    ];

    fn a2_full(family: Family) -> RMatrix {
        let g = algebra("A2").unwrap();
        let x = match family {
            Family::RationalConstant | Family::RationalSpectral => (0..6).collect(),
            _ => g.root_system.simple_roots.clone(),
        };
        RMatrix::new(RMatrixSpec::new(family, g.lie_type()).with_x(x), g).unwrap()
    }

    #[test]
    fn constant_families_solve_the_equation() {
        for family in [Family::RationalConstant, Family::TrigCotanh, Family::TrigDegenerate] {
            let r = a2_full(family);
            let res = cdybe_residual_constant(&r, &LAMBDA, DerivativeMode::Analytic).unwrap();
            assert!(res.norm() < 1e-12, "{family}: {}", res.norm());
        }
    }

    #[test]
    fn spectral_families_solve_the_equation() {
        for family in [Family::RationalSpectral, Family::TrigSpectral, Family::EllipticSpectral] {
            let r = a2_full(family);
            let res = cdybe_residual_spectral(&r, &LAMBDA, Z, DerivativeMode::Analytic).unwrap();
            assert!(res.norm() < 1e-10, "{family}: {}", res.norm());
        }
    }

    #[test]
    fn perturbation_is_detected() {
        let g = algebra("A2").unwrap();
        let a = g.root_system.positive_roots[0];
        let spec = RMatrixSpec::new(Family::RationalConstant, g.lie_type())
            .with_x((0..6).collect())
            .with_perturbation(Perturbation::AddRootCoefficient { root: a, value: cx(0.1, 0.0) });
        let r = RMatrix::new(spec, g).unwrap();
        let res = cdybe_residual_constant(&r, &LAMBDA, DerivativeMode::Analytic).unwrap();
        assert!(res.norm() > 1e-3);
    }

    #[test]
    fn residual_is_skew_and_weight_zero() {
        let g = algebra("B2").unwrap();
        let spec = RMatrixSpec::new(Family::TrigCotanh, g.lie_type()).with_eps(cx(1.0, 1.0));
        let r = RMatrix::new(spec, g).unwrap();
        let lam = [cx(0.3, 0.4), cx(-0.2, 0.7)];
        let res = cdybe_residual_constant(&r, &lam, DerivativeMode::Analytic).unwrap();
        assert!(swap12_defect(&res) < 1e-10);
        assert!(weight_defect(&res) < 1e-11);
    }
}
