//! Evaluation of the r-matrix families and their gauge transforms.
//!
//! Every r-matrix here has weight zero, so it is stored in the split form
//! `Σ S_ij x_i⊗x_j + Σ_α φ_α e_α⊗e_{−α}` ([`Parts`]) and only expanded to a
//! dense [`Tensor2`] on demand.

pub mod spec;

use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub use spec::{gauge_apply, Family, GaugeRecord, Perturbation, RMatrixSpec};

use crate::combinatorics::span_closure;
use crate::error::{Error, Result};
use crate::lie::{self, SimpleLieAlgebra};
use crate::special::{
    coth_scaled, coth_scaled_dw, lattice_distance, line_lattice_distance, rho_fn, sigma_w_with_dw, ThetaParams,
    POLE_THRESHOLD,
};
use crate::tensor::{Tensor2, Tensor3};

pub const FD_STEP: f64 = 1e-5;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DerivativeMode {
    Analytic,
    FiniteDifference,
}

/// Split form of a weight-zero element of `g⊗g` and, optionally, its
/// λ-derivatives.
#[derive(Debug, Clone, PartialEq)]
pub struct Parts {
    pub rank: usize,
    /// Cartan block, row-major `rank×rank`.
    pub s: Vec<Complex64>,
    /// Coefficient of `e_α⊗e_{−α}`, indexed by root.
    pub phi: Vec<Complex64>,
    /// `∂S_ij/∂λ_k` at `[(k·rank + i)·rank + j]`; empty without derivatives.
    pub ds: Vec<Complex64>,
    /// `∂φ_α/∂λ_k` at `[α·rank + k]`; empty without derivatives.
    pub dphi: Vec<Complex64>,
}

impl Parts {
    pub fn zeros(rank: usize, n_roots: usize, derivative: bool) -> Self {
        Parts {
            rank,
            s: vec![ZERO; rank * rank],
            phi: vec![ZERO; n_roots],
            ds: if derivative { vec![ZERO; rank * rank * rank] } else { Vec::new() },
            dphi: if derivative { vec![ZERO; n_roots * rank] } else { Vec::new() },
        }
    }

    pub fn add_identity(&mut self, c: Complex64) {
        for i in 0..self.rank {
            self.s[i * self.rank + i] += c;
        }
    }

    pub fn add_matrix(&mut self, m: &[Vec<Complex64>]) {
        for (i, row) in m.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                self.s[i * self.rank + j] += v;
            }
        }
    }

    fn scale_values(&mut self, c: Complex64) {
        self.s.iter_mut().chain(self.phi.iter_mut()).for_each(|v| *v *= c);
    }

    fn scale_derivatives(&mut self, c: Complex64) {
        self.ds.iter_mut().chain(self.dphi.iter_mut()).for_each(|v| *v *= c);
    }

    pub fn apply(&mut self, pert: &Perturbation) {
        let n = self.rank;
        match pert {
            Perturbation::FlipRootSign { root } => {
                self.phi[*root] = -self.phi[*root];
                if !self.dphi.is_empty() {
                    self.dphi[root * n..(root + 1) * n].iter_mut().for_each(|v| *v = -*v);
                }
            }
            Perturbation::AddRootCoefficient { root, value } => self.phi[*root] += value,
            Perturbation::AddCasimir { value } => {
                self.add_identity(*value);
                self.phi.iter_mut().for_each(|v| *v += value);
            }
        }
    }

    pub fn to_tensor(&self, g: &Arc<SimpleLieAlgebra>) -> Tensor2 {
        let mut t = Tensor2::zeros(g);
        let n = self.rank;
        for i in 0..n {
            for j in 0..n {
                t[(i, j)] = self.s[i * n + j];
            }
        }
        for (a, &v) in self.phi.iter().enumerate() {
            let e = g.root_basis(a);
            t[(e, g.dual(e))] = v;
        }
        t
    }

    /// `dr = Σ_k x_k ⊗ ∂r/∂λ_k`.
    pub fn d_tensor(&self, g: &Arc<SimpleLieAlgebra>) -> Tensor3 {
        let mut t = Tensor3::zeros(g);
        let n = self.rank;
        if self.ds.is_empty() && self.dphi.is_empty() {
            return t;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    t[(k, i, j)] = self.ds[(k * n + i) * n + j];
                }
            }
            for a in 0..self.phi.len() {
                let e = g.root_basis(a);
                t[(k, e, g.dual(e))] = self.dphi[a * n + k];
            }
        }
        t
    }
}

/// A weight-zero function of `λ` (and possibly a spectral parameter) with
/// values in `g⊗g`.
pub trait DynamicalR: Send + Sync {
    fn algebra(&self) -> &Arc<SimpleLieAlgebra>;

    fn is_spectral(&self) -> bool;

    /// The coupling constant the function is claimed to have.
    fn coupling(&self) -> Complex64;

    fn label(&self) -> String;

    /// Distance of `(λ, z)` from the polar divisor in the coordinates the
    /// coefficients are singular in; used to keep samples away from poles.
    fn pole_distance(&self, _lambda: &[Complex64], _z: Option<Complex64>) -> f64 {
        f64::INFINITY
    }

    /// Split form at `(λ, z)`; analytic derivatives when `derivative` is set.
    fn parts(&self, lambda: &[Complex64], z: Option<Complex64>, derivative: bool) -> Result<Parts>;

    fn eval(&self, lambda: &[Complex64], z: Option<Complex64>) -> Result<Tensor2> {
        Ok(self.parts(lambda, z, false)?.to_tensor(self.algebra()))
    }

    /// Split form with derivatives computed either analytically or by
    /// central differences with step [`FD_STEP`] along each coordinate.
    fn parts_with_derivative(
        &self,
        lambda: &[Complex64],
        z: Option<Complex64>,
        mode: DerivativeMode,
    ) -> Result<Parts> {
        match mode {
            DerivativeMode::Analytic => self.parts(lambda, z, true),
            DerivativeMode::FiniteDifference => {
                let mut p = self.parts(lambda, z, false)?;
                let n = p.rank;
                let nr = p.phi.len();
                p.ds = vec![ZERO; n * n * n];
                p.dphi = vec![ZERO; nr * n];
                for k in 0..n {
                    // four-point central stencil on offsets ±h, ±2h
                    let at = |t: f64| {
                        let mut l = lambda.to_vec();
                        l[k] += t * FD_STEP;
                        self.parts(&l, z, false)
                    };
                    let (p1, m1, p2, m2) = (at(1.0)?, at(-1.0)?, at(2.0)?, at(-2.0)?);
                    let d = |a: Complex64, b: Complex64, c: Complex64, e: Complex64| {
                        (8.0 * (a - b) - (c - e)) / (12.0 * FD_STEP)
                    };
                    for ij in 0..n * n {
                        p.ds[k * n * n + ij] = d(p1.s[ij], m1.s[ij], p2.s[ij], m2.s[ij]);
                    }
                    for a in 0..nr {
                        p.dphi[a * n + k] = d(p1.phi[a], m1.phi[a], p2.phi[a], m2.phi[a]);
                    }
                }
                Ok(p)
            }
        }
    }

    fn eval_dlambda(&self, lambda: &[Complex64], z: Option<Complex64>, mode: DerivativeMode) -> Result<Tensor3> {
        Ok(self.parts_with_derivative(lambda, z, mode)?.d_tensor(self.algebra()))
    }
}

/// Any [`DynamicalR`] with a [`Perturbation`] applied to its values.
pub struct Perturbed<'a> {
    pub inner: &'a dyn DynamicalR,
    pub perturbation: Perturbation,
}

impl DynamicalR for Perturbed<'_> {
    fn algebra(&self) -> &Arc<SimpleLieAlgebra> {
        self.inner.algebra()
    }

    fn is_spectral(&self) -> bool {
        self.inner.is_spectral()
    }

    fn coupling(&self) -> Complex64 {
        self.inner.coupling()
    }

    fn label(&self) -> String {
        format!("{}+perturbed", self.inner.label())
    }

    fn pole_distance(&self, lambda: &[Complex64], z: Option<Complex64>) -> f64 {
        self.inner.pole_distance(lambda, z)
    }

    fn parts(&self, lambda: &[Complex64], z: Option<Complex64>, derivative: bool) -> Result<Parts> {
        let mut p = self.inner.parts(lambda, z, derivative)?;
        p.apply(&self.perturbation);
        Ok(p)
    }
}

/// An [`RMatrixSpec`] bound to its algebra with precomputed root data.
#[derive(Debug, Clone)]
pub struct RMatrix {
    pub spec: RMatrixSpec,
    algebra: Arc<SimpleLieAlgebra>,
    positive: Vec<bool>,
    /// Rational families: `α ∈ X`. Trigonometric: `α ∈ ±span(X)`.
    marked: Vec<bool>,
    theta: Option<ThetaParams>,
}

impl RMatrix {
    /// Validates `spec` against `algebra`.
    pub fn new(spec: RMatrixSpec, algebra: Arc<SimpleLieAlgebra>) -> Result<Self> {
        spec.validate(&algebra)?;
        Self::build(spec, algebra)
    }

    /// Skips the conditions on `X` (closedness, simplicity). Only meant for
    /// negative controls.
    pub fn new_unchecked(spec: RMatrixSpec, algebra: Arc<SimpleLieAlgebra>) -> Result<Self> {
        spec.validate_shape(&algebra)?;
        Self::build(spec, algebra)
    }

    /// Builds the algebra named in the spec, then validates.
    pub fn from_spec(spec: RMatrixSpec) -> Result<Self> {
        let g = lie::algebra(&spec.algebra.to_string())?;
        Self::new(spec, g)
    }

    fn build(spec: RMatrixSpec, algebra: Arc<SimpleLieAlgebra>) -> Result<Self> {
        let rs = &algebra.root_system;
        let mut positive = vec![false; rs.len()];
        for r in spec.positive_roots(&algebra) {
            positive[r] = true;
        }
        let mut marked = vec![false; rs.len()];
        match spec.family {
            Family::RationalConstant | Family::RationalSpectral => {
                for &r in &spec.x {
                    marked[r] = true;
                }
            }
            Family::TrigDegenerate | Family::TrigSpectral => {
                for r in span_closure(rs, &spec.x).members {
                    marked[r] = true;
                    marked[rs.negative(r)] = true;
                }
            }
            Family::TrigCotanh | Family::EllipticSpectral => {}
        }
        let theta = match (spec.family, spec.tau) {
            (Family::EllipticSpectral, Some(tau)) => Some(ThetaParams::new(tau)?),
            _ => None,
        };
        Ok(RMatrix {
            spec,
            algebra,
            positive,
            marked,
            theta,
        })
    }

    /// Value at `λ` of a family without spectral parameter.
    pub fn eval_constant(&self, lambda: &[Complex64]) -> Result<Tensor2> {
        if self.spec.family.is_spectral() {
            return Err(Error::SpecInvalid(format!("{} needs a spectral parameter", self.spec.family)));
        }
        self.eval(lambda, None)
    }

    /// Value at `(λ, z)` of a spectral family.
    pub fn eval_spectral(&self, lambda: &[Complex64], z: Complex64) -> Result<Tensor2> {
        if !self.spec.family.is_spectral() {
            return Err(Error::SpecInvalid(format!("{} has no spectral parameter", self.spec.family)));
        }
        self.eval(lambda, Some(z))
    }

    /// Arguments at which the ungauged family is evaluated.
    pub fn base_point(&self, lambda: &[Complex64], z: Option<Complex64>) -> (Vec<Complex64>, Option<Complex64>) {
        let mut lambda = lambda.to_vec();
        let mut z = z;
        for rec in self.spec.gauge_stack.iter().rev() {
            match rec {
                GaugeRecord::Shift { nu } => lambda.iter_mut().zip(nu).for_each(|(l, n)| *l -= n),
                GaugeRecord::Scale { a, b } => {
                    lambda.iter_mut().for_each(|l| *l *= a);
                    z = z.map(|z| z * b);
                }
                GaugeRecord::TwoForm { .. } | GaugeRecord::Psi { .. } => {}
            }
        }
        if !self.spec.nu.is_empty() {
            lambda.iter_mut().zip(&self.spec.nu).for_each(|(l, n)| *l -= n);
        }
        (lambda, z)
    }

    fn stack_parts(&self, depth: usize, lambda: &[Complex64], z: Option<Complex64>, deriv: bool) -> Result<Parts> {
        if depth == 0 {
            let shifted: Vec<Complex64> = if self.spec.nu.is_empty() {
                lambda.to_vec()
            } else {
                lambda.iter().zip(&self.spec.nu).map(|(l, n)| l - n).collect()
            };
            let mut p = self.base_parts(&shifted, z, deriv)?;
            self.perturb(&mut p);
            return Ok(p);
        }
        let rs = &self.algebra.root_system;
        match &self.spec.gauge_stack[depth - 1] {
            GaugeRecord::TwoForm { c } => {
                let mut p = self.stack_parts(depth - 1, lambda, z, deriv)?;
                p.add_matrix(c);
                Ok(p)
            }
            GaugeRecord::Psi { q, v } => {
                let z = z.ok_or_else(|| Error::SpecInvalid("psi gauge needs z".into()))?;
                let mut p = self.stack_parts(depth - 1, lambda, Some(z), deriv)?;
                let n = p.rank;
                let qm = |i: usize, j: usize| q.get(i).and_then(|row| row.get(j)).copied().unwrap_or(ZERO);
                for i in 0..n {
                    for j in 0..n {
                        p.s[i * n + j] += z * qm(i, j);
                    }
                }
                // gradient of ψ at λ
                let grad: Vec<Complex64> = (0..n)
                    .map(|i| (0..n).map(|j| qm(i, j) * lambda[j]).sum::<Complex64>() + v.get(i).copied().unwrap_or(ZERO))
                    .collect();
                for a in 0..rs.len() {
                    let root = &rs.roots[a];
                    let l = lie::dot(root, &grad);
                    let f = (z * l).exp();
                    if deriv {
                        for k in 0..n {
                            let qa: Complex64 = (0..n).map(|i| root[i] * qm(i, k)).sum();
                            p.dphi[a * n + k] = (p.dphi[a * n + k] + p.phi[a] * z * qa) * f;
                        }
                    }
                    p.phi[a] *= f;
                }
                Ok(p)
            }
            GaugeRecord::Shift { nu } => {
                let shifted: Vec<Complex64> = lambda.iter().zip(nu).map(|(l, n)| l - n).collect();
                self.stack_parts(depth - 1, &shifted, z, deriv)
            }
            GaugeRecord::Scale { a, b } => {
                let scaled: Vec<Complex64> = lambda.iter().map(|l| a * l).collect();
                let mut p = self.stack_parts(depth - 1, &scaled, z.map(|z| b * z), deriv)?;
                p.scale_values(*a);
                p.scale_derivatives(a * a);
                Ok(p)
            }
        }
    }

    fn perturb(&self, p: &mut Parts) {
        for pert in &self.spec.perturbations {
            p.apply(pert);
        }
    }

    /// The ungauged family at already-shifted `λ`.
    fn base_parts(&self, lambda: &[Complex64], z: Option<Complex64>, deriv: bool) -> Result<Parts> {
        let g = &self.algebra;
        let rs = &g.root_system;
        let n = g.rank();
        let mut p = Parts::zeros(n, rs.len(), deriv);
        p.add_matrix(&self.spec.c);
        let eps = self.spec.eps;
        let family = self.spec.family;
        let z = if family.is_spectral() {
            let z = z.ok_or_else(|| Error::SpecInvalid(format!("{family} needs a spectral parameter")))?;
            if z.norm() < POLE_THRESHOLD {
                return Err(Error::PoleProximity(format!("spectral parameter {z} at the origin")));
            }
            z
        } else {
            ZERO
        };
        let pairing = |a: usize| lie::dot(&rs.roots[a], lambda);
        let pole = |what: &str, v: Complex64| Error::PoleProximity(format!("{what} = {v}"));

        match family {
            Family::TrigCotanh | Family::TrigDegenerate => p.add_identity(eps / 2.0),
            Family::EllipticSpectral => {
                let theta = self.theta.as_ref().expect("elliptic spec carries tau");
                p.add_identity(rho_fn(z, theta)?);
            }
            Family::TrigSpectral => {
                let sz = z.sin();
                if sz.norm() < POLE_THRESHOLD {
                    return Err(pole("sin z", sz));
                }
                p.add_identity(z.cos() / sz);
            }
            Family::RationalSpectral => p.add_identity(1.0 / z),
            Family::RationalConstant => {}
        }

        for a in 0..rs.len() {
            let root = &rs.roots[a];
            // (value, d value / d(α,λ)); the chain rule supplies α_k
            let (value, slope) = match family {
                Family::RationalConstant | Family::RationalSpectral => {
                    let base = if family == Family::RationalSpectral { 1.0 / z } else { ZERO };
                    if self.marked[a] {
                        let w = pairing(a);
                        if w.norm() < POLE_THRESHOLD {
                            return Err(pole("(α,λ)", w));
                        }
                        (base + 1.0 / w, -1.0 / (w * w))
                    } else {
                        (base, ZERO)
                    }
                }
                Family::TrigCotanh => {
                    let w = pairing(a);
                    (eps / 2.0 + coth_scaled(eps, w)?, coth_scaled_dw(eps, w)?)
                }
                Family::TrigDegenerate => {
                    if self.marked[a] {
                        let w = pairing(a);
                        (eps / 2.0 + coth_scaled(eps, w)?, coth_scaled_dw(eps, w)?)
                    } else if self.positive[a] {
                        (eps, ZERO)
                    } else {
                        (ZERO, ZERO)
                    }
                }
                Family::EllipticSpectral => {
                    let theta = self.theta.as_ref().expect("elliptic spec carries tau");
                    let w = -pairing(a);
                    let (s, ds) = sigma_w_with_dw(w, z, theta)?;
                    (s, -ds)
                }
                Family::TrigSpectral => {
                    if self.marked[a] {
                        let w = pairing(a);
                        let sw = w.sin();
                        if sw.norm() < POLE_THRESHOLD {
                            return Err(pole("sin (α,λ)", sw));
                        }
                        ((w + z).sin() / (sw * z.sin()), -1.0 / (sw * sw))
                    } else if self.positive[a] {
                        ((-I * z).exp() / z.sin(), ZERO)
                    } else {
                        ((I * z).exp() / z.sin(), ZERO)
                    }
                }
            };
            p.phi[a] = value;
            if deriv && slope != ZERO {
                for k in 0..n {
                    p.dphi[a * n + k] = slope * root[k];
                }
            }
        }
        Ok(p)
    }
}

impl DynamicalR for RMatrix {
    fn algebra(&self) -> &Arc<SimpleLieAlgebra> {
        &self.algebra
    }

    fn is_spectral(&self) -> bool {
        self.spec.family.is_spectral()
    }

    fn coupling(&self) -> Complex64 {
        let mut eps = self.spec.family.base_coupling(self.spec.eps);
        for g in &self.spec.gauge_stack {
            if let GaugeRecord::Scale { a, b } = g {
                eps *= if self.is_spectral() { a / b } else { *a };
            }
        }
        eps
    }

    fn label(&self) -> String {
        self.spec.id()
    }

    fn pole_distance(&self, lambda: &[Complex64], z: Option<Complex64>) -> f64 {
        let (lambda, z) = self.base_point(lambda, z);
        let rs = &self.algebra.root_system;
        let pi = Complex64::new(std::f64::consts::PI, 0.0);
        let mut best = f64::INFINITY;
        let positive_roots = rs.positive_roots.iter().copied();
        for a in positive_roots {
            let w = lie::dot(&rs.roots[a], &lambda);
            let d = match self.spec.family {
                Family::RationalConstant | Family::RationalSpectral if self.marked[a] => w.norm(),
                Family::TrigCotanh => line_lattice_distance(w, 2.0 * pi * I / self.spec.eps),
                Family::TrigDegenerate if self.marked[a] => line_lattice_distance(w, 2.0 * pi * I / self.spec.eps),
                Family::EllipticSpectral => lattice_distance(w, self.spec.tau.unwrap_or(I)),
                Family::TrigSpectral if self.marked[a] => line_lattice_distance(w, pi),
                _ => f64::INFINITY,
            };
            best = best.min(d);
        }
        if let Some(z) = z {
            let d = match self.spec.family {
                Family::EllipticSpectral => lattice_distance(z, self.spec.tau.unwrap_or(I)),
                Family::TrigSpectral => line_lattice_distance(z, pi),
                _ => z.norm(),
            };
            best = best.min(d);
        }
        best
    }

    fn parts(&self, lambda: &[Complex64], z: Option<Complex64>, derivative: bool) -> Result<Parts> {
        if lambda.len() != self.algebra.rank() {
            return Err(Error::SpecInvalid(format!(
                "lambda has {} coordinates, rank is {}",
                lambda.len(),
                self.algebra.rank()
            )));
        }
        self.stack_parts(self.spec.gauge_stack.len(), lambda, z, derivative)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::algebra;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn cx(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn a1() -> Arc<SimpleLieAlgebra> {
        algebra("A1").unwrap()
    }

    fn ef(g: &SimpleLieAlgebra) -> (usize, usize) {
        let e = g.root_basis(g.root_system.positive_roots[0]);
        (e, g.dual(e))
    }

    /// λ with (α,λ) = w for the positive root of A1.
    fn a1_lambda(w: Complex64) -> Vec<Complex64> {
        vec![w / 2f64.sqrt()]
    }

    #[test]
    fn a1_rational_value() {
        let g = a1();
        let spec = RMatrixSpec::new(Family::RationalConstant, g.lie_type()).with_x(vec![0, 1]);
        let r = RMatrix::new(spec, g.clone()).unwrap();
        let t = r.eval_constant(&a1_lambda(c(2.0))).unwrap();
        let (e, f) = ef(&g);
        assert!((t[(e, f)] - 0.5).norm() < 1e-15);
        assert!((t[(f, e)] + 0.5).norm() < 1e-15);
        assert_eq!(t.nonzeros().len(), 2);
    }

    #[test]
    fn a1_cotanh_value() {
        let g = a1();
        let spec = RMatrixSpec::new(Family::TrigCotanh, g.lie_type()).with_eps(c(2.0));
        let r = RMatrix::new(spec, g.clone()).unwrap();
        let t = r.eval_constant(&a1_lambda(c(3f64.ln()))).unwrap();
        let (e, f) = ef(&g);
        assert!((t[(e, f)] - 9.0 / 4.0).norm() < 1e-14);
        assert!((t[(f, e)] + 1.0 / 4.0).norm() < 1e-14);
        assert!((t[(0, 0)] - 1.0).norm() < 1e-15);
    }

    #[test]
    fn degenerate_with_empty_x_is_the_constant_solution() {
        for name in ["A2", "B2", "G2"] {
            let g = algebra(name).unwrap();
            let spec = RMatrixSpec::new(Family::TrigDegenerate, g.lie_type());
            let r = RMatrix::new(spec, g.clone()).unwrap();
            let lam = vec![cx(0.3, 0.1); g.rank()];
            let t = r.eval_constant(&lam).unwrap();
            let mut want = Tensor2::zeros(&g);
            for i in 0..g.rank() {
                want[(i, i)] = c(0.5);
            }
            for &a in &g.root_system.positive_roots {
                let e = g.root_basis(a);
                want[(e, g.dual(e))] = c(1.0);
            }
            assert!(t.distance(&want) < 1e-15, "{name}");
        }
    }

    #[test]
    fn degenerate_full_x_tends_to_constant_solution_deep_in_chamber() {
        let g = algebra("A2").unwrap();
        let rs = &g.root_system;
        let spec = RMatrixSpec::new(Family::TrigDegenerate, g.lie_type()).with_x(rs.simple_roots.clone());
        let r = RMatrix::new(spec, g.clone()).unwrap();
        let rho: Vec<Complex64> = (0..2)
            .map(|k| c(rs.fundamental_weights().iter().map(|w| w[k]).sum::<f64>() * 40.0))
            .collect();
        let t = r.eval_constant(&rho).unwrap();
        let flat = RMatrix::new(RMatrixSpec::new(Family::TrigDegenerate, g.lie_type()), g.clone()).unwrap();
        assert!(t.distance(&flat.eval_constant(&rho).unwrap()) < 1e-15);
    }

    #[test]
    fn yang_solution_and_residue_scaling() {
        let g = algebra("A2").unwrap();
        let spec = RMatrixSpec::new(Family::RationalSpectral, g.lie_type());
        let r = RMatrix::new(spec.clone(), g.clone()).unwrap();
        let z = cx(0.7, -0.2);
        let lam = vec![cx(0.1, 0.2), cx(-0.3, 0.5)];
        let omega = Tensor2::casimir(&g);
        assert!(r.eval_spectral(&lam, z).unwrap().distance(&omega.scale(1.0 / z)) < 1e-15);
        let scaled = gauge_apply(&spec, GaugeRecord::Scale { a: c(1.0), b: c(2.0) }).unwrap();
        let r2 = RMatrix::new(scaled, g.clone()).unwrap();
        assert!((r2.coupling() - 0.5).norm() < 1e-15);
        assert!(r2.eval_spectral(&lam, z).unwrap().distance(&omega.scale(0.5 / z)) < 1e-15);
    }

    #[test]
    fn gauge_identities() {
        let g = algebra("A2").unwrap();
        let spec = RMatrixSpec::new(Family::EllipticSpectral, g.lie_type()).with_tau(cx(0.1, 1.0));
        let lam = vec![cx(0.21, 0.1), cx(-0.33, 0.05)];
        let z = cx(0.31, 0.07);
        let base = RMatrix::new(spec.clone(), g.clone()).unwrap();
        let r0 = base.parts(&lam, Some(z), true).unwrap();

        let zero_shift = gauge_apply(&spec, GaugeRecord::Shift { nu: vec![c(0.0); 2] }).unwrap();
        let p = RMatrix::new(zero_shift, g.clone()).unwrap().parts(&lam, Some(z), true).unwrap();
        assert_eq!(p, r0);

        let v = vec![cx(0.4, -0.1), c(0.7)];
        let psi = gauge_apply(&spec, GaugeRecord::Psi { q: vec![vec![c(0.0); 2]; 2], v: v.clone() }).unwrap();
        let p = RMatrix::new(psi, g.clone()).unwrap().parts(&lam, Some(z), false).unwrap();
        assert_eq!(p.s, r0.s);
        for a in 0..g.n_roots() {
            let f = (z * lie::dot(&g.root_system.roots[a], &v)).exp();
            assert!((p.phi[a] - r0.phi[a] * f).norm() < 1e-12);
        }
    }

    #[test]
    fn analytic_derivatives_match_finite_differences() {
        let g = algebra("B2").unwrap();
        let rs = &g.root_system;
        let lam = vec![cx(0.37, 0.21), cx(-0.52, 0.13)];
        let z = Some(cx(0.29, 0.11));
        let mut specs = vec![
            RMatrixSpec::new(Family::RationalConstant, g.lie_type()).with_x((0..rs.len()).collect()),
            RMatrixSpec::new(Family::TrigCotanh, g.lie_type()).with_eps(cx(1.0, 1.0)),
            RMatrixSpec::new(Family::TrigDegenerate, g.lie_type()).with_x(vec![rs.simple_roots[0]]),
            RMatrixSpec::new(Family::EllipticSpectral, g.lie_type()).with_tau(cx(0.0, 1.0)),
            RMatrixSpec::new(Family::TrigSpectral, g.lie_type()).with_x(vec![rs.simple_roots[1]]),
            RMatrixSpec::new(Family::RationalSpectral, g.lie_type()).with_x((0..rs.len()).collect()),
        ];
        let gauged = gauge_apply(
            &specs[3],
            GaugeRecord::Psi {
                q: vec![vec![c(0.3), c(0.1)], vec![c(0.1), c(-0.2)]],
                v: vec![c(0.2), c(0.4)],
            },
        )
        .unwrap();
        specs.push(gauge_apply(&gauged, GaugeRecord::Scale { a: c(1.3), b: cx(0.8, 0.1) }).unwrap());
        for spec in specs {
            let r = RMatrix::new(spec.clone(), g.clone()).unwrap();
            let zz = if r.is_spectral() { z } else { None };
            let an = r.eval_dlambda(&lam, zz, DerivativeMode::Analytic).unwrap();
            let fd = r.eval_dlambda(&lam, zz, DerivativeMode::FiniteDifference).unwrap();
            let scale = 1.0 + an.norm();
            assert!(an.distance(&fd) <= 1e-6 * scale, "{}: {}", spec.id(), an.distance(&fd));
        }
    }

    #[test]
    fn rational_derivative_hand_value() {
        let g = a1();
        let spec = RMatrixSpec::new(Family::RationalConstant, g.lie_type()).with_x(vec![0, 1]);
        let r = RMatrix::new(spec, g.clone()).unwrap();
        let p = r.parts(&a1_lambda(c(2.0)), None, true).unwrap();
        let a = g.root_system.positive_roots[0];
        // ∂/∂λ of 1/(α,λ) is −α/(α,λ)² = −√2/4
        assert!((p.dphi[a] + 2f64.sqrt() / 4.0).norm() < 1e-15);
        let flat = RMatrix::new(RMatrixSpec::new(Family::RationalConstant, g.lie_type()), g.clone()).unwrap();
        assert_eq!(flat.eval_dlambda(&a1_lambda(c(2.0)), None, DerivativeMode::Analytic).unwrap().norm(), 0.0);
    }

    #[test]
    fn validation_errors() {
        let g = algebra("A2").unwrap();
        let rs = &g.root_system;
        let not_closed = RMatrixSpec::new(Family::RationalConstant, g.lie_type()).with_x(vec![rs.simple_roots[0]]);
        assert!(matches!(RMatrix::new(not_closed.clone(), g.clone()), Err(Error::SpecInvalid(_))));
        assert!(RMatrix::new_unchecked(not_closed, g.clone()).is_ok());
        let highest = rs.index_of(&[1, 1]).unwrap();
        let not_simple = RMatrixSpec::new(Family::TrigSpectral, g.lie_type()).with_x(vec![highest]);
        assert!(RMatrix::new(not_simple, g.clone()).is_err());
        let zero_eps = RMatrixSpec::new(Family::TrigCotanh, g.lie_type()).with_eps(c(0.0));
        assert!(RMatrix::new(zero_eps, g.clone()).is_err());
        let sym_c = RMatrixSpec::new(Family::TrigCotanh, g.lie_type()).with_c(vec![vec![c(1.0), c(0.0)], vec![c(0.0), c(0.0)]]);
        assert!(RMatrix::new(sym_c, g.clone()).is_err());
        let spec = RMatrixSpec::new(Family::RationalSpectral, g.lie_type());
        assert!(gauge_apply(&spec, GaugeRecord::Scale { a: c(0.0), b: c(1.0) }).is_err());
        let constant = RMatrixSpec::new(Family::TrigCotanh, g.lie_type());
        assert!(gauge_apply(&constant, GaugeRecord::Psi { q: vec![], v: vec![c(1.0), c(0.0)] }).is_err());
        let r = RMatrix::new(RMatrixSpec::new(Family::RationalConstant, g.lie_type()).with_x((0..6).collect()), g.clone()).unwrap();
        let on_wall = vec![c(0.0), c(0.0)];
        assert!(matches!(r.eval_constant(&on_wall), Err(Error::PoleProximity(_))));
    }

    #[test]
    fn spec_json_round_trip() {
        let g = algebra("B2").unwrap();
        let spec = RMatrixSpec::new(Family::EllipticSpectral, g.lie_type())
            .with_tau(cx(0.1, 2.0))
            .with_nu(vec![cx(0.1, 1.0 / 3.0), cx(-2.5e-17, 7.0)])
            .with_c(vec![vec![c(0.0), cx(0.3, 0.1)], vec![cx(-0.3, -0.1), c(0.0)]]);
        let spec = gauge_apply(&spec, GaugeRecord::Scale { a: cx(0.5, 0.25), b: c(3.0) }).unwrap();
        let spec = gauge_apply(&spec, GaugeRecord::Shift { nu: vec![c(1.0), c(2.0)] }).unwrap();
        let text = spec.to_json();
        assert!(text.contains("\"family\": \"elliptic-spectral\""));
        assert!(text.contains("\"algebra\": \"B2\""));
        assert_eq!(RMatrixSpec::from_json(&text).unwrap(), spec);
    }
}
