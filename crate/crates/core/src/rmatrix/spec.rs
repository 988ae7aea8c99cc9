//! Serializable descriptions of r-matrix families and gauge transformations.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{is_closed_subset, is_positive_system, simple_roots_of};
use crate::error::{Error, Result};
use crate::lie::{LieType, SimpleLieAlgebra};

pub const SPEC_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// `C + Σ_{α∈X} (α,λ−ν)⁻¹ e_α⊗e_{−α}` for a closed set `X`.
    RationalConstant,
    /// `C + (ε/2)Ω + Σ_α (ε/2)coth((ε/2)(α,λ−ν)) e_α⊗e_{−α}`.
    TrigCotanh,
    /// Cotanh coefficients on the span of `X ⊆ Δ₊ˢ`, constants `±ε/2` elsewhere.
    TrigDegenerate,
    /// `ρ(z)Σx_i⊗x_i + Σ_α σ_{−(α,λ)}(z) e_α⊗e_{−α}`.
    EllipticSpectral,
    /// `cot z Σx_i⊗x_i` plus sine-ratio / exponential coefficients.
    TrigSpectral,
    /// `Ω/z + Σ_{α∈X} (α,λ)⁻¹ e_α⊗e_{−α}`.
    RationalSpectral,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::RationalConstant,
        Family::TrigCotanh,
        Family::TrigDegenerate,
        Family::EllipticSpectral,
        Family::TrigSpectral,
        Family::RationalSpectral,
    ];

    pub fn is_spectral(self) -> bool {
        matches!(
            self,
            Family::EllipticSpectral | Family::TrigSpectral | Family::RationalSpectral
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::RationalConstant => "rational-constant",
            Family::TrigCotanh => "trig-cotanh",
            Family::TrigDegenerate => "trig-degenerate",
            Family::EllipticSpectral => "elliptic-spectral",
            Family::TrigSpectral => "trig-spectral",
            Family::RationalSpectral => "rational-spectral",
        }
    }

    pub fn formula(self) -> &'static str {
        match self {
            Family::RationalConstant => "r(λ) = C + Σ_{α∈X} 1/(α,λ−ν) e_α⊗e_{−α},  X closed under negation and addition",
            Family::TrigCotanh => "r(λ) = C + (ε/2)Ω + Σ_α (ε/2)coth((ε/2)(α,λ−ν)) e_α⊗e_{−α}",
            Family::TrigDegenerate => "r(λ) = C + (ε/2)Ω + Σ_α φ_α e_α⊗e_{−α},  φ_α = (ε/2)coth((ε/2)(α,λ−ν)) on ±span(X), ±ε/2 by sign otherwise, X ⊆ Δ₊ˢ",
            Family::EllipticSpectral => "r(λ,z) = ρ(z,τ) Σ x_i⊗x_i + Σ_α σ_{−(α,λ)}(z,τ) e_α⊗e_{−α}",
            Family::TrigSpectral => "r(λ,z) = cot z Σ x_i⊗x_i + Σ_α φ_α e_α⊗e_{−α},  φ_α = sin((α,λ)+z)/(sin(α,λ) sin z) on ±span(X), e^{∓iz}/sin z otherwise",
            Family::RationalSpectral => "r(λ,z) = Ω/z + Σ_{α∈X} 1/(α,λ) e_α⊗e_{−α},  X closed under negation and addition",
        }
    }

    /// Coupling constant of the ungauged family.
    pub fn base_coupling(self, eps: Complex64) -> Complex64 {
        match self {
            Family::RationalConstant => Complex64::new(0.0, 0.0),
            Family::TrigCotanh | Family::TrigDegenerate => eps,
            _ => Complex64::new(1.0, 0.0),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::SpecInvalid(format!("unknown family '{s}'")))
    }
}

/// One gauge transformation. `kind()` gives its number 1-4.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum GaugeRecord {
    /// Adds a constant antisymmetric `Σ C_ij x_i⊗x_j`.
    TwoForm { c: Vec<Vec<Complex64>> },
    /// `ψ(λ) = ½λᵀQλ + vᵀλ`: adds `zQ` to the Cartan part and multiplies
    /// `φ_α` by `exp(z (α, Qλ + v))`.
    Psi { q: Vec<Vec<Complex64>>, v: Vec<Complex64> },
    /// `λ ↦ λ − ν`.
    Shift { nu: Vec<Complex64> },
    /// `r(λ,z) ↦ a·r(aλ, bz)`.
    Scale { a: Complex64, b: Complex64 },
}

impl GaugeRecord {
    pub fn kind(&self) -> u8 {
        match self {
            GaugeRecord::TwoForm { .. } => 1,
            GaugeRecord::Psi { .. } => 2,
            GaugeRecord::Shift { .. } => 3,
            GaugeRecord::Scale { .. } => 4,
        }
    }
}

/// Deliberate corruptions used as negative controls.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Perturbation {
    /// Negates the coefficient of `e_α⊗e_{−α}`.
    FlipRootSign { root: usize },
    /// Adds a constant to the coefficient of `e_α⊗e_{−α}`.
    AddRootCoefficient { root: usize, value: Complex64 },
    /// Adds `value·Ω`, i.e. evaluates with the wrong coupling constant.
    AddCasimir { value: Complex64 },
}

fn one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

fn spec_version() -> u32 {
    SPEC_VERSION
}

/// A point in one of the r-matrix families, plus gauges applied on top.
///
/// Empty `nu`/`c` mean zero; a missing `polarization` means the standard
/// positive roots.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RMatrixSpec {
    #[serde(default = "spec_version")]
    pub version: u32,
    pub family: Family,
    pub algebra: LieType,
    #[serde(default = "one")]
    pub eps: Complex64,
    #[serde(default)]
    pub nu: Vec<Complex64>,
    #[serde(default)]
    pub x: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polarization: Option<Vec<usize>>,
    #[serde(default)]
    pub c: Vec<Vec<Complex64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau: Option<Complex64>,
    #[serde(default)]
    pub gauge_stack: Vec<GaugeRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub perturbations: Vec<Perturbation>,
}

impl RMatrixSpec {
    pub fn new(family: Family, algebra: LieType) -> Self {
        RMatrixSpec {
            version: SPEC_VERSION,
            family,
            algebra,
            eps: one(),
            nu: Vec::new(),
            x: Vec::new(),
            polarization: None,
            c: Vec::new(),
            tau: match family {
                Family::EllipticSpectral => Some(Complex64::new(0.0, 1.0)),
                _ => None,
            },
            gauge_stack: Vec::new(),
            perturbations: Vec::new(),
        }
    }

    pub fn with_eps(mut self, eps: Complex64) -> Self {
        self.eps = eps;
        self
    }

    pub fn with_nu(mut self, nu: Vec<Complex64>) -> Self {
        self.nu = nu;
        self
    }

    pub fn with_x(mut self, mut x: Vec<usize>) -> Self {
        x.sort_unstable();
        x.dedup();
        self.x = x;
        self
    }

    pub fn with_polarization(mut self, positive: Vec<usize>) -> Self {
        self.polarization = Some(positive);
        self
    }

    pub fn with_c(mut self, c: Vec<Vec<Complex64>>) -> Self {
        self.c = c;
        self
    }

    pub fn with_tau(mut self, tau: Complex64) -> Self {
        self.tau = Some(tau);
        self
    }

    pub fn with_perturbation(mut self, p: Perturbation) -> Self {
        self.perturbations.push(p);
        self
    }

    /// Short identifier used in reports.
    pub fn id(&self) -> String {
        let mut s = format!("{}/{}", self.family, self.algebra);
        if !self.gauge_stack.is_empty() {
            let kinds: Vec<String> = self.gauge_stack.iter().map(|g| g.kind().to_string()).collect();
            s.push_str(&format!("+gauge[{}]", kinds.join(",")));
        }
        if !self.perturbations.is_empty() {
            s.push_str("+perturbed");
        }
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let spec: RMatrixSpec =
            serde_json::from_str(text).map_err(|e| Error::SpecInvalid(e.to_string()))?;
        if spec.version != SPEC_VERSION {
            return Err(Error::SpecInvalid(format!(
                "spec version {} (expected {SPEC_VERSION})",
                spec.version
            )));
        }
        Ok(spec)
    }

    pub fn positive_roots(&self, g: &SimpleLieAlgebra) -> Vec<usize> {
        self.polarization
            .clone()
            .unwrap_or_else(|| g.root_system.positive_roots.clone())
    }

    /// Dimension and range checks that even deliberately broken specs pass.
    pub fn validate_shape(&self, g: &SimpleLieAlgebra) -> Result<()> {
        if g.lie_type() != self.algebra {
            return Err(Error::AlgebraMismatch(self.algebra.to_string(), g.id()));
        }
        let n = g.rank();
        let bad = |m: String| Err(Error::SpecInvalid(m));
        if !self.nu.is_empty() && self.nu.len() != n {
            return bad(format!("nu has {} entries, rank is {n}", self.nu.len()));
        }
        check_antisymmetric(&self.c, n, "c")?;
        if self.x.iter().any(|&r| r >= g.n_roots()) {
            return bad("root index in x out of range".into());
        }
        if matches!(self.family, Family::TrigCotanh | Family::TrigDegenerate) && self.eps.norm() == 0.0 {
            return bad("eps must be nonzero for trigonometric families".into());
        }
        if self.family == Family::EllipticSpectral {
            match self.tau {
                Some(t) if t.im > 0.0 => {}
                _ => return bad("elliptic family needs tau with Im(tau) > 0".into()),
            }
        }
        if let Some(p) = &self.polarization {
            if p.iter().any(|&r| r >= g.n_roots()) || !is_positive_system(&g.root_system, p) {
                return bad("polarization is not a positive system".into());
            }
        }
        for rec in &self.gauge_stack {
            validate_gauge(rec, n, self.family.is_spectral())?;
        }
        for p in &self.perturbations {
            match p {
                Perturbation::FlipRootSign { root } | Perturbation::AddRootCoefficient { root, .. }
                    if *root >= g.n_roots() =>
                {
                    return bad("perturbation root out of range".into())
                }
                _ => {}
            }
        }
        Ok(())
    }

    /// Full validation including the family's conditions on `X`.
    pub fn validate(&self, g: &SimpleLieAlgebra) -> Result<()> {
        self.validate_shape(g)?;
        let rs = &g.root_system;
        match self.family {
            Family::RationalConstant | Family::RationalSpectral => {
                if !is_closed_subset(rs, &self.x) {
                    return Err(Error::SpecInvalid(
                        "x must be closed under negation and root addition".into(),
                    ));
                }
            }
            Family::TrigDegenerate | Family::TrigSpectral => {
                let simple = simple_roots_of(rs, &self.positive_roots(g));
                if self.x.iter().any(|r| !simple.contains(r)) {
                    return Err(Error::SpecInvalid(
                        "x must consist of simple roots of the polarization".into(),
                    ));
                }
            }
            Family::TrigCotanh | Family::EllipticSpectral => {}
        }
        Ok(())
    }
}

fn check_square(m: &[Vec<Complex64>], n: usize, what: &str) -> Result<()> {
    if !m.is_empty() && (m.len() != n || m.iter().any(|row| row.len() != n)) {
        return Err(Error::SpecInvalid(format!("{what} must be {n}x{n}")));
    }
    Ok(())
}

fn check_antisymmetric(m: &[Vec<Complex64>], n: usize, what: &str) -> Result<()> {
    check_square(m, n, what)?;
    for i in 0..m.len() {
        for j in 0..m.len() {
            if (m[i][j] + m[j][i]).norm() > 1e-14 {
                return Err(Error::SpecInvalid(format!("{what} must be antisymmetric")));
            }
        }
    }
    Ok(())
}

pub fn validate_gauge(rec: &GaugeRecord, rank: usize, spectral: bool) -> Result<()> {
    match rec {
        GaugeRecord::TwoForm { c } => check_antisymmetric(c, rank, "two-form c"),
        GaugeRecord::Psi { q, v } => {
            if !spectral {
                return Err(Error::SpecInvalid(
                    "psi gauge needs a spectral parameter".into(),
                ));
            }
            check_square(q, rank, "psi q")?;
            for i in 0..q.len() {
                for j in 0..q.len() {
                    if (q[i][j] - q[j][i]).norm() > 1e-14 {
                        return Err(Error::SpecInvalid("psi q must be symmetric".into()));
                    }
                }
            }
            if !v.is_empty() && v.len() != rank {
                return Err(Error::SpecInvalid("psi v has wrong length".into()));
            }
            Ok(())
        }
        GaugeRecord::Shift { nu } => {
            if nu.len() != rank {
                return Err(Error::SpecInvalid("shift nu has wrong length".into()));
            }
            Ok(())
        }
        GaugeRecord::Scale { a, b } => {
            if a.norm() == 0.0 || b.norm() == 0.0 {
                return Err(Error::SpecInvalid("scale gauge needs a, b nonzero".into()));
            }
            Ok(())
        }
    }
}

/// Returns `spec` with `g` appended to its gauge stack.
pub fn gauge_apply(spec: &RMatrixSpec, g: GaugeRecord) -> Result<RMatrixSpec> {
    validate_gauge(&g, spec.algebra.rank, spec.family.is_spectral())?;
    let mut out = spec.clone();
    out.gauge_stack.push(g);
    Ok(out)
}
