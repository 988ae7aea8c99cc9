//! Dense tensors over `g⊗g` and `g⊗g⊗g` in the Chevalley basis.

use std::ops::{Add, AddAssign, Mul, Sub};
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::lie::SimpleLieAlgebra;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

fn check_same(a: &Arc<SimpleLieAlgebra>, b: &Arc<SimpleLieAlgebra>) -> Result<()> {
    if Arc::ptr_eq(a, b) || a.lie_type() == b.lie_type() {
        Ok(())
    } else {
        Err(Error::AlgebraMismatch(a.id(), b.id()))
    }
}

#[derive(Debug, Clone)]
pub struct Tensor2 {
    pub algebra: Arc<SimpleLieAlgebra>,
    pub dim: usize,
    pub coeffs: Vec<Complex64>,
}

#[derive(Debug, Clone)]
pub struct Tensor3 {
    pub algebra: Arc<SimpleLieAlgebra>,
    pub dim: usize,
    pub coeffs: Vec<Complex64>,
}

impl Tensor2 {
    pub fn zeros(algebra: &Arc<SimpleLieAlgebra>) -> Self {
        let dim = algebra.dim;
        Tensor2 {
            algebra: Arc::clone(algebra),
            dim,
            coeffs: vec![ZERO; dim * dim],
        }
    }

    /// The basis monomial `b_i ⊗ b_j`.
    pub fn monomial(algebra: &Arc<SimpleLieAlgebra>, i: usize, j: usize) -> Self {
        let mut t = Self::zeros(algebra);
        t[(i, j)] = Complex64::new(1.0, 0.0);
        t
    }

    /// `Ω = Σ x_i⊗x_i + Σ_a e_a⊗e_{-a}`.
    pub fn casimir(algebra: &Arc<SimpleLieAlgebra>) -> Self {
        let mut t = Self::zeros(algebra);
        for b in 0..algebra.dim {
            t[(b, algebra.dual(b))] = Complex64::new(1.0, 0.0);
        }
        t
    }

    /// Leg swap `T^{21}`.
    pub fn transpose(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(&self.algebra);
        for i in 0..n {
            for j in 0..n {
                out.coeffs[j * n + i] = self.coeffs[i * n + j];
            }
        }
        out
    }

    /// Coefficient sup-norm.
    pub fn norm(&self) -> f64 {
        sup_norm(&self.coeffs)
    }

    pub fn nonzeros(&self) -> Vec<(usize, usize, Complex64)> {
        let n = self.dim;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != ZERO)
            .map(|(k, &c)| (k / n, k % n, c))
            .collect()
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let mut out = self.clone();
        out.coeffs.iter_mut().for_each(|v| *v *= c);
        out
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        check_same(&self.algebra, &other.algebra)?;
        let mut out = self.clone();
        out.coeffs.iter_mut().zip(&other.coeffs).for_each(|(a, b)| *a += b);
        Ok(out)
    }

    /// Largest coefficient difference.
    pub fn distance(&self, other: &Self) -> f64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .fold(0.0, |m, (a, b)| m.max((a - b).norm()))
    }
}

impl std::ops::Index<(usize, usize)> for Tensor2 {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.coeffs[i * self.dim + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Tensor2 {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.coeffs[i * self.dim + j]
    }
}

impl Add for &Tensor2 {
    type Output = Tensor2;
    fn add(self, rhs: &Tensor2) -> Tensor2 {
        self.try_add(rhs).expect("tensors over the same algebra")
    }
}

impl Sub for &Tensor2 {
    type Output = Tensor2;
    fn sub(self, rhs: &Tensor2) -> Tensor2 {
        self.try_add(&rhs.scale(Complex64::new(-1.0, 0.0)))
            .expect("tensors over the same algebra")
    }
}

impl Mul<Complex64> for &Tensor2 {
    type Output = Tensor2;
    fn mul(self, c: Complex64) -> Tensor2 {
        self.scale(c)
    }
}

impl Tensor3 {
    pub fn zeros(algebra: &Arc<SimpleLieAlgebra>) -> Self {
        let dim = algebra.dim;
        Tensor3 {
            algebra: Arc::clone(algebra),
            dim,
            coeffs: vec![ZERO; dim * dim * dim],
        }
    }

    #[inline]
    pub fn offset(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.dim + j) * self.dim + k
    }

    pub fn norm(&self) -> f64 {
        sup_norm(&self.coeffs)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let mut out = self.clone();
        out.coeffs.iter_mut().for_each(|v| *v *= c);
        out
    }

    /// Applies a permutation of legs: `out[p(i,j,k)] = self[i,j,k]`, where
    /// leg `m` of the input ends up on leg `perm[m]`.
    pub fn permute_legs(&self, perm: [usize; 3]) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(&self.algebra);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let mut idx = [0; 3];
                    idx[perm[0]] = i;
                    idx[perm[1]] = j;
                    idx[perm[2]] = k;
                    out[(idx[0], idx[1], idx[2])] = self[(i, j, k)];
                }
            }
        }
        out
    }

    pub fn distance(&self, other: &Self) -> f64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .fold(0.0, |m, (a, b)| m.max((a - b).norm()))
    }
}

impl std::ops::Index<(usize, usize, usize)> for Tensor3 {
    type Output = Complex64;
    fn index(&self, (i, j, k): (usize, usize, usize)) -> &Complex64 {
        &self.coeffs[self.offset(i, j, k)]
    }
}

impl std::ops::IndexMut<(usize, usize, usize)> for Tensor3 {
    fn index_mut(&mut self, (i, j, k): (usize, usize, usize)) -> &mut Complex64 {
        let o = self.offset(i, j, k);
        &mut self.coeffs[o]
    }
}

impl AddAssign<&Tensor3> for Tensor3 {
    fn add_assign(&mut self, rhs: &Tensor3) {
        assert_eq!(self.dim, rhs.dim, "tensors over the same algebra");
        self.coeffs.iter_mut().zip(&rhs.coeffs).for_each(|(a, b)| *a += b);
    }
}

impl Add for &Tensor3 {
    type Output = Tensor3;
    fn add(self, rhs: &Tensor3) -> Tensor3 {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &Tensor3 {
    type Output = Tensor3;
    fn sub(self, rhs: &Tensor3) -> Tensor3 {
        let mut out = self.clone();
        out.coeffs.iter_mut().zip(&rhs.coeffs).for_each(|(a, b)| *a -= b);
        out
    }
}

fn sup_norm(c: &[Complex64]) -> f64 {
    c.iter().fold(0.0, |m, v| m.max(v.norm()))
}

/// Which pair of legs the two factors of a mixed commutator occupy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Placement {
    /// `[X^{12}, Y^{13}]`
    P12_13,
    /// `[X^{12}, Y^{23}]`
    P12_23,
    /// `[X^{13}, Y^{23}]`
    P13_23,
}

/// Commutator of two leg-embedded tensors as an element of `g⊗g⊗g`.
pub fn bracket_legs(x: &Tensor2, y: &Tensor2, placement: Placement) -> Result<Tensor3> {
    let mut out = Tensor3::zeros(&x.algebra);
    bracket_legs_into(x, y, placement, &mut out)?;
    Ok(out)
}

/// Accumulates `bracket_legs(x, y, placement)` into `out`.
pub fn bracket_legs_into(x: &Tensor2, y: &Tensor2, placement: Placement, out: &mut Tensor3) -> Result<()> {
    check_same(&x.algebra, &y.algebra)?;
    check_same(&x.algebra, &out.algebra)?;
    let g = &x.algebra;
    let xs = x.nonzeros();
    let ys = y.nonzeros();
    for &(a, b, xv) in &xs {
        for &(c, d, yv) in &ys {
            let v = xv * yv;
            match placement {
                // [x_a, x_c] ⊗ x_b ⊗ x_d
                Placement::P12_13 => {
                    for &(k, f) in g.bracket(a, c) {
                        out[(k, b, d)] += v * f;
                    }
                }
                // x_a ⊗ [x_b, x_c] ⊗ x_d
                Placement::P12_23 => {
                    for &(k, f) in g.bracket(b, c) {
                        out[(a, k, d)] += v * f;
                    }
                }
                // x_a ⊗ x_c ⊗ [x_b, x_d]
                Placement::P13_23 => {
                    for &(k, f) in g.bracket(b, d) {
                        out[(a, c, k)] += v * f;
                    }
                }
            }
        }
    }
    Ok(())
}

/// `[X^{12}, Y^{13}] + [X^{12}, Y^{23}] + [X^{13}, Y^{23}]` with the three
/// tensors given separately (they coincide for constant r-matrices).
pub fn cyb_brackets(r12: &Tensor2, r13: &Tensor2, r23: &Tensor2) -> Result<Tensor3> {
    let mut out = Tensor3::zeros(&r12.algebra);
    bracket_legs_into(r12, r13, Placement::P12_13, &mut out)?;
    bracket_legs_into(r12, r23, Placement::P12_23, &mut out)?;
    bracket_legs_into(r13, r23, Placement::P13_23, &mut out)?;
    Ok(out)
}

/// `Alt(Z) = Z^{123} + Z^{231} + Z^{312}`; on monomials
/// `a⊗b⊗c ↦ a⊗b⊗c + c⊗a⊗b + b⊗c⊗a`.
pub fn alt3(z: &Tensor3) -> Tensor3 {
    let n = z.dim;
    let mut out = Tensor3::zeros(&z.algebra);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                out[(i, j, k)] = z[(i, j, k)] + z[(j, k, i)] + z[(k, i, j)];
            }
        }
    }
    out
}

/// `[b_x ⊗ 1 + 1 ⊗ b_x, T]`.
pub fn act_diag(x: usize, t: &Tensor2) -> Tensor2 {
    let g = &t.algebra;
    let mut out = Tensor2::zeros(g);
    for (a, b, v) in t.nonzeros() {
        for &(k, f) in g.bracket(x, a) {
            out[(k, b)] += v * f;
        }
        for &(k, f) in g.bracket(x, b) {
            out[(a, k)] += v * f;
        }
    }
    out
}

/// `[b_x⊗1⊗1 + 1⊗b_x⊗1 + 1⊗1⊗b_x, Z]`.
pub fn act_diag3(x: usize, z: &Tensor3) -> Tensor3 {
    let g = &z.algebra;
    let n = z.dim;
    let mut out = Tensor3::zeros(g);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let v = z[(i, j, k)];
                if v == ZERO {
                    continue;
                }
                for &(m, f) in g.bracket(x, i) {
                    out[(m, j, k)] += v * f;
                }
                for &(m, f) in g.bracket(x, j) {
                    out[(i, m, k)] += v * f;
                }
                for &(m, f) in g.bracket(x, k) {
                    out[(i, j, m)] += v * f;
                }
            }
        }
    }
    out
}
