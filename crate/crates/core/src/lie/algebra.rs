//! Chevalley-basis realization of a simple Lie algebra.
//!
//! Basis layout: indices `0..rank` are an orthonormal basis `x_i` of the
//! Cartan subalgebra, index `rank + r` is the root vector `e_r` for root `r`
//! of the underlying [`RootSystemData`]. Root vectors are normalized so that
//! `B(e_a, e_{-a}) = 1` and `[e_a, e_{-a}] = h_a`.

use std::collections::HashMap;
use std::fmt;

use num_rational::Rational64;
use num_traits::{Signed, ToPrimitive, Zero};

use super::roots::{LieType, RootSystemData};
use crate::error::{Error, Result};

/// Structure constants `N_{a,b}` of a Chevalley basis (coroot normalization),
/// keyed by root index pairs whose sum is a root.
pub type ChevalleyTable = HashMap<(usize, usize), Rational64>;

#[derive(Debug, Clone)]
pub struct SimpleLieAlgebra {
    pub root_system: RootSystemData,
    pub dim: usize,
    chevalley: ChevalleyTable,
    /// Exact root-root constants after rescaling to dual root vectors.
    root_brackets: HashMap<(usize, usize), Rational64>,
    brackets: Vec<Vec<Vec<(usize, f64)>>>,
}

impl fmt::Display for SimpleLieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.root_system.lie_type)
    }
}

fn rat_f64(r: Rational64) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Chevalley structure constants from extraspecial-pair signs.
///
/// For every positive root `xi` of height at least two the extraspecial pair
/// `(a, xi - a)` uses the smallest simple root `a` that fits and gets
/// `N = p + 1`. The remaining positive pairs follow from the four-root
/// relation, and pairs involving negative roots from the three-root and
/// negation relations.
pub fn chevalley_constants(rs: &RootSystemData) -> Result<ChevalleyTable> {
    let mut positive: Vec<usize> = rs.positive_roots.clone();
    positive.sort_by_key(|&r| (rs.height(r), rs.coefficients[r].clone()));
    let order: HashMap<usize, usize> = positive.iter().enumerate().map(|(i, &r)| (r, i)).collect();

    // table of N_{a,b} for positive a, b; filled height by height
    let mut table: ChevalleyTable = HashMap::new();
    for &xi in &positive {
        if rs.height(xi) < 2 {
            continue;
        }
        let mut pairs: Vec<(usize, usize)> = positive
            .iter()
            .filter_map(|&a| rs.difference(xi, a).filter(|&b| rs.is_positive(b)).map(|b| (a, b)))
            .filter(|&(a, b)| order[&a] < order[&b])
            .collect();
        pairs.sort_by_key(|&(a, _)| order[&a]);
        let (ea, eb) = pairs[0];
        let n_extra = Rational64::from_integer((rs.string_depth(ea, eb) + 1) as i64);
        table.insert((ea, eb), n_extra);
        table.insert((eb, ea), -n_extra);
        for &(a, b) in &pairs[1..] {
            let xi_len = rs.length_squared(xi);
            let neg_ea = rs.negative(ea);
            let neg_eb = rs.negative(eb);
            let mut acc = Rational64::zero();
            if let Some(d) = rs.difference(b, ea) {
                let t = general(rs, &table, b, neg_ea)? * general(rs, &table, a, neg_eb)?;
                acc += t / rs.length_squared(d);
            }
            if let Some(d) = rs.difference(a, ea) {
                let t = general(rs, &table, neg_ea, a)? * general(rs, &table, b, neg_eb)?;
                acc += t / rs.length_squared(d);
            }
            let n = xi_len / n_extra * acc;
            let expect = (rs.string_depth(a, b) + 1) as i64;
            if n.abs() != Rational64::from_integer(expect) {
                return Err(Error::ConstructionFailure(format!(
                    "N({}, {}) = {} but expected magnitude {}",
                    rs.label(a),
                    rs.label(b),
                    n,
                    expect
                )));
            }
            table.insert((a, b), n);
            table.insert((b, a), -n);
        }
    }

    let mut full = ChevalleyTable::new();
    for a in 0..rs.len() {
        for b in 0..rs.len() {
            if rs.sum(a, b).is_some() {
                full.insert((a, b), general(rs, &table, a, b)?);
            }
        }
    }
    Ok(full)
}

/// `N_{a,b}` for arbitrary roots, reduced to the positive table.
fn general(rs: &RootSystemData, table: &ChevalleyTable, a: usize, b: usize) -> Result<Rational64> {
    let Some(c) = rs.sum(a, b) else {
        return Ok(Rational64::zero());
    };
    let lookup = |x: usize, y: usize| {
        table.get(&(x, y)).copied().ok_or_else(|| {
            Error::ConstructionFailure(format!(
                "missing constant N({}, {})",
                rs.label(x),
                rs.label(y)
            ))
        })
    };
    match (rs.is_positive(a), rs.is_positive(b)) {
        (true, true) => lookup(a, b),
        (false, false) => Ok(-lookup(rs.negative(a), rs.negative(b))?),
        (true, false) => {
            let cc = rs.length_squared(c);
            if rs.is_positive(c) {
                Ok(-cc / rs.length_squared(a) * lookup(rs.negative(b), c)?)
            } else {
                Ok(cc / rs.length_squared(b) * lookup(rs.negative(c), a)?)
            }
        }
        (false, true) => Ok(-general(rs, table, b, a)?),
    }
}

/// Builds the algebra, computing structure constants from scratch.
pub fn build_simple_lie_algebra(rs: RootSystemData) -> Result<SimpleLieAlgebra> {
    let table = chevalley_constants(&rs)?;
    SimpleLieAlgebra::from_chevalley(rs, table)
}

impl SimpleLieAlgebra {
    /// Assembles the algebra from a Chevalley table and checks the Jacobi
    /// identity on every basis triple.
    pub fn from_chevalley(rs: RootSystemData, chevalley: ChevalleyTable) -> Result<Self> {
        let rank = rs.rank();
        let dim = rank + rs.len();
        // e_a = c_a E_a with c_a = 1 for positive a and (a,a)/2 otherwise
        let scale = |r: usize| {
            if rs.is_positive(r) {
                Rational64::from_integer(1)
            } else {
                rs.length_squared(r) / Rational64::from_integer(2)
            }
        };
        let mut root_brackets = HashMap::new();
        for (&(a, b), &n) in &chevalley {
            let c = rs.sum(a, b).expect("table keys are root pairs");
            root_brackets.insert((a, b), scale(a) * scale(b) / scale(c) * n);
        }

        let mut brackets = vec![vec![Vec::new(); dim]; dim];
        for r in 0..rs.len() {
            let e = rank + r;
            for i in 0..rank {
                let w = rs.roots[r][i];
                if w != 0.0 {
                    brackets[i][e].push((e, w));
                    brackets[e][i].push((e, -w));
                }
            }
            let neg = rank + rs.negative(r);
            for i in 0..rank {
                let w = rs.roots[r][i];
                if w != 0.0 {
                    brackets[e][neg].push((i, w));
                }
            }
        }
        for (&(a, b), &n) in &root_brackets {
            let c = rs.sum(a, b).expect("table keys are root pairs");
            brackets[rank + a][rank + b].push((rank + c, rat_f64(n)));
        }

        let algebra = SimpleLieAlgebra {
            root_system: rs,
            dim,
            chevalley,
            root_brackets,
            brackets,
        };
        let jacobi = algebra.jacobi_residual();
        if jacobi > 1e-12 {
            return Err(Error::ConstructionFailure(format!(
                "Jacobi identity violated by {jacobi:e}"
            )));
        }
        Ok(algebra)
    }

    pub fn lie_type(&self) -> LieType {
        self.root_system.lie_type
    }

    pub fn id(&self) -> String {
        self.lie_type().to_string()
    }

    pub fn rank(&self) -> usize {
        self.root_system.rank()
    }

    pub fn n_roots(&self) -> usize {
        self.root_system.len()
    }

    pub fn chevalley_table(&self) -> &ChevalleyTable {
        &self.chevalley
    }

    /// Exact `[e_a, e_b]` coefficient on `e_{a+b}` in the dual-root-vector basis.
    pub fn root_bracket_exact(&self, a: usize, b: usize) -> Option<Rational64> {
        self.root_brackets.get(&(a, b)).copied()
    }

    /// Basis index of the root vector `e_r`.
    pub fn root_basis(&self, r: usize) -> usize {
        self.rank() + r
    }

    /// Root index of a basis element, or `None` for Cartan elements.
    pub fn basis_root(&self, b: usize) -> Option<usize> {
        b.checked_sub(self.rank())
    }

    /// Index of the basis element dual to `b` under the invariant form.
    pub fn dual(&self, b: usize) -> usize {
        match self.basis_root(b) {
            None => b,
            Some(r) => self.root_basis(self.root_system.negative(r)),
        }
    }

    /// Invariant form on basis elements.
    pub fn form(&self, a: usize, b: usize) -> f64 {
        if self.dual(a) == b {
            1.0
        } else {
            0.0
        }
    }

    /// `[b_i, b_j]` as a sparse list of `(basis index, coefficient)`.
    pub fn bracket(&self, i: usize, j: usize) -> &[(usize, f64)] {
        &self.brackets[i][j]
    }

    /// Bracket of two dense vectors.
    pub fn bracket_vec(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.dim];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0.0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                if yj == 0.0 {
                    continue;
                }
                for &(k, c) in self.bracket(i, j) {
                    out[k] += xi * yj * c;
                }
            }
        }
        out
    }

    pub fn basis_label(&self, b: usize) -> String {
        match self.basis_root(b) {
            None => format!("x{}", b + 1),
            Some(r) => format!("e[{}]", self.root_system.label(r)),
        }
    }

    /// Largest Jacobi-identity defect over all basis triples.
    pub fn jacobi_residual(&self) -> f64 {
        let n = self.dim;
        let mut worst: f64 = 0.0;
        let mut acc = vec![0.0; n];
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    acc.iter_mut().for_each(|v| *v = 0.0);
                    // [a,[b,c]] + [b,[c,a]] + [c,[a,b]]
                    for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
                        for &(k, s) in self.bracket(y, z) {
                            for &(m, t) in self.bracket(x, k) {
                                acc[m] += s * t;
                            }
                        }
                    }
                    worst = acc.iter().fold(worst, |w, v| w.max(v.abs()));
                }
            }
        }
        worst
    }

    /// Largest `|B([a,b],c) - B(a,[b,c])|` over basis triples.
    pub fn invariance_residual(&self) -> f64 {
        let n = self.dim;
        let mut worst: f64 = 0.0;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let left: f64 = self
                        .bracket(a, b)
                        .iter()
                        .map(|&(k, s)| s * self.form(k, c))
                        .sum();
                    let right: f64 = self
                        .bracket(b, c)
                        .iter()
                        .map(|&(k, s)| s * self.form(a, k))
                        .sum();
                    worst = worst.max((left - right).abs());
                }
            }
        }
        worst
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::roots::{build_root_system, Series};

    fn algebra(s: Series, r: usize) -> SimpleLieAlgebra {
        build_simple_lie_algebra(build_root_system(s, r).unwrap()).unwrap()
    }

    #[test]
    fn sl2_relations() {
        let g = algebra(Series::A, 1);
        assert_eq!(g.dim, 3);
        let rs = &g.root_system;
        let alpha = rs.positive_roots[0];
        let e = g.root_basis(alpha);
        let f = g.root_basis(rs.negative(alpha));
        assert_eq!(g.form(e, f), 1.0);
        // [e,f] = h_alpha = sqrt(2) x_1
        let ef = g.bracket(e, f);
        assert_eq!(ef.len(), 1);
        assert_eq!(ef[0].0, 0);
        assert!((ef[0].1 - 2f64.sqrt()).abs() < 1e-15);
        // [h_alpha, e] = 2 e
        let he = g.bracket(0, e);
        assert!((he[0].1 * 2f64.sqrt() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn dimensions() {
        for (s, r, d) in [
            (Series::A, 2, 8),
            (Series::B, 2, 10),
            (Series::G, 2, 14),
            (Series::C, 3, 21),
            (Series::D, 4, 28),
        ] {
            let g = algebra(s, r);
            assert_eq!(g.dim, d);
            assert_eq!(g.dim, g.rank() + g.n_roots());
        }
    }

    #[test]
    fn jacobi_and_invariance_through_rank_four() {
        let cases = [
            (Series::A, 1),
            (Series::A, 2),
            (Series::A, 3),
            (Series::A, 4),
            (Series::B, 2),
            (Series::B, 3),
            (Series::B, 4),
            (Series::C, 3),
            (Series::C, 4),
            (Series::D, 4),
            (Series::G, 2),
        ];
        for (s, r) in cases {
            let g = algebra(s, r);
            assert!(g.jacobi_residual() <= 1e-13, "{s}{r} jacobi");
            assert!(g.invariance_residual() <= 1e-13, "{s}{r} invariance");
        }
    }

    #[test]
    fn coroot_is_form_dual_of_root() {
        for (s, r) in [(Series::B, 3), (Series::G, 2)] {
            let g = algebra(s, r);
            let rs = &g.root_system;
            for a in 0..rs.len() {
                let bracket = g.bracket(g.root_basis(a), g.root_basis(rs.negative(a)));
                let mut h = vec![0.0; g.rank()];
                for &(k, c) in bracket {
                    assert!(k < g.rank());
                    h[k] += c;
                }
                for (i, hi) in h.iter().enumerate() {
                    assert!((hi - rs.roots[a][i]).abs() <= 1e-13);
                }
            }
        }
    }

    #[test]
    fn chevalley_magnitudes_are_string_lengths() {
        let g = algebra(Series::G, 2);
        let rs = &g.root_system;
        for (&(a, b), n) in g.chevalley_table() {
            let p = rs.string_depth(a, b);
            assert_eq!(n.abs(), Rational64::from_integer((p + 1) as i64));
        }
    }
}
