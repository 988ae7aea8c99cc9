//! Root systems of the finite-type simple Lie algebras.
//!
//! Roots are stored twice: as integer coefficient vectors against the simple
//! roots and as real vectors in an orthonormal basis of the Cartan
//! subalgebra. The invariant form is normalized so that long roots have
//! squared length 2.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Series {
    A,
    B,
    C,
    D,
    G,
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Series::A => 'A',
            Series::B => 'B',
            Series::C => 'C',
            Series::D => 'D',
            Series::G => 'G',
        };
        write!(f, "{c}")
    }
}

/// A (series, rank) pair such as `B2`, parsed from strings like `"B2"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LieType {
    pub series: Series,
    pub rank: usize,
}

impl LieType {
    pub fn new(series: Series, rank: usize) -> Result<Self> {
        let ok = match series {
            Series::A => rank >= 1,
            Series::B | Series::C => rank >= 2,
            Series::D => rank >= 3,
            Series::G => rank == 2,
        };
        if ok {
            Ok(LieType { series, rank })
        } else {
            Err(Error::UnsupportedType {
                series: series.to_string(),
                rank,
            })
        }
    }
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.series, self.rank)
    }
}

impl FromStr for LieType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let unsupported = || Error::UnsupportedType {
            series: s.chars().next().map(String::from).unwrap_or_default(),
            rank: 0,
        };
        let mut chars = s.chars();
        let letter = chars.next().ok_or_else(unsupported)?;
        let series = match letter.to_ascii_uppercase() {
            'A' => Series::A,
            'B' => Series::B,
            'C' => Series::C,
            'D' => Series::D,
            'G' => Series::G,
            _ => {
                return Err(Error::UnsupportedType {
                    series: letter.to_string(),
                    rank: chars.as_str().parse().unwrap_or(0),
                })
            }
        };
        let rank: usize = chars.as_str().parse().map_err(|_| unsupported())?;
        LieType::new(series, rank)
    }
}

impl Serialize for LieType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for LieType {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Cartan data and the full root list of a finite-type simple Lie algebra.
///
/// Roots are ordered lexicographically by their simple-root coefficient
/// vectors, so negative roots come first.
#[derive(Debug, Clone)]
pub struct RootSystemData {
    pub lie_type: LieType,
    pub roots: Vec<Vec<f64>>,
    pub coefficients: Vec<Vec<i32>>,
    pub simple_roots: Vec<usize>,
    pub positive_roots: Vec<usize>,
    pub cartan_matrix: Vec<Vec<i32>>,
    /// Gram matrix of the simple roots under the normalized form.
    pub simple_gram: Vec<Vec<Rational64>>,
    index: HashMap<Vec<i32>, usize>,
    negation: Vec<usize>,
}

/// Builds the root system of the given type.
pub fn build_root_system(series: Series, rank: usize) -> Result<RootSystemData> {
    let lie_type = LieType::new(series, rank)?;
    let gram = simple_gram(lie_type);
    let n = rank;
    let cartan: Vec<Vec<i32>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let a = Rational64::from_integer(2) * gram[i][j] / gram[j][j];
                    debug_assert!(a.is_integer());
                    *a.numer() as i32
                })
                .collect()
        })
        .collect();
    let simple_coords = simple_root_coordinates(lie_type, &gram);

    let positive = positive_root_coefficients(&cartan);
    let mut coefficients: Vec<Vec<i32>> = positive
        .iter()
        .map(|c| c.iter().map(|k| -k).collect())
        .chain(positive.iter().cloned())
        .collect();
    coefficients.sort();

    let roots: Vec<Vec<f64>> = coefficients
        .iter()
        .map(|c| {
            (0..n)
                .map(|axis| {
                    c.iter()
                        .zip(&simple_coords)
                        .map(|(&k, s)| k as f64 * s[axis])
                        .sum()
                })
                .collect()
        })
        .collect();

    let index: HashMap<Vec<i32>, usize> = coefficients
        .iter()
        .enumerate()
        .map(|(i, c)| (c.clone(), i))
        .collect();
    let negation = coefficients
        .iter()
        .map(|c| index[&c.iter().map(|k| -k).collect::<Vec<_>>()])
        .collect();
    let simple_roots = (0..n)
        .map(|i| {
            let mut unit = vec![0; n];
            unit[i] = 1;
            index[&unit]
        })
        .collect();
    let positive_roots = coefficients
        .iter()
        .enumerate()
        .filter(|(_, c)| c.iter().all(|&k| k >= 0))
        .map(|(i, _)| i)
        .collect();

    Ok(RootSystemData {
        lie_type,
        roots,
        coefficients,
        simple_roots,
        positive_roots,
        cartan_matrix: cartan,
        simple_gram: gram,
        index,
        negation,
    })
}

/// Gram matrix of simple roots in Bourbaki numbering, long roots of length^2 2.
fn simple_gram(t: LieType) -> Vec<Vec<Rational64>> {
    let n = t.rank;
    let r = |a: i64, b: i64| Rational64::new(a, b);
    let mut g = vec![vec![r(0, 1); n]; n];
    match t.series {
        Series::A | Series::D => {
            for i in 0..n {
                g[i][i] = r(2, 1);
                if i + 1 < n {
                    g[i][i + 1] = r(-1, 1);
                    g[i + 1][i] = r(-1, 1);
                }
            }
            if t.series == Series::D {
                // the last node hangs off n-2 instead of n-1
                g[n - 2][n - 1] = r(0, 1);
                g[n - 1][n - 2] = r(0, 1);
                g[n - 3][n - 1] = r(-1, 1);
                g[n - 1][n - 3] = r(-1, 1);
            }
        }
        Series::B => {
            for i in 0..n {
                g[i][i] = if i + 1 == n { r(1, 1) } else { r(2, 1) };
                if i + 1 < n {
                    g[i][i + 1] = r(-1, 1);
                    g[i + 1][i] = r(-1, 1);
                }
            }
        }
        Series::C => {
            for i in 0..n {
                g[i][i] = if i + 1 == n { r(2, 1) } else { r(1, 1) };
                if i + 1 < n {
                    let off = if i + 2 == n { r(-1, 1) } else { r(-1, 2) };
                    g[i][i + 1] = off;
                    g[i + 1][i] = off;
                }
            }
        }
        Series::G => {
            g[0][0] = r(2, 3);
            g[1][1] = r(2, 1);
            g[0][1] = r(-1, 1);
            g[1][0] = r(-1, 1);
        }
    }
    g
}

/// Simple roots in orthonormal coordinates. B and D use the usual
/// epsilon-basis, C its rescaling; A and G use the Cholesky factor of the
/// Gram matrix.
fn simple_root_coordinates(t: LieType, gram: &[Vec<Rational64>]) -> Vec<Vec<f64>> {
    let n = t.rank;
    let unit = |i: usize| {
        let mut v = vec![0.0; n];
        v[i] = 1.0;
        v
    };
    let diff = |i: usize, j: usize, scale: f64| {
        let mut v = vec![0.0; n];
        v[i] = scale;
        v[j] = -scale;
        v
    };
    match t.series {
        Series::B => (0..n)
            .map(|i| if i + 1 < n { diff(i, i + 1, 1.0) } else { unit(i) })
            .collect(),
        Series::C => {
            let s = std::f64::consts::FRAC_1_SQRT_2;
            (0..n)
                .map(|i| {
                    if i + 1 < n {
                        diff(i, i + 1, s)
                    } else {
                        let mut v = unit(i);
                        v[i] = std::f64::consts::SQRT_2;
                        v
                    }
                })
                .collect()
        }
        Series::D => (0..n)
            .map(|i| {
                if i + 1 < n {
                    diff(i, i + 1, 1.0)
                } else {
                    let mut v = vec![0.0; n];
                    v[n - 2] = 1.0;
                    v[n - 1] = 1.0;
                    v
                }
            })
            .collect(),
        Series::A | Series::G => {
            let m = DMatrix::from_fn(n, n, |i, j| {
                *gram[i][j].numer() as f64 / *gram[i][j].denom() as f64
            });
            let l = m
                .cholesky()
                .expect("Gram matrix of simple roots is positive definite")
                .unpack();
            (0..n).map(|i| (0..n).map(|j| l[(i, j)]).collect()).collect()
        }
    }
}

/// Positive roots as coefficient vectors, grown by simple-root strings.
fn positive_root_coefficients(cartan: &[Vec<i32>]) -> Vec<Vec<i32>> {
    let n = cartan.len();
    let mut roots: Vec<Vec<i32>> = (0..n)
        .map(|i| {
            let mut v = vec![0; n];
            v[i] = 1;
            v
        })
        .collect();
    let mut frontier = roots.clone();
    while !frontier.is_empty() {
        let mut next: Vec<Vec<i32>> = Vec::new();
        for beta in &frontier {
            for i in 0..n {
                // p = how far down the alpha_i string through beta goes
                let mut p = 0;
                loop {
                    let mut down = beta.clone();
                    down[i] -= p + 1;
                    if down.iter().all(|&k| k >= 0) && roots.contains(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let pairing: i32 = (0..n).map(|j| beta[j] * cartan[j][i]).sum();
                if p - pairing > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if !roots.contains(&up) && !next.contains(&up) {
                        next.push(up);
                    }
                }
            }
        }
        roots.extend(next.iter().cloned());
        frontier = next;
    }
    roots
}

impl RootSystemData {
    pub fn rank(&self) -> usize {
        self.lie_type.rank
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn root(&self, i: usize) -> &[f64] {
        &self.roots[i]
    }

    pub fn negative(&self, i: usize) -> usize {
        self.negation[i]
    }

    pub fn is_positive(&self, i: usize) -> bool {
        self.coefficients[i].iter().all(|&k| k >= 0)
    }

    pub fn height(&self, i: usize) -> i32 {
        self.coefficients[i].iter().sum()
    }

    /// Index of the root with the given simple-root coefficients.
    pub fn index_of(&self, coefficients: &[i32]) -> Option<usize> {
        self.index.get(coefficients).copied()
    }

    /// Index of the root with the given orthonormal coordinates, if any.
    pub fn find_root(&self, coords: &[f64]) -> Option<usize> {
        self.roots.iter().position(|r| {
            r.len() == coords.len() && r.iter().zip(coords).all(|(a, b)| (a - b).abs() < 1e-9)
        })
    }

    /// Index of `alpha + beta` when it is a root.
    pub fn sum(&self, alpha: usize, beta: usize) -> Option<usize> {
        let c: Vec<i32> = self.coefficients[alpha]
            .iter()
            .zip(&self.coefficients[beta])
            .map(|(a, b)| a + b)
            .collect();
        self.index_of(&c)
    }

    /// Index of `alpha - beta` when it is a root.
    pub fn difference(&self, alpha: usize, beta: usize) -> Option<usize> {
        self.sum(alpha, self.negative(beta))
    }

    /// Exact inner product of two roots under the normalized form.
    pub fn inner_exact(&self, alpha: usize, beta: usize) -> Rational64 {
        let a = &self.coefficients[alpha];
        let b = &self.coefficients[beta];
        let mut acc = Rational64::from_integer(0);
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                if bj != 0 {
                    acc += self.simple_gram[i][j] * Rational64::from_integer((ai * bj) as i64);
                }
            }
        }
        acc
    }

    pub fn inner(&self, alpha: usize, beta: usize) -> f64 {
        let r = self.inner_exact(alpha, beta);
        *r.numer() as f64 / *r.denom() as f64
    }

    pub fn length_squared(&self, alpha: usize) -> Rational64 {
        self.inner_exact(alpha, alpha)
    }

    /// Largest `p` with `beta - p*alpha` a root (the lower end of the string).
    pub fn string_depth(&self, alpha: usize, beta: usize) -> i32 {
        let mut p = 0;
        let mut cur = beta;
        while let Some(next) = self.difference(cur, alpha) {
            p += 1;
            cur = next;
        }
        p
    }

    /// Fundamental weights dual to the simple coroots, in orthonormal coordinates.
    pub fn fundamental_weights(&self) -> Vec<Vec<f64>> {
        let n = self.rank();
        let s = DMatrix::from_fn(n, n, |i, j| self.roots[self.simple_roots[i]][j]);
        let inv = s
            .try_inverse()
            .expect("simple roots form a basis of the Cartan dual");
        (0..n)
            .map(|i| {
                let half_len = self.inner(self.simple_roots[i], self.simple_roots[i]) / 2.0;
                (0..n).map(|axis| inv[(axis, i)] * half_len).collect()
            })
            .collect()
    }

    /// Short human label such as `a1+a2` or `-a2`.
    pub fn label(&self, i: usize) -> String {
        let c = &self.coefficients[i];
        let sign = if self.is_positive(i) { "" } else { "-" };
        let parts: Vec<String> = c
            .iter()
            .enumerate()
            .filter(|(_, &k)| k != 0)
            .map(|(j, &k)| {
                let k = k.abs();
                if k == 1 {
                    format!("a{}", j + 1)
                } else {
                    format!("{}a{}", k, j + 1)
                }
            })
            .collect();
        if sign.is_empty() {
            parts.join("+")
        } else {
            format!("-({})", parts.join("+"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a1_has_two_roots() {
        let rs = build_root_system(Series::A, 1).unwrap();
        assert_eq!(rs.len(), 2);
        assert_eq!(rs.positive_roots.len(), 1);
        assert!((rs.inner(0, 0) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn b2_roots_in_standard_coordinates() {
        let rs = build_root_system(Series::B, 2).unwrap();
        assert_eq!(rs.len(), 8);
        for v in [
            [1.0, 0.0],
            [-1.0, 0.0],
            [0.0, 1.0],
            [0.0, -1.0],
            [1.0, 1.0],
            [1.0, -1.0],
            [-1.0, 1.0],
            [-1.0, -1.0],
        ] {
            assert!(rs.find_root(&v).is_some(), "missing {v:?}");
        }
    }

    #[test]
    fn root_counts_match_tables() {
        let cases = [
            (Series::A, 2, 6),
            (Series::A, 4, 20),
            (Series::B, 3, 18),
            (Series::C, 3, 18),
            (Series::D, 4, 24),
            (Series::G, 2, 12),
        ];
        for (s, r, n) in cases {
            let rs = build_root_system(s, r).unwrap();
            assert_eq!(rs.len(), n, "{s}{r}");
            assert_eq!(rs.positive_roots.len() * 2, n);
        }
    }

    #[test]
    fn cartan_matrices_match_standard_tables() {
        let g2 = build_root_system(Series::G, 2).unwrap();
        assert_eq!(g2.cartan_matrix, vec![vec![2, -1], vec![-3, 2]]);
        let b3 = build_root_system(Series::B, 3).unwrap();
        assert_eq!(
            b3.cartan_matrix,
            vec![vec![2, -1, 0], vec![-1, 2, -2], vec![0, -1, 2]]
        );
        let c3 = build_root_system(Series::C, 3).unwrap();
        assert_eq!(
            c3.cartan_matrix,
            vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -2, 2]]
        );
        let d4 = build_root_system(Series::D, 4).unwrap();
        assert_eq!(d4.cartan_matrix[1], vec![-1, 2, -1, -1]);
    }

    #[test]
    fn coordinates_reproduce_the_gram_matrix() {
        for (s, r) in [(Series::A, 3), (Series::C, 3), (Series::G, 2), (Series::D, 4)] {
            let rs = build_root_system(s, r).unwrap();
            for a in 0..rs.len() {
                for b in 0..rs.len() {
                    let dot: f64 = rs.roots[a].iter().zip(&rs.roots[b]).map(|(x, y)| x * y).sum();
                    assert!((dot - rs.inner(a, b)).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn g2_matches_brute_force_lattice_enumeration() {
        // vectors of the root lattice with squared length 2/3 or 2 are the roots
        let rs = build_root_system(Series::G, 2).unwrap();
        let mut found = Vec::new();
        for a in -4..=4 {
            for b in -4..=4 {
                let len = rs.simple_gram[0][0] * Rational64::from_integer(a * a)
                    + rs.simple_gram[1][1] * Rational64::from_integer(b * b)
                    + rs.simple_gram[0][1] * Rational64::from_integer(2 * a * b);
                if len == Rational64::new(2, 3) || len == Rational64::from_integer(2) {
                    found.push(vec![a as i32, b as i32]);
                }
            }
        }
        found.sort();
        assert_eq!(found, rs.coefficients);
        assert_eq!(rs.positive_roots.len(), 6);
    }

    #[test]
    fn lexicographic_order_and_sign_structure() {
        let rs = build_root_system(Series::A, 2).unwrap();
        let mut sorted = rs.coefficients.clone();
        sorted.sort();
        assert_eq!(sorted, rs.coefficients);
        for i in 0..rs.len() {
            let c = &rs.coefficients[i];
            assert!(c.iter().all(|&k| k >= 0) || c.iter().all(|&k| k <= 0));
            assert_eq!(rs.negative(rs.negative(i)), i);
        }
    }

    #[test]
    fn fundamental_weights_are_dual_to_coroots() {
        let rs = build_root_system(Series::B, 3).unwrap();
        let w = rs.fundamental_weights();
        for (i, wi) in w.iter().enumerate() {
            for (j, &s) in rs.simple_roots.iter().enumerate() {
                let a = rs.root(s);
                let dot: f64 = wi.iter().zip(a).map(|(x, y)| x * y).sum();
                let expect = if i == j { rs.inner(s, s) / 2.0 } else { 0.0 };
                assert!((dot - expect).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn invalid_types_are_rejected() {
        assert!("Z9".parse::<LieType>().is_err());
        assert!("G3".parse::<LieType>().is_err());
        assert!("A0".parse::<LieType>().is_err());
        assert_eq!("b2".parse::<LieType>().unwrap().to_string(), "B2");
    }
}
