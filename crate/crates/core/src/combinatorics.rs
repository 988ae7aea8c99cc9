//! Root-subset utilities: closed subsets, span closure, positive systems and
//! the polarization finder.

use std::collections::{BTreeSet, VecDeque};

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, PolarizationProperty, Result};
use crate::lie::RootSystemData;

/// A set of roots, kept as a sorted index list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RootSubset {
    pub members: Vec<usize>,
}

impl RootSubset {
    pub fn new(mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        RootSubset { members }
    }

    pub fn contains(&self, r: usize) -> bool {
        self.members.binary_search(&r).is_ok()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

fn mask(rs: &RootSystemData, x: &[usize]) -> Vec<bool> {
    let mut m = vec![false; rs.len()];
    for &r in x {
        m[r] = true;
    }
    m
}

/// Closed under addition (whenever the sum is a root).
pub fn is_additively_closed(rs: &RootSystemData, x: &[usize]) -> bool {
    let m = mask(rs, x);
    x.iter()
        .all(|&a| x.iter().all(|&b| rs.sum(a, b).is_none_or(|c| m[c])))
}

/// Closed under negation and under addition whenever the sum is a root.
pub fn is_closed_subset(rs: &RootSystemData, x: &[usize]) -> bool {
    let m = mask(rs, x);
    x.iter().all(|&a| m[rs.negative(a)]) && is_additively_closed(rs, x)
}

/// Smallest additively closed set containing `x`.
pub fn additive_closure(rs: &RootSystemData, x: &[usize]) -> RootSubset {
    let mut m = mask(rs, x);
    let mut members: Vec<usize> = x.to_vec();
    members.sort_unstable();
    members.dedup();
    let mut queue: VecDeque<usize> = members.iter().copied().collect();
    while let Some(a) = queue.pop_front() {
        let snapshot = members.clone();
        for b in snapshot {
            for c in [rs.sum(a, b), rs.sum(b, a)].into_iter().flatten() {
                if !m[c] {
                    m[c] = true;
                    members.push(c);
                    queue.push_back(c);
                }
            }
        }
    }
    RootSubset::new(members)
}

/// All closed subsets, ordered by the bitmask over positive-root pairs.
pub fn enumerate_closed_subsets(rs: &RootSystemData) -> Result<Vec<RootSubset>> {
    if rs.rank() > 4 {
        return Err(Error::TooLarge(rs.rank()));
    }
    let pos = &rs.positive_roots;
    let n = pos.len();
    let found: Vec<Option<RootSubset>> = (0u64..(1u64 << n))
        .into_par_iter()
        .map(|bits| {
            let mut x = Vec::new();
            for (i, &p) in pos.iter().enumerate() {
                if bits >> i & 1 == 1 {
                    x.push(p);
                    x.push(rs.negative(p));
                }
            }
            is_additively_closed(rs, &x).then(|| RootSubset::new(x))
        })
        .collect();
    Ok(found.into_iter().flatten().collect())
}

/// Positive roots in the nonnegative integer span of `x` (a set of simple
/// roots of some positive system).
pub fn span_closure(rs: &RootSystemData, x_simple: &[usize]) -> RootSubset {
    additive_closure(rs, x_simple)
}

/// Roots of `positive` that are not sums of two roots of `positive`.
pub fn simple_roots_of(rs: &RootSystemData, positive: &[usize]) -> Vec<usize> {
    let m = mask(rs, positive);
    let mut out: Vec<usize> = positive
        .iter()
        .copied()
        .filter(|&g| {
            !positive
                .iter()
                .any(|&a| rs.difference(g, a).is_some_and(|b| m[b]))
        })
        .collect();
    out.sort_unstable();
    out
}

/// Exactly one root of every `±α` pair, closed under addition.
pub fn is_positive_system(rs: &RootSystemData, positive: &[usize]) -> bool {
    let m = mask(rs, positive);
    let distinct: BTreeSet<usize> = positive.iter().copied().collect();
    distinct.len() == rs.len() / 2
        && (0..rs.len()).all(|a| m[a] != m[rs.negative(a)])
        && is_additively_closed(rs, positive)
}

fn dotr(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Positive system `{α : (α, v) > 0}` of a regular vector `v`.
pub fn positive_system_of(rs: &RootSystemData, v: &[f64]) -> Vec<usize> {
    (0..rs.len()).filter(|&a| dotr(&rs.roots[a], v) > 0.0).collect()
}

/// Smallest `|(α, v)|` over all roots; zero means `v` is singular.
pub fn regularity(rs: &RootSystemData, v: &[f64]) -> f64 {
    rs.roots
        .iter()
        .map(|a| dotr(a, v).abs())
        .fold(f64::INFINITY, f64::min)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Polarization {
    /// Unit regular vector inducing the positive system.
    pub v: Vec<f64>,
    pub positive: Vec<usize>,
    /// `min_{α∈Y} (α, v)`.
    pub margin: f64,
}

pub fn check_polarization_input(rs: &RootSystemData, y: &[usize]) -> Result<()> {
    let m = mask(rs, y);
    if y.iter().any(|&a| m[rs.negative(a)]) {
        return Err(Error::PropertyViolated(PolarizationProperty::B));
    }
    if !is_additively_closed(rs, y) {
        return Err(Error::PropertyViolated(PolarizationProperty::A));
    }
    Ok(())
}

const PERCEPTRON_BUDGET: usize = 10_000;

/// A positive system containing `y`, for `y` with properties A and B.
///
/// Runs a perceptron iteration from `Σ_{α∈Y} α`, nudges the result off all
/// root hyperplanes, and falls back to scanning Weyl chambers.
pub fn find_polarization(rs: &RootSystemData, y: &[usize]) -> Result<Polarization> {
    check_polarization_input(rs, y)?;
    let n = rs.rank();
    let mut v = vec![0.0; n];
    for &a in y {
        for (vi, ai) in v.iter_mut().zip(&rs.roots[a]) {
            *vi += ai;
        }
    }
    let mut separated = y.is_empty();
    for _ in 0..PERCEPTRON_BUDGET {
        match y.iter().find(|&&a| dotr(&rs.roots[a], &v) <= 1e-12) {
            Some(&a) => {
                for (vi, ai) in v.iter_mut().zip(&rs.roots[a]) {
                    *vi += ai;
                }
            }
            None => {
                separated = true;
                break;
            }
        }
    }
    if separated {
        if let Some(p) = regularize(rs, y, &v) {
            return Ok(p);
        }
    }
    for w in weyl_chamber_vectors(rs)? {
        if y.iter().all(|&a| dotr(&rs.roots[a], &w) > 0.0) {
            return Ok(polarization_from(rs, y, w));
        }
    }
    Err(Error::SearchExhausted)
}

fn polarization_from(rs: &RootSystemData, y: &[usize], v: Vec<f64>) -> Polarization {
    let len = dotr(&v, &v).sqrt();
    let v: Vec<f64> = v.iter().map(|x| x / len).collect();
    let margin = y
        .iter()
        .map(|&a| dotr(&rs.roots[a], &v))
        .fold(f64::INFINITY, f64::min);
    Polarization {
        positive: positive_system_of(rs, &v),
        margin: if y.is_empty() { regularity(rs, &v) } else { margin },
        v,
    }
}

/// Adds a small generic perturbation keeping `Y` strictly positive.
fn regularize(rs: &RootSystemData, y: &[usize], v: &[f64]) -> Option<Polarization> {
    let n = rs.rank();
    let generic: Vec<f64> = (0..n).map(|i| 1.0 / (std::f64::consts::PI + i as f64).powi(i as i32 + 1)).collect();
    let slack = y
        .iter()
        .map(|&a| dotr(&rs.roots[a], v))
        .fold(f64::INFINITY, f64::min);
    let slack = if slack.is_finite() { slack } else { 1.0 };
    let reach = rs
        .roots
        .iter()
        .map(|a| dotr(a, &generic).abs())
        .fold(0.0, f64::max);
    let mut delta = 0.5 * slack / reach.max(1e-300);
    for _ in 0..60 {
        let w: Vec<f64> = v.iter().zip(&generic).map(|(a, g)| a + delta * g).collect();
        let len = dotr(&w, &w).sqrt();
        if regularity(rs, &w) > 1e-9 * len && y.iter().all(|&a| dotr(&rs.roots[a], &w) > 0.0) {
            return Some(polarization_from(rs, y, w));
        }
        delta *= 0.5;
    }
    None
}

/// One regular vector per Weyl chamber (the Weyl orbit of the sum of
/// fundamental coweights), rank at most 4.
pub fn weyl_chamber_vectors(rs: &RootSystemData) -> Result<Vec<Vec<f64>>> {
    if rs.rank() > 4 {
        return Err(Error::TooLarge(rs.rank()));
    }
    let n = rs.rank();
    let weights = rs.fundamental_weights();
    let start: Vec<f64> = (0..n).map(|k| weights.iter().map(|w| w[k]).sum()).collect();
    let key = |v: &[f64]| v.iter().map(|x| (x * 1e9).round() as i64).collect::<Vec<_>>();
    let mut seen = BTreeSet::new();
    seen.insert(key(&start));
    let mut out = vec![start.clone()];
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for &s in &rs.simple_roots {
            let a = &rs.roots[s];
            let f = 2.0 * dotr(a, &v) / dotr(a, a);
            let w: Vec<f64> = v.iter().zip(a).map(|(x, y)| x - f * y).collect();
            if seen.insert(key(&w)) {
                out.push(w.clone());
                queue.push_back(w);
            }
        }
    }
    Ok(out)
}

/// A random subset with properties A and B: the additive closure of a random
/// part of a random positive system.
pub fn random_valid_subset<R: Rng>(rs: &RootSystemData, rng: &mut R) -> RootSubset {
    let n = rs.rank();
    let v = loop {
        let v: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
        if regularity(rs, &v) > 1e-6 {
            break v;
        }
    };
    let positive = positive_system_of(rs, &v);
    let pick: Vec<usize> = positive.into_iter().filter(|_| rng.random_bool(0.4)).collect();
    additive_closure(rs, &pick)
}
