//! Root systems, Chevalley bases and the Cartan-dual parameter space.

pub mod algebra;
pub mod fixture;
pub mod roots;

use std::sync::Arc;

use num_complex::Complex64;

pub use algebra::{build_simple_lie_algebra, SimpleLieAlgebra};
pub use roots::{build_root_system, LieType, RootSystemData, Series};

use crate::error::Result;

/// A point of the dual Cartan subalgebra in orthonormal coordinates.
pub type CartanVector = Vec<Complex64>;

/// Builds (or loads from the fixture cache) the algebra named e.g. `"B2"`.
pub fn algebra(name: &str) -> Result<Arc<SimpleLieAlgebra>> {
    let t: LieType = name.parse()?;
    let dir = fixture::env_fixture_dir();
    Ok(Arc::new(fixture::load_or_build(t, dir.as_deref())?))
}

/// `(alpha, lambda - shift)` with `alpha` given by root index.
pub fn pairing(rs: &RootSystemData, lambda: &[Complex64], alpha: usize, shift: &[Complex64]) -> Complex64 {
    rs.roots[alpha]
        .iter()
        .zip(lambda.iter().zip(shift))
        .map(|(&a, (&l, &s))| a * (l - s))
        .sum()
}

/// `(v, lambda)` for a real vector `v`.
pub fn dot(v: &[f64], lambda: &[Complex64]) -> Complex64 {
    v.iter().zip(lambda).map(|(&a, &l)| a * l).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairing_examples() {
        let g = algebra("A1").unwrap();
        let rs = &g.root_system;
        let a = rs.positive_roots[0];
        let lam = vec![Complex64::new(2f64.sqrt(), 0.0)];
        let zero = vec![Complex64::new(0.0, 0.0)];
        assert!((pairing(rs, &lam, a, &zero) - 2.0).norm() < 1e-15);
        let shift = vec![Complex64::new(0.3, -1.0)];
        let expect = -dot(&rs.roots[a], &shift);
        assert!((pairing(rs, &zero, a, &shift) - expect).norm() < 1e-15);
        let scaled = vec![lam[0] * Complex64::new(1.5, 0.5)];
        assert!(
            (pairing(rs, &scaled, a, &zero) - Complex64::new(1.5, 0.5) * pairing(rs, &lam, a, &zero)).norm()
                < 1e-14
        );
    }
}
