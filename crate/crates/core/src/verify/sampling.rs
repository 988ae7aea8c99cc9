//! Seeded, pole-avoiding sample points.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rmatrix::{DerivativeMode, DynamicalR};

pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_SAMPLES: usize = 10;
pub const DEFAULT_TOLERANCE: f64 = 1e-8;
pub const DEFAULT_FD_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SamplePlan {
    pub seed: u64,
    pub count: usize,
    /// Bounds for the real part of each λ coordinate.
    pub re_box: (f64, f64),
    /// Bounds for the imaginary part of each λ coordinate.
    pub im_box: (f64, f64),
    /// Bounds for the real part of each spectral point.
    pub z_re_box: (f64, f64),
    /// Bounds for the imaginary part of each spectral point.
    pub z_im_box: (f64, f64),
    pub pole_margin: f64,
    pub max_resamples: usize,
    pub tolerance: f64,
    pub mode: DerivativeMode,
}

impl Default for SamplePlan {
    fn default() -> Self {
        SamplePlan {
            seed: DEFAULT_SEED,
            count: DEFAULT_SAMPLES,
            re_box: (-2.0, 2.0),
            im_box: (-2.0, 2.0),
            z_re_box: (-0.5, 0.5),
            z_im_box: (-0.1, 0.1),
            pole_margin: 0.1,
            max_resamples: 1000,
            tolerance: DEFAULT_TOLERANCE,
            mode: DerivativeMode::Analytic,
        }
    }
}

/// One sample point; spectral samples carry three points `z₁, z₂, z₃`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub lambda: Vec<Complex64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z: Option<[Complex64; 3]>,
}

impl Sample {
    /// `(z₁₂, z₁₃, z₂₃)`.
    pub fn differences(&self) -> Option<[Complex64; 3]> {
        self.z.map(|[a, b, c]| [a - b, a - c, b - c])
    }
}

impl SamplePlan {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_count(mut self, count: usize) -> Self {
        self.count = count;
        self
    }

    pub fn with_mode(mut self, mode: DerivativeMode) -> Self {
        self.mode = mode;
        self.tolerance = match mode {
            DerivativeMode::Analytic => DEFAULT_TOLERANCE,
            DerivativeMode::FiniteDifference => DEFAULT_FD_TOLERANCE,
        };
        self
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self
    }

    pub fn with_boxes(mut self, re: (f64, f64), im: (f64, f64)) -> Self {
        self.re_box = re;
        self.im_box = im;
        self
    }

    pub fn with_z_boxes(mut self, re: (f64, f64), im: (f64, f64)) -> Self {
        self.z_re_box = re;
        self.z_im_box = im;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let ordered = |b: (f64, f64)| b.0 <= b.1 && b.0.is_finite() && b.1.is_finite();
        if self.count == 0 {
            return Err(Error::SpecInvalid("sample count must be at least 1".into()));
        }
        if !(self.pole_margin > 0.0) || !(self.tolerance > 0.0) {
            return Err(Error::SpecInvalid("pole margin and tolerance must be positive".into()));
        }
        if ![self.re_box, self.im_box, self.z_re_box, self.z_im_box].into_iter().all(ordered) {
            return Err(Error::SpecInvalid("sample boxes must be finite with lo <= hi".into()));
        }
        Ok(())
    }

    fn draw(rng: &mut ChaCha8Rng, re: (f64, f64), im: (f64, f64)) -> Complex64 {
        let pick = |rng: &mut ChaCha8Rng, (lo, hi): (f64, f64)| if lo < hi { rng.random_range(lo..hi) } else { lo };
        let x = pick(rng, re);
        Complex64::new(x, pick(rng, im))
    }

    /// Draws `count` points at distance at least `pole_margin` from the
    /// poles of `r` (and of `r` at every spectral difference when `spectral`).
    pub fn samples(&self, r: &dyn DynamicalR, spectral: bool) -> Result<Vec<Sample>> {
        self.validate()?;
        let rank = r.algebra().rank();
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let mut out = Vec::with_capacity(self.count);
        for _ in 0..self.count {
            let mut accepted = None;
            for _ in 0..self.max_resamples.max(1) {
                let lambda: Vec<Complex64> = (0..rank).map(|_| Self::draw(&mut rng, self.re_box, self.im_box)).collect();
                let z = spectral.then(|| [(); 3].map(|_| Self::draw(&mut rng, self.z_re_box, self.z_im_box)));
                let s = Sample { lambda, z };
                if self.far_from_poles(r, &s) {
                    accepted = Some(s);
                    break;
                }
            }
            out.push(accepted.ok_or(Error::SamplingExhausted(self.max_resamples))?);
        }
        Ok(out)
    }

    fn far_from_poles(&self, r: &dyn DynamicalR, s: &Sample) -> bool {
        match s.differences() {
            None => r.pole_distance(&s.lambda, None) >= self.pole_margin,
            Some(zs) => zs.iter().all(|&z| {
                r.pole_distance(&s.lambda, Some(z)) >= self.pole_margin
                    && r.pole_distance(&s.lambda, Some(-z)) >= self.pole_margin
            }),
        }
    }

    /// Evaluates `f` on every sample in parallel; results keep sample order.
    pub fn map<T: Send>(&self, samples: &[Sample], f: impl Fn(&Sample) -> Result<T> + Sync + Send) -> Result<Vec<T>> {
        samples.par_iter().map(f).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::algebra;
    use crate::rmatrix::{Family, RMatrix, RMatrixSpec};

    #[test]
    fn samples_are_seeded_and_avoid_poles() {
        let g = algebra("A2").unwrap();
        let spec = RMatrixSpec::new(Family::RationalConstant, g.lie_type()).with_x((0..6).collect());
        let r = RMatrix::new(spec, g).unwrap();
        let plan = SamplePlan::default();
        let a = plan.samples(&r, false).unwrap();
        let b = plan.samples(&r, false).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 10);
        assert!(a.iter().all(|s| r.pole_distance(&s.lambda, None) >= 0.1));
        let c = plan.clone().with_seed(7).samples(&r, false).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn exhausted_when_box_sits_on_a_pole() {
        let g = algebra("A1").unwrap();
        let spec = RMatrixSpec::new(Family::RationalConstant, g.lie_type()).with_x(vec![0, 1]);
        let r = RMatrix::new(spec, g).unwrap();
        let mut plan = SamplePlan::default().with_boxes((-0.01, 0.01), (-0.01, 0.01));
        plan.max_resamples = 20;
        assert_eq!(plan.samples(&r, false), Err(Error::SamplingExhausted(20)));
    }

    #[test]
    fn invalid_plans_are_rejected() {
        assert!(SamplePlan::default().with_count(0).validate().is_err());
        assert!(SamplePlan::default().with_tolerance(0.0).validate().is_err());
    }
}
