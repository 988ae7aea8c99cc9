//! Structured verification results.

use serde::{Deserialize, Serialize};

pub const REPORT_VERSION: u32 = 1;

/// A residual check: passes iff every residual is at most `tolerance`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub tolerance: f64,
    pub max_residual: f64,
    pub n_samples: usize,
    pub pass: bool,
    pub residuals: Vec<f64>,
}

impl CheckResult {
    pub fn new(name: impl Into<String>, tolerance: f64, residuals: Vec<f64>) -> Self {
        let max_residual = residuals.iter().copied().fold(0.0, f64::max);
        // NaN residuals never pass
        let pass = !residuals.is_empty() && residuals.iter().all(|r| *r <= tolerance);
        CheckResult {
            name: name.into(),
            tolerance,
            max_residual,
            n_samples: residuals.len(),
            pass,
            residuals,
        }
    }
}

/// A negative control: passes iff every residual exceeds `threshold`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ControlResult {
    pub name: String,
    pub threshold: f64,
    pub min_residual: f64,
    pub pass: bool,
}

impl ControlResult {
    pub fn new(name: impl Into<String>, threshold: f64, residuals: &[f64]) -> Self {
        let min_residual = residuals.iter().copied().fold(f64::INFINITY, f64::min);
        ControlResult {
            name: name.into(),
            threshold,
            min_residual,
            pass: !residuals.is_empty() && residuals.iter().all(|r| *r > threshold),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub version: u32,
    pub spec: String,
    pub algebra: String,
    pub seed: u64,
    pub checks: Vec<CheckResult>,
    pub controls: Vec<ControlResult>,
    pub wall_time_ms: u64,
}

impl VerificationReport {
    pub fn new(spec: impl Into<String>, algebra: impl Into<String>, seed: u64) -> Self {
        VerificationReport {
            version: REPORT_VERSION,
            spec: spec.into(),
            algebra: algebra.into(),
            seed,
            checks: Vec::new(),
            controls: Vec::new(),
            wall_time_ms: 0,
        }
    }

    pub fn pass(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.pass) && self.controls.iter().all(|c| c.pass)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn control(&self, name: &str) -> Option<&ControlResult> {
        self.controls.iter().find(|c| c.name == name)
    }

    pub fn merge(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
        self.controls.extend(other.controls);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// JSON with the timing field zeroed, for reproducibility comparisons.
    pub fn to_json_without_timing(&self) -> String {
        let mut copy = self.clone();
        copy.wall_time_ms = 0;
        copy.to_json()
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} on {} (seed {})\n", self.spec, self.algebra, self.seed);
        for c in &self.checks {
            out.push_str(&format!(
                "  [{}] {:<28} max {:.3e}  tol {:.1e}  n={}\n",
                if c.pass { "pass" } else { "FAIL" },
                c.name,
                c.max_residual,
                c.tolerance,
                c.n_samples
            ));
        }
        for c in &self.controls {
            out.push_str(&format!(
                "  [{}] control {:<20} min {:.3e}  > {:.1e}\n",
                if c.pass { "pass" } else { "FAIL" },
                c.name,
                c.min_residual,
                c.threshold
            ));
        }
        out.push_str(if self.pass() { "PASS\n" } else { "FAIL\n" });
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_flag_follows_the_residuals() {
        assert!(CheckResult::new("a", 1e-8, vec![1e-9, 5e-9]).pass);
        assert!(!CheckResult::new("a", 1e-8, vec![1e-9, 2e-8]).pass);
        assert!(!CheckResult::new("a", 1e-8, vec![f64::NAN]).pass);
        assert!(!CheckResult::new("a", 1e-8, vec![]).pass);
        assert!(ControlResult::new("c", 1e-3, &[0.1, 0.2]).pass);
        assert!(!ControlResult::new("c", 1e-3, &[0.1, 0.0]).pass);
    }

    #[test]
    fn report_round_trips_and_ignores_timing() {
        let mut r = VerificationReport::new("s", "A1", 42);
        r.checks.push(CheckResult::new("cdybe", 1e-8, vec![1e-12]));
        r.controls.push(ControlResult::new("flip", 1e-3, &[0.5]));
        r.wall_time_ms = 17;
        let back: VerificationReport = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
        let mut other = r.clone();
        other.wall_time_ms = 3;
        assert_eq!(other.to_json_without_timing(), r.to_json_without_timing());
        assert!(r.pass());
        assert!(r.to_text().ends_with("PASS\n"));
    }
}
