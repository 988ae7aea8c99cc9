//! Command-line front end. [`run`] parses arguments, dispatches to the
//! verifier and returns the exit status together with the rendered output,
//! so the binary is a thin wrapper and everything here is testable.
//!
//! Exit status: 0 all checks pass, 1 a check fails, 2 configuration error,
//! 3 numeric failure (pole proximity, non-convergence, sampling).

use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::json;

use crate::combinatorics::{enumerate_closed_subsets, find_polarization};
use crate::error::Error;
use crate::lie::{self, RootSystemData, SimpleLieAlgebra};
use crate::rmatrix::{DerivativeMode, Family, RMatrix, RMatrixSpec};
use crate::verify::affine::affine_series_report;
use crate::verify::limits::{cotanh_path, elliptic_tau_path, limit_plan, limit_report, rational_ray_path};
use crate::verify::pair::reduce_pair_check;
use crate::verify::{check_axioms, verify_cdybe, SamplePlan, VerificationReport};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "dynr", version, about = "Verify classical dynamical r-matrices numerically")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the dynamical Yang-Baxter equation at sampled points.
    Verify(SpecArgs),
    /// Check zero weight, unitarity and the residue condition.
    Axioms(SpecArgs),
    /// List the closed root subsets of a root system.
    Subsets(AlgebraArgs),
    /// Find a positive system containing the given roots.
    Polarize(PolarizeArgs),
    /// Follow a family along a parameter schedule.
    Limits(LimitsArgs),
    /// Reduce an r-matrix for a pair h ⊂ l ⊂ g to the Cartan case.
    Pair(PairArgs),
    /// Compare the theta-series r-matrix with its closed form.
    Series(SeriesArgs),
    /// List the built-in families.
    Catalog(OutputArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the output here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct PlanArgs {
    #[arg(long, default_value_t = crate::verify::sampling::DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, default_value_t = crate::verify::sampling::DEFAULT_SAMPLES)]
    pub samples: usize,
    /// Residual tolerance; defaults to 1e-8, or 1e-6 with --fd.
    #[arg(long)]
    pub tolerance: Option<f64>,
    /// Differentiate in λ by central differences instead of analytically.
    #[arg(long)]
    pub fd: bool,
}

#[derive(Debug, Clone, Args)]
pub struct AlgebraArgs {
    #[arg(long)]
    pub algebra: String,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SpecFlags {
    /// Lie type such as A2 or G2.
    #[arg(long)]
    pub algebra: Option<String>,
    #[arg(long)]
    pub family: Option<String>,
    /// Root set: `full`, `none`, or tokens like `a1,-a2,r3`.
    #[arg(long = "X", alias = "x")]
    pub x: Option<String>,
    #[arg(long)]
    pub eps: Option<String>,
    /// Comma-separated complex shift.
    #[arg(long)]
    pub nu: Option<String>,
    #[arg(long)]
    pub tau: Option<String>,
    /// Spec as inline JSON.
    #[arg(long, conflicts_with_all = ["spec_file", "family"])]
    pub spec: Option<String>,
    #[arg(long, conflicts_with = "family")]
    pub spec_file: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SpecArgs {
    #[command(flatten)]
    pub spec: SpecFlags,
    #[command(flatten)]
    pub plan: PlanArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct PolarizeArgs {
    #[arg(long)]
    pub algebra: String,
    /// Roots that must come out positive, e.g. `a1,-a2`.
    #[arg(long = "Y", alias = "y")]
    pub y: String,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct LimitsArgs {
    #[arg(long, default_value = "A1")]
    pub algebra: String,
    /// `tau:4i,6i,8i`, `t:20,40` or `ray:1e4,1e6,1e8`.
    #[arg(long)]
    pub schedule: String,
    #[arg(long = "X", alias = "x")]
    pub x: Option<String>,
    #[arg(long)]
    pub eps: Option<String>,
    /// Limit shift for the `t` schedule.
    #[arg(long)]
    pub mu: Option<String>,
    /// Ray direction for the `ray` schedule (real coordinates).
    #[arg(long)]
    pub direction: Option<String>,
    #[arg(long, default_value_t = crate::verify::sampling::DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, default_value_t = crate::verify::sampling::DEFAULT_SAMPLES)]
    pub samples: usize,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct PairArgs {
    /// Positive roots of l, e.g. `a1`; empty for l = h.
    #[arg(long, default_value = "")]
    pub l_roots: String,
    #[command(flatten)]
    pub spec: SpecFlags,
    #[command(flatten)]
    pub plan: PlanArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SeriesArgs {
    #[arg(long, default_value = "A1")]
    pub algebra: String,
    #[arg(long, default_value = "2i")]
    pub tau: String,
    #[arg(long, default_value = "0.3")]
    pub z: String,
    /// Largest truncation order; N/8, N/4 and N/2 are run as well.
    #[arg(long = "N", alias = "n", default_value_t = 60)]
    pub n: usize,
    #[command(flatten)]
    pub plan: PlanArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

/// Where the r-matrix spec of a command comes from.
#[derive(Debug, Clone, PartialEq)]
pub enum SpecSource {
    Inline(String),
    File(PathBuf),
    Flags(RMatrixSpec),
}

/// Resolved configuration of a spec-driven command.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: &'static str,
    pub algebra: Arc<SimpleLieAlgebra>,
    pub source: SpecSource,
    pub spec: RMatrixSpec,
    pub plan: SamplePlan,
    pub output: Option<PathBuf>,
    pub format: Format,
}

/// Exit status and rendered output of one invocation.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub exit_code: i32,
    pub output: String,
    pub report: Option<VerificationReport>,
}

impl Outcome {
    fn error(code: i32, message: impl Into<String>) -> Self {
        Outcome {
            exit_code: code,
            output: format!("error: {}\n", message.into()),
            report: None,
        }
    }
}

pub fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::PoleProximity(_) | Error::ConvergenceFailure(_) | Error::SamplingExhausted(_) => EXIT_NUMERIC,
        _ => EXIT_CONFIG,
    }
}

/// Parses `a+bi`, `2i`, `-i`, `0.3`, `1e-3-2.5i`.
pub fn parse_complex(token: &str) -> Result<Complex64, String> {
    let t: String = token.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || format!("cannot parse complex number '{token}'");
    if t.is_empty() {
        return Err(bad());
    }
    let Some(body) = t.strip_suffix('i') else {
        return t.parse::<f64>().map(|re| Complex64::new(re, 0.0)).map_err(|_| bad());
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("", body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        s => s.parse::<f64>().map_err(|_| bad())?,
    };
    let re = if re.is_empty() { 0.0 } else { re.parse::<f64>().map_err(|_| bad())? };
    Ok(Complex64::new(re, im))
}

pub fn parse_complex_list(text: &str) -> Result<Vec<Complex64>, String> {
    text.split(',').filter(|s| !s.trim().is_empty()).map(parse_complex).collect()
}

/// Root tokens: `aK` is the K-th simple root, `rK` the root with index K,
/// a leading `-` negates.
pub fn parse_roots(rs: &RootSystemData, text: &str) -> Result<Vec<usize>, String> {
    let mut out = Vec::new();
    for raw in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (neg, tok) = match raw.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, raw),
        };
        let bad = || format!("bad root token '{raw}'");
        let idx = if let Some(k) = tok.strip_prefix('a') {
            let k: usize = k.parse().map_err(|_| bad())?;
            *rs.simple_roots.get(k.wrapping_sub(1)).ok_or_else(bad)?
        } else if let Some(k) = tok.strip_prefix('r') {
            let k: usize = k.parse().map_err(|_| bad())?;
            if k >= rs.len() {
                return Err(bad());
            }
            k
        } else {
            return Err(bad());
        };
        out.push(if neg { rs.negative(idx) } else { idx });
    }
    Ok(out)
}

fn parse_x(rs: &RootSystemData, family: Family, text: &str) -> Result<Vec<usize>, String> {
    match text {
        "full" => Ok(match family {
            Family::RationalConstant | Family::RationalSpectral => (0..rs.len()).collect(),
            _ => rs.simple_roots.clone(),
        }),
        "none" | "" => Ok(Vec::new()),
        tokens => parse_roots(rs, tokens),
    }
}

fn load_algebra(name: &str) -> Result<Arc<SimpleLieAlgebra>, Outcome> {
    lie::algebra(name).map_err(|e| Outcome::error(exit_code_for(&e), e.to_string()))
}

fn config_error(msg: impl Into<String>) -> Outcome {
    Outcome::error(EXIT_CONFIG, msg)
}

fn plan_from(args: &PlanArgs) -> Result<SamplePlan, Outcome> {
    let mode = if args.fd { DerivativeMode::FiniteDifference } else { DerivativeMode::Analytic };
    let mut plan = SamplePlan::default().with_seed(args.seed).with_count(args.samples).with_mode(mode);
    if let Some(t) = args.tolerance {
        plan = plan.with_tolerance(t);
    }
    plan.validate().map_err(|e| config_error(e.to_string()))?;
    Ok(plan)
}

fn spec_from(flags: &SpecFlags) -> Result<(Arc<SimpleLieAlgebra>, SpecSource, RMatrixSpec), Outcome> {
    let from_text = |text: &str| RMatrixSpec::from_json(text).map_err(|e| config_error(e.to_string()));
    let (source, spec) = if let Some(text) = &flags.spec {
        (SpecSource::Inline(text.clone()), from_text(text)?)
    } else if let Some(path) = &flags.spec_file {
        let text = fs::read_to_string(path).map_err(|e| config_error(format!("{}: {e}", path.display())))?;
        (SpecSource::File(path.clone()), from_text(&text)?)
    } else {
        let name = flags.algebra.as_deref().ok_or_else(|| config_error("--algebra is required"))?;
        let g = load_algebra(name)?;
        let family: Family = flags
            .family
            .as_deref()
            .ok_or_else(|| config_error("one of --family, --spec, --spec-file is required"))?
            .parse()
            .map_err(|e: Error| config_error(e.to_string()))?;
        let mut spec = RMatrixSpec::new(family, g.lie_type());
        if let Some(x) = &flags.x {
            spec = spec.with_x(parse_x(&g.root_system, family, x).map_err(config_error)?);
        }
        if let Some(eps) = &flags.eps {
            spec = spec.with_eps(parse_complex(eps).map_err(config_error)?);
        }
        if let Some(nu) = &flags.nu {
            spec = spec.with_nu(parse_complex_list(nu).map_err(config_error)?);
        }
        if let Some(tau) = &flags.tau {
            spec = spec.with_tau(parse_complex(tau).map_err(config_error)?);
        }
        let source = SpecSource::Flags(spec.clone());
        return Ok((g, source, spec));
    };
    if let Some(name) = &flags.algebra {
        let t: lie::LieType = name.parse().map_err(|e: Error| config_error(e.to_string()))?;
        if t != spec.algebra {
            return Err(config_error(format!("--algebra {t} does not match the spec's {}", spec.algebra)));
        }
    }
    let g = load_algebra(&spec.algebra.to_string())?;
    Ok((g, source, spec))
}

impl RunConfig {
    fn build(command: &'static str, flags: &SpecFlags, plan: &PlanArgs, out: &OutputArgs) -> Result<Self, Outcome> {
        let (algebra, source, spec) = spec_from(flags)?;
        Ok(RunConfig {
            command,
            algebra,
            source,
            spec,
            plan: plan_from(plan)?,
            output: out.output.clone(),
            format: out.format,
        })
    }

    fn rmatrix(&self) -> Result<RMatrix, Outcome> {
        RMatrix::new(self.spec.clone(), self.algebra.clone()).map_err(|e| Outcome::error(exit_code_for(&e), e.to_string()))
    }
}

fn finish(result: crate::Result<VerificationReport>, started: Instant, format: Format, output: &Option<PathBuf>) -> Outcome {
    match result {
        Err(e) => Outcome::error(exit_code_for(&e), e.to_string()),
        Ok(mut report) => {
            report.wall_time_ms = started.elapsed().as_millis() as u64;
            let text = match format {
                Format::Json => report.to_json() + "\n",
                Format::Text => report.to_text(),
            };
            let exit_code = if report.pass() { EXIT_PASS } else { EXIT_CHECK_FAILED };
            emit(Outcome { exit_code, output: text, report: Some(report) }, output)
        }
    }
}

fn emit(mut outcome: Outcome, output: &Option<PathBuf>) -> Outcome {
    if let Some(path) = output {
        if let Err(e) = fs::write(path, &outcome.output) {
            return config_error(format!("{}: {e}", path.display()));
        }
        outcome.output = format!("wrote {}\n", path.display());
    }
    outcome
}

pub fn cmd_verify(config: &RunConfig) -> Outcome {
    let started = Instant::now();
    let r = match config.rmatrix() {
        Ok(r) => r,
        Err(o) => return o,
    };
    finish(verify_cdybe(&r, &config.plan), started, config.format, &config.output)
}

pub fn cmd_axioms(config: &RunConfig) -> Outcome {
    let started = Instant::now();
    let r = match config.rmatrix() {
        Ok(r) => r,
        Err(o) => return o,
    };
    finish(check_axioms(&r, &config.plan), started, config.format, &config.output)
}

pub fn cmd_subsets(args: &AlgebraArgs) -> Outcome {
    let g = match load_algebra(&args.algebra) {
        Ok(g) => g,
        Err(o) => return o,
    };
    let rs = &g.root_system;
    let subsets = match enumerate_closed_subsets(rs) {
        Ok(s) => s,
        Err(e) => return Outcome::error(exit_code_for(&e), e.to_string()),
    };
    let text = match args.out.format {
        Format::Json => {
            let labelled: Vec<Vec<String>> = subsets.iter().map(|s| s.members.iter().map(|&r| rs.label(r)).collect()).collect();
            let indices: Vec<&Vec<usize>> = subsets.iter().map(|s| &s.members).collect();
            serde_json::to_string_pretty(&json!({
                "algebra": g.id(),
                "count": subsets.len(),
                "subsets": indices,
                "labels": labelled,
            }))
            .expect("listing serializes")
                + "\n"
        }
        Format::Text => {
            let mut s = format!("{}: {} closed subsets\n", g.id(), subsets.len());
            for x in &subsets {
                let labels: Vec<String> = x.members.iter().map(|&r| rs.label(r)).collect();
                s.push_str(&format!("  {{{}}}\n", labels.join(", ")));
            }
            s
        }
    };
    emit(Outcome { exit_code: EXIT_PASS, output: text, report: None }, &args.out.output)
}

pub fn cmd_polarize(args: &PolarizeArgs) -> Outcome {
    let g = match load_algebra(&args.algebra) {
        Ok(g) => g,
        Err(o) => return o,
    };
    let rs = &g.root_system;
    let y = match parse_roots(rs, &args.y) {
        Ok(y) => y,
        Err(e) => return config_error(e),
    };
    let p = match find_polarization(rs, &y) {
        Ok(p) => p,
        Err(e) => return Outcome::error(exit_code_for(&e), e.to_string()),
    };
    let labels: Vec<String> = p.positive.iter().map(|&r| rs.label(r)).collect();
    let text = match args.out.format {
        Format::Json => {
            serde_json::to_string_pretty(&json!({
                "algebra": g.id(),
                "v": p.v,
                "margin": p.margin,
                "positive": p.positive,
                "labels": labels,
            }))
            .expect("polarization serializes")
                + "\n"
        }
        Format::Text => format!("v = {:?}\nmargin = {:.6}\npositive = {{{}}}\n", p.v, p.margin, labels.join(", ")),
    };
    emit(Outcome { exit_code: EXIT_PASS, output: text, report: None }, &args.out.output)
}

pub fn cmd_limits(args: &LimitsArgs) -> Outcome {
    let started = Instant::now();
    let g = match load_algebra(&args.algebra) {
        Ok(g) => g,
        Err(o) => return o,
    };
    let rs = &g.root_system;
    let Some((kind, values)) = args.schedule.split_once(':') else {
        return config_error("schedule must look like tau:4i,6i,8i, t:20,40 or ray:1e4,1e6,1e8");
    };
    let values = match parse_complex_list(values) {
        Ok(v) if !v.is_empty() => v,
        Ok(_) => return config_error("empty schedule"),
        Err(e) => return config_error(e),
    };
    let reals: Vec<f64> = values.iter().map(|v| v.re).collect();
    let path = match kind {
        "tau" => Ok(elliptic_tau_path(&g, &values)),
        "t" => {
            let x = match parse_x(rs, Family::TrigDegenerate, args.x.as_deref().unwrap_or("none")) {
                Ok(x) => x,
                Err(e) => return config_error(e),
            };
            let eps = match args.eps.as_deref().map(parse_complex).transpose() {
                Ok(e) => e.unwrap_or(Complex64::new(1.0, 0.0)),
                Err(e) => return config_error(e),
            };
            let mu = match args.mu.as_deref().map(parse_complex_list).transpose() {
                Ok(m) => m.unwrap_or_else(|| vec![Complex64::new(0.0, 0.0); rs.rank()]),
                Err(e) => return config_error(e),
            };
            cotanh_path(&g, eps, &mu, &x, &reals)
        }
        "ray" => {
            let x = match parse_x(rs, Family::RationalConstant, args.x.as_deref().unwrap_or("full")) {
                Ok(x) => x,
                Err(e) => return config_error(e),
            };
            let direction = match args.direction.as_deref() {
                None => (0..rs.rank()).map(|k| 1.0 / (k as f64 + 1.0).sqrt() + 0.1 * k as f64).collect(),
                Some(d) => match d.split(',').map(|s| s.trim().parse::<f64>()).collect::<Result<Vec<_>, _>>() {
                    Ok(v) => v,
                    Err(_) => return config_error(format!("bad direction '{d}'")),
                },
            };
            rational_ray_path(&g, &x, &direction, &reals)
        }
        other => return config_error(format!("unknown schedule kind '{other}'")),
    };
    let path = match path {
        Ok(p) => p,
        Err(e) => return Outcome::error(exit_code_for(&e), e.to_string()),
    };
    let plan = limit_plan(args.seed, args.samples);
    finish(limit_report(&g, &path, &plan), started, args.out.format, &args.out.output)
}

pub fn cmd_pair(args: &PairArgs) -> Outcome {
    let started = Instant::now();
    let mut flags = args.spec.clone();
    if flags.family.is_none() && flags.spec.is_none() && flags.spec_file.is_none() {
        flags.family = Some(Family::RationalConstant.name().into());
        flags.x.get_or_insert_with(|| "full".into());
    }
    let config = match RunConfig::build("pair", &flags, &args.plan, &args.out) {
        Ok(c) => c,
        Err(o) => return o,
    };
    let l = match parse_roots(&config.algebra.root_system, &args.l_roots) {
        Ok(l) => l,
        Err(e) => return config_error(e),
    };
    let r = match config.rmatrix() {
        Ok(r) => r,
        Err(o) => return o,
    };
    finish(reduce_pair_check(&r, &l, &config.plan), started, config.format, &config.output)
}

pub fn cmd_series(args: &SeriesArgs) -> Outcome {
    let started = Instant::now();
    let g = match load_algebra(&args.algebra) {
        Ok(g) => g,
        Err(o) => return o,
    };
    let (tau, z) = match (parse_complex(&args.tau), parse_complex(&args.z)) {
        (Ok(t), Ok(z)) => (t, z),
        (Err(e), _) | (_, Err(e)) => return config_error(e),
    };
    let plan = match plan_from(&args.plan) {
        Ok(p) => p,
        Err(o) => return o,
    };
    let n = args.n.max(1);
    let mut terms: Vec<usize> = [n.div_ceil(8), n.div_ceil(4), n.div_ceil(2), n].to_vec();
    terms.dedup();
    finish(affine_series_report(&g, tau, z, &terms, &plan), started, args.out.format, &args.out.output)
}

pub fn cmd_catalog(args: &OutputArgs) -> Outcome {
    let text = match args.format {
        Format::Json => {
            let rows: Vec<_> = Family::ALL
                .iter()
                .map(|f| {
                    json!({
                        "family": f.name(),
                        "spectral": f.is_spectral(),
                        "formula": f.formula(),
                    })
                })
                .collect();
            serde_json::to_string_pretty(&rows).expect("catalog serializes") + "\n"
        }
        Format::Text => Family::ALL
            .iter()
            .map(|f| format!("{:<18} {}\n", f.name(), f.formula()))
            .collect(),
    };
    emit(Outcome { exit_code: EXIT_PASS, output: text, report: None }, &args.output)
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_PASS };
            return Outcome { exit_code: code, output: e.to_string(), report: None };
        }
    };
    let spec_command = |name, a: &SpecArgs, f: fn(&RunConfig) -> Outcome| match RunConfig::build(name, &a.spec, &a.plan, &a.out) {
        Ok(config) => f(&config),
        Err(o) => o,
    };
    match &cli.command {
        Command::Verify(a) => spec_command("verify", a, cmd_verify),
        Command::Axioms(a) => spec_command("axioms", a, cmd_axioms),
        Command::Subsets(a) => cmd_subsets(a),
        Command::Polarize(a) => cmd_polarize(a),
        Command::Limits(a) => cmd_limits(a),
        Command::Pair(a) => cmd_pair(a),
        Command::Series(a) => cmd_series(a),
        Command::Catalog(a) => cmd_catalog(a),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cx(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn complex_tokens() {
        assert_eq!(parse_complex("2i").unwrap(), cx(0.0, 2.0));
        assert_eq!(parse_complex("i").unwrap(), cx(0.0, 1.0));
        assert_eq!(parse_complex("-i").unwrap(), cx(0.0, -1.0));
        assert_eq!(parse_complex("0.3").unwrap(), cx(0.3, 0.0));
        assert_eq!(parse_complex("1+2i").unwrap(), cx(1.0, 2.0));
        assert_eq!(parse_complex("-1.5-0.5i").unwrap(), cx(-1.5, -0.5));
        assert_eq!(parse_complex("1e-3+2e-1i").unwrap(), cx(1e-3, 0.2));
        assert_eq!(parse_complex("2.5e+1-i").unwrap(), cx(25.0, -1.0));
        assert!(parse_complex("1+").is_err());
        assert!(parse_complex("abc").is_err());
    }

    #[test]
    fn root_tokens() {
        let g = lie::algebra("A2").unwrap();
        let rs = &g.root_system;
        let roots = parse_roots(rs, "a1,-a2,r3").unwrap();
        assert_eq!(roots, vec![rs.simple_roots[0], rs.negative(rs.simple_roots[1]), 3]);
        assert!(parse_roots(rs, "a3").is_err());
        assert!(parse_roots(rs, "a0").is_err());
        assert!(parse_roots(rs, "r6").is_err());
        assert!(parse_roots(rs, "b1").is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run(["dynr", "verify", "--algebra", "A1", "--family", "rational-constant", "--X", "full"]).exit_code, 0);
        assert_eq!(run(["dynr", "verify", "--algebra", "Z9", "--family", "rational-constant"]).exit_code, 2);
        assert_eq!(run(["dynr", "verify", "--algebra", "A1"]).exit_code, 2);
        assert_eq!(run(["dynr", "nonsense"]).exit_code, 2);
        assert_eq!(run(["dynr", "--help"]).exit_code, 0);
        assert_eq!(run(["dynr", "subsets", "--algebra", "A5"]).exit_code, 2);
        assert_eq!(run(["dynr", "polarize", "--algebra", "A1", "--Y", "a1,-a1"]).exit_code, 2);
        assert_eq!(run(["dynr", "verify", "--algebra", "A1", "--family", "rational-constant", "--samples", "0"]).exit_code, 2);
    }
}
