//! Sweeps every registered check over a range of `k` and a coupling grid and
//! renders the results as JSON or Markdown.
//!
//! Output is a pure function of [`RunConfig`]: checks may run on any number
//! of threads, but reports are assembled in a fixed order keyed by
//! `(k, check, coupling index)` and every residual aggregate is a max
//! reduction.

use std::fmt::{self, Write as _};
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::dihedral::{self, DihedralParams};
use crate::error::{Error, Result};
use crate::extension::{self, ModelParams};
use crate::fock;
use crate::report::{sig15, Expectation, IdentityReport, Status};
use crate::trig::{self, SamplingPlan, SumFamily, FAILURE_THRESHOLD};

pub const REPORT_VERSION: u32 = 1;
/// Smallest sample count the runner accepts.
pub const MIN_SAMPLES: usize = 16;

/// Every check the runner knows about, in execution order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CheckKind {
    CanonicalRelations,
    GroupRelations,
    ClosedPowers,
    ReflectionLadder,
    DeformedAnticommutators,
    TrigIdentity,
    TrigDerivative,
    EvenKControl,
    GammaEquivalence,
    AssemblyPaths,
    SusyBridge,
}

impl CheckKind {
    pub const ALL: [CheckKind; 11] = [
        CheckKind::CanonicalRelations,
        CheckKind::GroupRelations,
        CheckKind::ClosedPowers,
        CheckKind::ReflectionLadder,
        CheckKind::DeformedAnticommutators,
        CheckKind::TrigIdentity,
        CheckKind::TrigDerivative,
        CheckKind::EvenKControl,
        CheckKind::GammaEquivalence,
        CheckKind::AssemblyPaths,
        CheckKind::SusyBridge,
    ];

    pub fn id(self) -> &'static str {
        match self {
            CheckKind::CanonicalRelations => "canonical_relations",
            CheckKind::GroupRelations => "group_relations",
            CheckKind::ClosedPowers => "closed_powers",
            CheckKind::ReflectionLadder => "reflection_ladder",
            CheckKind::DeformedAnticommutators => "deformed_anticommutators",
            CheckKind::TrigIdentity => "trig_identity",
            CheckKind::TrigDerivative => "trig_derivative",
            CheckKind::EvenKControl => "even_k_control",
            CheckKind::GammaEquivalence => "gamma_equivalence",
            CheckKind::AssemblyPaths => "assembly_paths",
            CheckKind::SusyBridge => "susy_bridge",
        }
    }

    /// Library module that owns the check.
    pub fn module(self) -> &'static str {
        match self {
            CheckKind::CanonicalRelations => "fock",
            CheckKind::GroupRelations
            | CheckKind::ClosedPowers
            | CheckKind::ReflectionLadder
            | CheckKind::DeformedAnticommutators => "dihedral",
            CheckKind::TrigIdentity | CheckKind::TrigDerivative | CheckKind::EvenKControl => "trig",
            CheckKind::GammaEquivalence | CheckKind::AssemblyPaths | CheckKind::SusyBridge => "extension",
        }
    }

    /// Whether the check is defined at this `k`. Checks that do not depend
    /// on `k` run once, reported with `k = 0`.
    pub fn applies_to(self, k: u32) -> bool {
        let odd = k % 2 == 1;
        match self {
            CheckKind::CanonicalRelations => false,
            CheckKind::TrigIdentity | CheckKind::TrigDerivative | CheckKind::AssemblyPaths => odd,
            CheckKind::EvenKControl => !odd,
            _ => true,
        }
    }

    /// Module of a report's `check_id` such as `trig_identity:sec2_plain`.
    pub fn module_of(check_id: &str) -> &'static str {
        let base = check_id.split(':').next().unwrap_or(check_id);
        base.parse::<CheckKind>().map(CheckKind::module).unwrap_or("other")
    }
}

impl FromStr for CheckKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CheckKind::ALL
            .into_iter()
            .find(|c| c.id() == s)
            .ok_or_else(|| Error::Config(format!("unknown check '{s}'")))
    }
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    #[default]
    Json,
    Markdown,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "markdown" | "md" => Ok(OutputFormat::Markdown),
            other => Err(Error::Config(format!("unknown format '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Coupling {
    pub a: f64,
    pub b: f64,
}

/// Parses `"a1:b1,a2:b2,..."`.
pub fn parse_couplings(s: &str) -> Result<Vec<Coupling>> {
    s.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|pair| {
            let (a, b) = pair
                .split_once(':')
                .ok_or_else(|| Error::Config(format!("coupling '{pair}' is not of the form a:b")))?;
            let num = |x: &str| {
                x.trim()
                    .parse::<f64>()
                    .map_err(|_| Error::Config(format!("bad number '{x}' in coupling '{pair}'")))
            };
            Ok(Coupling { a: num(a)?, b: num(b)? })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub k_min: u32,
    pub k_max: u32,
    pub odd_only: bool,
    pub n_samples: usize,
    /// Tolerance of the sampled trig-backed checks. Exact rewritings keep
    /// their own fixed tolerances.
    #[serde(serialize_with = "sig15")]
    pub tolerance: f64,
    pub rng_seed: u64,
    pub coupling_grid: Vec<Coupling>,
    #[serde(serialize_with = "sig15")]
    pub omega: f64,
    /// Check ids to run; empty runs everything.
    pub checks: Vec<String>,
    pub output_format: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            k_min: 1,
            k_max: 12,
            odd_only: false,
            n_samples: 1000,
            tolerance: extension::SAMPLED_TOL,
            rng_seed: trig::DEFAULT_SEED,
            coupling_grid: default_couplings(),
            omega: 1.0,
            checks: Vec::new(),
            output_format: OutputFormat::Json,
        }
    }
}

/// Five coupling pairs spread over `[0.3, 5]`.
pub fn default_couplings() -> Vec<Coupling> {
    [(0.3, 0.3), (1.7, 0.4), (1.0, 2.5), (3.2, 5.0), (5.0, 0.8)]
        .into_iter()
        .map(|(a, b)| Coupling { a, b })
        .collect()
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        if self.k_min == 0 {
            return bad("k_min must be at least 1".into());
        }
        if self.k_min > self.k_max {
            return bad(format!("k_min ({}) exceeds k_max ({})", self.k_min, self.k_max));
        }
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return bad("tolerance must be positive".into());
        }
        if self.n_samples < MIN_SAMPLES {
            return bad(format!("samples must be at least {MIN_SAMPLES}"));
        }
        let degree = SamplingPlan::degree_bound(self.k_max);
        if self.n_samples <= degree {
            return bad(format!(
                "samples must be at least {} for k up to {}",
                degree + 1,
                self.k_max
            ));
        }
        if !(self.omega.is_finite() && self.omega >= 0.0) {
            return bad("omega must be finite and non-negative".into());
        }
        if self.coupling_grid.is_empty() {
            return bad("coupling grid is empty".into());
        }
        if self.coupling_grid.iter().any(|c| !(c.a.is_finite() && c.b.is_finite())) {
            return bad("couplings must be finite".into());
        }
        self.selected_checks().map(|_| ())
    }

    pub fn selected_checks(&self) -> Result<Vec<CheckKind>> {
        if self.checks.is_empty() {
            return Ok(CheckKind::ALL.to_vec());
        }
        let mut out: Vec<CheckKind> = self.checks.iter().map(|s| s.parse()).collect::<Result<_>>()?;
        out.sort();
        out.dedup();
        Ok(out)
    }

    pub fn k_values(&self) -> impl Iterator<Item = u32> + '_ {
        (self.k_min..=self.k_max).filter(move |k| !self.odd_only || k % 2 == 1)
    }

    pub fn plan(&self) -> SamplingPlan {
        SamplingPlan {
            n_samples: self.n_samples,
            pole_margin: trig::POLE_MARGIN,
            rng_seed: self.rng_seed,
        }
    }

    /// Applies `key = value` lines on top of `self`. Blank lines and lines
    /// starting with `#` are ignored. Keys match the command-line flags with
    /// dashes or underscores; `check` may repeat.
    pub fn apply_key_values(&mut self, text: &str) -> Result<()> {
        let mut checks_from_file = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key=value", lineno + 1)))?;
            let key = key.trim().replace('-', "_");
            let value = value.trim();
            let parse_err = |what: &str| Error::Config(format!("line {}: bad {what} '{value}'", lineno + 1));
            match key.as_str() {
                "k_min" => self.k_min = value.parse().map_err(|_| parse_err("k_min"))?,
                "k_max" => self.k_max = value.parse().map_err(|_| parse_err("k_max"))?,
                "odd_only" => self.odd_only = value.parse().map_err(|_| parse_err("odd_only"))?,
                "samples" | "n_samples" => self.n_samples = value.parse().map_err(|_| parse_err("samples"))?,
                "tolerance" => self.tolerance = value.parse().map_err(|_| parse_err("tolerance"))?,
                "seed" | "rng_seed" => self.rng_seed = value.parse().map_err(|_| parse_err("seed"))?,
                "omega" => self.omega = value.parse().map_err(|_| parse_err("omega"))?,
                "couplings" | "coupling_grid" => self.coupling_grid = parse_couplings(value)?,
                "check" | "checks" => checks_from_file.extend(
                    value
                        .split(',')
                        .map(str::trim)
                        .filter(|s| !s.is_empty())
                        .map(String::from),
                ),
                "format" | "output_format" => self.output_format = value.parse()?,
                other => {
                    return Err(Error::Config(format!("line {}: unknown key '{other}'", lineno + 1)));
                }
            }
        }
        if !checks_from_file.is_empty() {
            self.checks = checks_from_file;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub expected_failure: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub config: RunConfig,
    pub reports: Vec<IdentityReport>,
    pub summary: Summary,
    /// Excluded from emitted output so that reports stay byte-identical.
    pub wall_time: f64,
}

impl RunReport {
    /// 0 when every asserted check passed (confirmed expected failures
    /// included), 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.summary.fail == 0 {
            0
        } else {
            1
        }
    }
}

fn summarize(reports: &[IdentityReport]) -> Summary {
    reports.iter().fold(Summary::default(), |mut s, r| {
        match r.status() {
            Status::Pass => s.pass += 1,
            Status::Fail => s.fail += 1,
            Status::ExpectedFailure => s.expected_failure += 1,
        }
        s
    })
}

fn or_error(
    res: Result<IdentityReport>,
    check_id: &str,
    k: u32,
    expectation: Expectation,
    tolerance: f64,
) -> IdentityReport {
    res.unwrap_or_else(|e| IdentityReport::errored(check_id, k, expectation, tolerance, e.to_string()))
}

fn merge_all(parts: Vec<IdentityReport>) -> Vec<IdentityReport> {
    let mut it = parts.into_iter();
    match it.next() {
        Some(first) => vec![it.fold(first, |acc, r| acc.merge(&r))],
        None => Vec::new(),
    }
}

fn run_check(config: &RunConfig, kind: CheckKind, k: u32) -> Vec<IdentityReport> {
    let plan = config.plan();
    let dp = || DihedralParams::new(k).expect("k_min >= 1 is validated");
    let models = || {
        config
            .coupling_grid
            .iter()
            .map(move |c| ModelParams::new(k, c.a, c.b, config.omega, 1.0).expect("config validated"))
    };
    match kind {
        CheckKind::CanonicalRelations => vec![fock::verify_canonical_relations()],
        CheckKind::GroupRelations => vec![dihedral::verify_group_relations(&dp())],
        CheckKind::ClosedPowers => vec![dihedral::verify_closed_powers(&dp())],
        CheckKind::ReflectionLadder => vec![dihedral::verify_reflection_ladder_form(&dp())],
        CheckKind::DeformedAnticommutators => vec![dihedral::verify_deformed_anticommutators(&dp())],
        CheckKind::TrigIdentity => SumFamily::all(k)
            .expect("k >= 1")
            .iter()
            .map(|f| {
                use trig::TrigIdentity;
                or_error(
                    trig::verify_identity(f, &plan, config.tolerance),
                    &f.check_id(),
                    k,
                    Expectation::Holds,
                    config.tolerance,
                )
            })
            .collect(),
        CheckKind::TrigDerivative => vec![or_error(
            trig::verify_derivative_consistency(k, &plan, trig::DERIVATIVE_STEP, trig::DERIVATIVE_TOL),
            "trig_derivative_consistency",
            k,
            Expectation::Holds,
            trig::DERIVATIVE_TOL,
        )],
        CheckKind::EvenKControl => vec![or_error(
            trig::even_k_negative_control(k, &plan),
            "even_k_control:sec2_plain",
            k,
            Expectation::Fails,
            FAILURE_THRESHOLD,
        )],
        CheckKind::GammaEquivalence => {
            let (expectation, tol) = if k % 2 == 1 {
                (Expectation::Holds, config.tolerance)
            } else {
                (Expectation::Fails, FAILURE_THRESHOLD)
            };
            merge_all(
                models()
                    .map(|p| {
                        let res = extension::verify_gamma_equivalence_at(&p, &plan, config.tolerance);
                        or_error(res, "gamma_equivalence", k, expectation, tol)
                    })
                    .collect(),
            )
        }
        CheckKind::AssemblyPaths => merge_all(
            models()
                .map(|p| {
                    or_error(
                        extension::verify_assembly_paths(&p, &plan),
                        "assembly_paths",
                        k,
                        Expectation::Holds,
                        extension::EXACT_TOL,
                    )
                })
                .collect(),
        ),
        CheckKind::SusyBridge => merge_all(models().map(|p| extension::verify_susy_bridge(&p)).collect()),
    }
}

/// Runs the configured sweep. Tasks execute in parallel; the report order
/// is fixed by `(k, check)`.
pub fn run(config: &RunConfig) -> Result<RunReport> {
    config.validate()?;
    let started = Instant::now();
    let kinds = config.selected_checks()?;
    let mut tasks: Vec<(CheckKind, u32)> = Vec::new();
    if kinds.contains(&CheckKind::CanonicalRelations) {
        tasks.push((CheckKind::CanonicalRelations, 0));
    }
    tasks.extend(
        config
            .k_values()
            .flat_map(|k| kinds.iter().map(move |&c| (c, k)))
            .filter(|&(c, k)| c.applies_to(k)),
    );
    let reports: Vec<IdentityReport> = tasks
        .par_iter()
        .map(|&(kind, k)| run_check(config, kind, k))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    let summary = summarize(&reports);
    Ok(RunReport {
        config: config.clone(),
        reports,
        summary,
        wall_time: started.elapsed().as_secs_f64(),
    })
}

#[derive(Serialize)]
struct JsonReport<'a> {
    report_version: u32,
    config: &'a RunConfig,
    summary: &'a Summary,
    reports: &'a [IdentityReport],
}

/// Renders a report. JSON keys appear in a fixed order and residuals carry
/// 15 significant digits.
pub fn emit(report: &RunReport, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => {
            let body = JsonReport {
                report_version: REPORT_VERSION,
                config: &report.config,
                summary: &report.summary,
                reports: &report.reports,
            };
            let mut s = serde_json::to_string_pretty(&body).expect("report serializes");
            s.push('\n');
            s
        }
        OutputFormat::Markdown => emit_markdown(report),
    }
}

fn status_label(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "FAIL",
        Status::ExpectedFailure => "expected-failure",
    }
}

fn emit_markdown(report: &RunReport) -> String {
    let mut out = String::new();
    let s = &report.summary;
    let _ = writeln!(out, "# Verification report\n");
    let _ = writeln!(
        out,
        "k = {}..={}, {} samples, seed {}, tolerance {:e}\n",
        report.config.k_min,
        report.config.k_max,
        report.config.n_samples,
        report.config.rng_seed,
        report.config.tolerance
    );
    let _ = writeln!(
        out,
        "pass: {}, fail: {}, expected-failure: {}\n",
        s.pass, s.fail, s.expected_failure
    );
    for module in ["fock", "dihedral", "trig", "extension"] {
        let rows: Vec<&IdentityReport> = report
            .reports
            .iter()
            .filter(|r| CheckKind::module_of(&r.check_id) == module)
            .collect();
        if rows.is_empty() {
            continue;
        }
        let _ = writeln!(out, "## {module}\n");
        let _ = writeln!(out, "| check_id | k | max_rel_residual | tolerance | status |");
        let _ = writeln!(out, "|---|---|---|---|---|");
        for r in rows {
            let _ = writeln!(
                out,
                "| {} | {} | {:.6e} | {:e} | {} |",
                r.check_id,
                r.k,
                r.max_rel_residual,
                r.tolerance,
                status_label(r.status())
            );
        }
        out.push('\n');
    }
    out
}
