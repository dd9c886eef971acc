//! Outcome records shared by every check.

use std::collections::BTreeMap;

use serde::{Serialize, Serializer};

/// What a check is expected to find.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Expectation {
    /// The identity holds: residuals must stay below the tolerance.
    Holds,
    /// The identity is known to fail: residuals must exceed the threshold.
    Fails,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    ExpectedFailure,
}

/// Outcome of one identity check.
///
/// For [`Expectation::Holds`], `pass` is `max_rel_residual <= tolerance`.
/// For [`Expectation::Fails`], `tolerance` is the failure threshold and
/// `pass` means the failure was confirmed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityReport {
    pub check_id: String,
    pub k: u32,
    pub n_samples: usize,
    pub n_evaluated: usize,
    pub n_skipped_near_pole: usize,
    #[serde(serialize_with = "sig15")]
    pub max_abs_residual: f64,
    #[serde(serialize_with = "sig15")]
    pub max_rel_residual: f64,
    #[serde(serialize_with = "sig15")]
    pub tolerance: f64,
    pub expectation: Expectation,
    pub pass: bool,
    #[serde(serialize_with = "sig15_map")]
    pub details: BTreeMap<String, f64>,
    /// Set when the check could not run (for example degenerate sampling).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl IdentityReport {
    /// Report for an identity expected to hold.
    pub fn holds(check_id: impl Into<String>, k: u32, stats: &ResidualStats, tolerance: f64) -> Self {
        Self {
            check_id: check_id.into(),
            k,
            n_samples: stats.evaluated + stats.skipped,
            n_evaluated: stats.evaluated,
            n_skipped_near_pole: stats.skipped,
            max_abs_residual: stats.max_abs,
            max_rel_residual: stats.max_rel,
            tolerance,
            expectation: Expectation::Holds,
            pass: stats.evaluated > 0 && stats.max_rel <= tolerance,
            details: BTreeMap::new(),
            error: None,
        }
    }

    /// A failed report for a check that returned an error instead of residuals.
    pub fn errored(
        check_id: impl Into<String>,
        k: u32,
        expectation: Expectation,
        tolerance: f64,
        error: String,
    ) -> Self {
        Self {
            expectation,
            pass: false,
            error: Some(error),
            ..Self::holds(check_id, k, &ResidualStats::new(tolerance), tolerance)
        }
    }

    /// Report for an identity expected to fail; `confirmed` is decided by the caller.
    pub fn fails(check_id: impl Into<String>, k: u32, stats: &ResidualStats, threshold: f64, confirmed: bool) -> Self {
        Self {
            expectation: Expectation::Fails,
            pass: confirmed,
            ..Self::holds(check_id, k, stats, threshold)
        }
    }

    pub fn with_detail(mut self, key: impl Into<String>, value: f64) -> Self {
        self.details.insert(key.into(), value);
        self
    }

    pub fn status(&self) -> Status {
        match (self.pass, self.expectation) {
            (false, _) => Status::Fail,
            (true, Expectation::Holds) => Status::Pass,
            (true, Expectation::Fails) => Status::ExpectedFailure,
        }
    }

    /// Combines reports of the same check (e.g. over a coupling grid).
    ///
    /// Counts add, residuals take the maximum and the merged report passes
    /// only if every part passes. Details keep the maximum per key.
    pub fn merge(mut self, other: &IdentityReport) -> Self {
        debug_assert_eq!(self.check_id, other.check_id);
        debug_assert_eq!(self.expectation, other.expectation);
        self.n_samples += other.n_samples;
        self.n_evaluated += other.n_evaluated;
        self.n_skipped_near_pole += other.n_skipped_near_pole;
        self.max_abs_residual = nan_max(self.max_abs_residual, other.max_abs_residual);
        self.max_rel_residual = nan_max(self.max_rel_residual, other.max_rel_residual);
        self.pass &= other.pass;
        if self.error.is_none() {
            self.error.clone_from(&other.error);
        }
        for (key, &v) in &other.details {
            self.details
                .entry(key.clone())
                .and_modify(|cur| *cur = cur.max(v))
                .or_insert(v);
        }
        self
    }
}

/// Running residual statistics. Merging is associative and commutative, so
/// sample points may be processed in any order or in parallel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualStats {
    pub evaluated: usize,
    pub skipped: usize,
    pub max_abs: f64,
    pub max_rel: f64,
    /// Count of evaluated points whose relative residual exceeds `threshold`.
    pub above_threshold: usize,
    pub threshold: f64,
}

impl ResidualStats {
    pub fn new(threshold: f64) -> Self {
        Self {
            evaluated: 0,
            skipped: 0,
            max_abs: 0.0,
            max_rel: 0.0,
            above_threshold: 0,
            threshold,
        }
    }

    pub fn record(&mut self, abs: f64, rel: f64) {
        self.evaluated += 1;
        // NaN residuals must not hide behind f64::max
        self.max_abs = if abs.is_nan() { f64::NAN } else { self.max_abs.max(abs) };
        self.max_rel = if rel.is_nan() || self.max_rel.is_nan() {
            f64::NAN
        } else {
            self.max_rel.max(rel)
        };
        if rel > self.threshold {
            self.above_threshold += 1;
        }
    }

    pub fn skip(&mut self) {
        self.skipped += 1;
    }

    pub fn merge(self, other: Self) -> Self {
        Self {
            evaluated: self.evaluated + other.evaluated,
            skipped: self.skipped + other.skipped,
            max_abs: nan_max(self.max_abs, other.max_abs),
            max_rel: nan_max(self.max_rel, other.max_rel),
            above_threshold: self.above_threshold + other.above_threshold,
            threshold: self.threshold,
        }
    }

    pub fn fraction_above(&self) -> f64 {
        if self.evaluated == 0 {
            0.0
        } else {
            self.above_threshold as f64 / self.evaluated as f64
        }
    }
}

fn nan_max(a: f64, b: f64) -> f64 {
    if a.is_nan() || b.is_nan() {
        f64::NAN
    } else {
        a.max(b)
    }
}

/// Scalar relative residual `|a - b| / (1 + max(|a|, |b|))`.
pub fn rel_residual(a: f64, b: f64) -> f64 {
    (a - b).abs() / (1.0 + a.abs().max(b.abs()))
}

/// Rounds to 15 significant decimal digits.
pub fn round_sig15(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.14e}").parse().unwrap_or(x)
}

pub(crate) fn sig15<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(round_sig15(*x))
}

fn sig15_map<S: Serializer>(m: &BTreeMap<String, f64>, s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    let mut map = s.serialize_map(Some(m.len()))?;
    for (k, v) in m {
        map.serialize_entry(k, &round_sig15(*v))?;
    }
    map.end()
}
