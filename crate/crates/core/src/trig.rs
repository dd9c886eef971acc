//! Finite trigonometric sums over the shifted angles `φ + iπ/k`, their closed
//! forms, and a sampling harness that checks each identity numerically.
//!
//! After multiplying both sides by `∏ cos²(φ + iπ/k) sin²(φ + iπ/k)` every
//! catalogued identity becomes an equality of trigonometric polynomials of
//! degree at most `4k + 2`. Two such polynomials that agree at more than
//! `4k + 3` generic points on a period are equal, so sampling well beyond that
//! count is a polynomial identity test rather than a spot check.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::report::{rel_residual, IdentityReport, ResidualStats};

/// Default distance (radians) kept from every pole.
pub const POLE_MARGIN: f64 = 1e-3;
/// Default relative tolerance for sampled identities.
pub const IDENTITY_TOL: f64 = 1e-9;
/// A relative residual above this counts as a genuine failure.
pub const FAILURE_THRESHOLD: f64 = 0.1;
/// Fraction of points that must exceed [`FAILURE_THRESHOLD`] to confirm a failure.
pub const FAILURE_FRACTION: f64 = 0.9;
pub const DEFAULT_SEED: u64 = 42;

/// The catalogued sums. Each left-hand side runs over `i = 0, …, k-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyTag {
    /// `Σ sec²(φ + iπ/k) = k² sec² kφ`
    Sec2Plain,
    /// `Σ csc²(φ + iπ/k) = k² csc² kφ`
    Csc2Plain,
    /// `Σ sec²(φ + iπ/k) cos(2iπ/k) = k sec² kφ [cos 2(k-1)φ - (k-1) cos 2φ]`
    Sec2CosWeighted,
    /// `Σ sec²(φ + iπ/k) sin(2iπ/k) = k sec² kφ [sin 2(k-1)φ + (k-1) sin 2φ]`
    Sec2SinWeighted,
    /// `Σ tan(φ + iπ/k) cos(2iπ/k) = -k sin (k-2)φ / cos kφ`
    TanCosWeighted,
    /// `Σ tan(φ + iπ/k) sin(2iπ/k) = k cos (k-2)φ / cos kφ - δ_{k,1}`
    TanSinWeighted,
    /// `Σ tan(φ + iπ/k) = k tan kφ`
    TanPlain,
    /// `Σ tan(φ + iπ/k) sin(2φ + 2iπ/k) = k - δ_{k,1} cos 2φ`
    TanSin2Shifted,
    /// `Σ tan(φ + iπ/k) cos(2φ + 2iπ/k) = δ_{k,1} sin 2φ - k tan kφ`
    TanCos2Shifted,
}

impl FamilyTag {
    pub const ALL: [FamilyTag; 9] = [
        FamilyTag::Sec2Plain,
        FamilyTag::Csc2Plain,
        FamilyTag::Sec2CosWeighted,
        FamilyTag::Sec2SinWeighted,
        FamilyTag::TanCosWeighted,
        FamilyTag::TanSinWeighted,
        FamilyTag::TanPlain,
        FamilyTag::TanSin2Shifted,
        FamilyTag::TanCos2Shifted,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyTag::Sec2Plain => "sec2_plain",
            FamilyTag::Csc2Plain => "csc2_plain",
            FamilyTag::Sec2CosWeighted => "sec2_cos_weighted",
            FamilyTag::Sec2SinWeighted => "sec2_sin_weighted",
            FamilyTag::TanCosWeighted => "tan_cos_weighted",
            FamilyTag::TanSinWeighted => "tan_sin_weighted",
            FamilyTag::TanPlain => "tan_plain",
            FamilyTag::TanSin2Shifted => "tan_sin2_shifted",
            FamilyTag::TanCos2Shifted => "tan_cos2_shifted",
        }
    }

    fn singular_on_sine_zeros(self) -> bool {
        self == FamilyTag::Csc2Plain
    }
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Anything with a left side, a right side and a pole set; the sampling
/// harness accepts any implementation.
pub trait TrigIdentity: Sync {
    fn check_id(&self) -> String;
    fn k(&self) -> u32;
    /// Left side, without pole checks.
    fn lhs(&self, phi: f64) -> f64;
    /// Right side, without pole checks.
    fn rhs(&self, phi: f64) -> f64;
    /// Distance in `φ` from the nearest pole of either side.
    fn pole_distance(&self, phi: f64) -> f64;
}

/// One catalogued sum at a fixed `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SumFamily {
    pub tag: FamilyTag,
    k: u32,
}

impl SumFamily {
    pub fn new(tag: FamilyTag, k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParams("k must be at least 1".into()));
        }
        Ok(Self { tag, k })
    }

    /// All nine families at `k`.
    pub fn all(k: u32) -> Result<Vec<Self>> {
        FamilyTag::ALL.iter().map(|&t| Self::new(t, k)).collect()
    }

    /// Direct summation of the left side; fails within [`POLE_MARGIN`] of a pole.
    pub fn lhs_sum(&self, phi: f64) -> Result<f64> {
        self.guard(phi)?;
        Ok(self.lhs(phi))
    }

    /// The closed form; fails within [`POLE_MARGIN`] of a pole.
    pub fn rhs_closed(&self, phi: f64) -> Result<f64> {
        self.guard(phi)?;
        Ok(self.rhs(phi))
    }

    fn guard(&self, phi: f64) -> Result<()> {
        if self.pole_distance(phi) < POLE_MARGIN {
            Err(Error::NearPole {
                phi,
                margin: POLE_MARGIN,
            })
        } else {
            Ok(())
        }
    }
}

fn sec2(x: f64) -> f64 {
    let c = x.cos();
    1.0 / (c * c)
}

fn csc2(x: f64) -> f64 {
    let s = x.sin();
    1.0 / (s * s)
}

fn kronecker_k1(k: u32) -> f64 {
    if k == 1 {
        1.0
    } else {
        0.0
    }
}

/// Distance from `x` to the lattice `offset + nπ`.
pub(crate) fn lattice_distance(x: f64, offset: f64) -> f64 {
    let r = (x - offset).rem_euclid(PI);
    r.min(PI - r)
}

/// Distance in `φ` to the nearest zero of `cos kφ` or `cos(φ + iπ/k)`
/// (`sine = false`), or of the corresponding sines (`sine = true`).
pub(crate) fn pole_distance(k: u32, phi: f64, sine: bool) -> f64 {
    let offset = if sine { 0.0 } else { FRAC_PI_2 };
    let kf = f64::from(k);
    let outer = lattice_distance(kf * phi, offset) / kf;
    (0..k)
        .map(|i| lattice_distance(phi + f64::from(i) * PI / kf, offset))
        .fold(outer, f64::min)
}

impl TrigIdentity for SumFamily {
    fn check_id(&self) -> String {
        format!("trig_identity:{}", self.tag.name())
    }

    fn k(&self) -> u32 {
        self.k
    }

    fn lhs(&self, phi: f64) -> f64 {
        let kf = f64::from(self.k);
        (0..self.k)
            .map(|i| {
                let shift = f64::from(i) * PI / kf;
                let x = phi + shift;
                let twice = 2.0 * shift;
                match self.tag {
                    FamilyTag::Sec2Plain => sec2(x),
                    FamilyTag::Csc2Plain => csc2(x),
                    FamilyTag::Sec2CosWeighted => sec2(x) * twice.cos(),
                    FamilyTag::Sec2SinWeighted => sec2(x) * twice.sin(),
                    FamilyTag::TanCosWeighted => x.tan() * twice.cos(),
                    FamilyTag::TanSinWeighted => x.tan() * twice.sin(),
                    FamilyTag::TanPlain => x.tan(),
                    FamilyTag::TanSin2Shifted => x.tan() * (2.0 * x).sin(),
                    FamilyTag::TanCos2Shifted => x.tan() * (2.0 * x).cos(),
                }
            })
            .sum()
    }

    fn rhs(&self, phi: f64) -> f64 {
        let k = self.k;
        let kf = f64::from(k);
        let kphi = kf * phi;
        let delta = kronecker_k1(k);
        match self.tag {
            FamilyTag::Sec2Plain => kf * kf * sec2(kphi),
            FamilyTag::Csc2Plain => kf * kf * csc2(kphi),
            FamilyTag::Sec2CosWeighted => {
                kf * sec2(kphi) * ((2.0 * (kf - 1.0) * phi).cos() - (kf - 1.0) * (2.0 * phi).cos())
            }
            FamilyTag::Sec2SinWeighted => {
                kf * sec2(kphi) * ((2.0 * (kf - 1.0) * phi).sin() + (kf - 1.0) * (2.0 * phi).sin())
            }
            FamilyTag::TanCosWeighted => -kf * ((kf - 2.0) * phi).sin() / kphi.cos(),
            FamilyTag::TanSinWeighted => kf * ((kf - 2.0) * phi).cos() / kphi.cos() - delta,
            FamilyTag::TanPlain => kf * kphi.tan(),
            FamilyTag::TanSin2Shifted => kf - delta * (2.0 * phi).cos(),
            FamilyTag::TanCos2Shifted => delta * (2.0 * phi).sin() - kf * kphi.tan(),
        }
    }

    fn pole_distance(&self, phi: f64) -> f64 {
        pole_distance(self.k, phi, self.tag.singular_on_sine_zeros())
    }
}

/// How sample angles are drawn on `[0, π)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SamplingPlan {
    pub n_samples: usize,
    /// Minimum distance (radians) from any pole.
    pub pole_margin: f64,
    pub rng_seed: u64,
}

impl Default for SamplingPlan {
    fn default() -> Self {
        Self {
            n_samples: 1000,
            pole_margin: POLE_MARGIN,
            rng_seed: DEFAULT_SEED,
        }
    }
}

impl SamplingPlan {
    pub fn new(n_samples: usize, pole_margin: f64, rng_seed: u64) -> Result<Self> {
        if n_samples == 0 {
            return Err(Error::InvalidParams("n_samples must be positive".into()));
        }
        if !(pole_margin > 0.0 && pole_margin.is_finite()) {
            return Err(Error::InvalidParams("pole margin must be positive".into()));
        }
        Ok(Self {
            n_samples,
            pole_margin,
            rng_seed,
        })
    }

    pub fn with_samples(n_samples: usize) -> Self {
        Self {
            n_samples,
            ..Self::default()
        }
    }

    /// Degree bound of the cleared trig polynomials at `k`.
    pub fn degree_bound(k: u32) -> usize {
        4 * k as usize + 2
    }

    /// Errors unless the plan has strictly more points than the degree bound
    /// plus one.
    pub fn ensure_enough_for(&self, k: u32) -> Result<()> {
        let degree = Self::degree_bound(k);
        if self.n_samples < degree + 1 {
            return Err(Error::InsufficientSamples {
                requested: self.n_samples,
                degree,
                required: degree + 1,
            });
        }
        Ok(())
    }

    /// The deterministic grid `jπ/(4k + 7)` followed by seeded uniform draws,
    /// `n_samples` angles in total.
    pub fn points(&self, k: u32) -> Vec<f64> {
        let grid = 4 * k as usize + 7;
        let step = PI / grid as f64;
        let mut pts: Vec<f64> = (0..grid.min(self.n_samples)).map(|j| j as f64 * step).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(self.rng_seed);
        while pts.len() < self.n_samples {
            pts.push(rng.random_range(0.0..PI));
        }
        pts
    }
}

/// Residual statistics of any identity over the plan's points. Points closer
/// than the margin to a pole are skipped.
pub fn sample_residuals<T: TrigIdentity + ?Sized>(identity: &T, plan: &SamplingPlan, threshold: f64) -> ResidualStats {
    plan.points(identity.k())
        .par_iter()
        .fold(
            || ResidualStats::new(threshold),
            |mut acc, &phi| {
                if identity.pole_distance(phi) < plan.pole_margin {
                    acc.skip();
                } else {
                    let (l, r) = (identity.lhs(phi), identity.rhs(phi));
                    acc.record((l - r).abs(), rel_residual(l, r));
                }
                acc
            },
        )
        .reduce(|| ResidualStats::new(threshold), ResidualStats::merge)
}

fn ensure_survivors(stats: &ResidualStats, plan: &SamplingPlan) -> Result<()> {
    if 2 * stats.evaluated < plan.n_samples {
        return Err(Error::DegenerateSampling {
            accepted: stats.evaluated,
            requested: plan.n_samples,
        });
    }
    Ok(())
}

/// Samples an identity claimed for odd `k` and reports the largest relative
/// residual `|L - R| / (1 + max(|L|, |R|))`.
pub fn verify_identity<T: TrigIdentity + ?Sized>(
    identity: &T,
    plan: &SamplingPlan,
    tolerance: f64,
) -> Result<IdentityReport> {
    let k = identity.k();
    if k.is_multiple_of(2) {
        return Err(Error::OddKRequired(k));
    }
    plan.ensure_enough_for(k)?;
    let stats = sample_residuals(identity, plan, FAILURE_THRESHOLD);
    ensure_survivors(&stats, plan)?;
    Ok(IdentityReport::holds(identity.check_id(), k, &stats, tolerance)
        .with_detail("degree_bound", SamplingPlan::degree_bound(k) as f64))
}

/// Confirms that the plain `sec²` sum has no even-`k` analogue: the report
/// passes when at least 90% of sampled points miss by more than 0.1.
///
/// The even-`k` residual of the `csc²` sum is recorded alongside under
/// `csc2_plain_max_rel_residual` without being asserted either way.
pub fn even_k_negative_control(k: u32, plan: &SamplingPlan) -> Result<IdentityReport> {
    if k % 2 == 1 {
        return Err(Error::EvenKRequired(k));
    }
    plan.ensure_enough_for(k)?;
    let sec = SumFamily::new(FamilyTag::Sec2Plain, k)?;
    let stats = sample_residuals(&sec, plan, FAILURE_THRESHOLD);
    ensure_survivors(&stats, plan)?;
    let fraction = stats.fraction_above();
    let csc = SumFamily::new(FamilyTag::Csc2Plain, k)?;
    let csc_stats = sample_residuals(&csc, plan, FAILURE_THRESHOLD);
    Ok(IdentityReport::fails(
        "even_k_control:sec2_plain",
        k,
        &stats,
        FAILURE_THRESHOLD,
        fraction >= FAILURE_FRACTION,
    )
    .with_detail("fraction_above_threshold", fraction)
    .with_detail("csc2_plain_max_rel_residual", csc_stats.max_rel))
}

/// Pairs whose left sides are related by `d/dφ tan = sec²`.
pub const DERIVATIVE_PAIRS: [(FamilyTag, FamilyTag); 3] = [
    (FamilyTag::TanCosWeighted, FamilyTag::Sec2CosWeighted),
    (FamilyTag::TanSinWeighted, FamilyTag::Sec2SinWeighted),
    (FamilyTag::TanPlain, FamilyTag::Sec2Plain),
];

/// Distance from poles required for the finite-difference check.
pub const DERIVATIVE_MARGIN: f64 = 0.05;
pub const DERIVATIVE_STEP: f64 = 1e-5;
pub const DERIVATIVE_TOL: f64 = 1e-5;

/// Central differences of the `tan`-sums (both sides) against the
/// corresponding `sec²`-sums (both sides) at interior points.
pub fn verify_derivative_consistency(k: u32, plan: &SamplingPlan, h: f64, tolerance: f64) -> Result<IdentityReport> {
    let interior = SamplingPlan {
        pole_margin: plan.pole_margin.max(DERIVATIVE_MARGIN),
        ..*plan
    };
    let mut stats = ResidualStats::new(FAILURE_THRESHOLD);
    for (integrated, derivative) in DERIVATIVE_PAIRS {
        let integrated = SumFamily::new(integrated, k)?;
        let derivative = SumFamily::new(derivative, k)?;
        for phi in interior.points(k) {
            if integrated.pole_distance(phi) < interior.pole_margin + h
                || derivative.pole_distance(phi) < interior.pole_margin
            {
                stats.skip();
                continue;
            }
            let d_lhs = (integrated.lhs(phi + h) - integrated.lhs(phi - h)) / (2.0 * h);
            let d_rhs = (integrated.rhs(phi + h) - integrated.rhs(phi - h)) / (2.0 * h);
            for (d, target) in [(d_lhs, derivative.lhs(phi)), (d_rhs, derivative.rhs(phi))] {
                stats.record((d - target).abs(), rel_residual(d, target));
            }
        }
    }
    Ok(
        IdentityReport::holds("trig_derivative_consistency", k, &stats, tolerance)
            .with_detail("step", h)
            .with_detail("interior_margin", interior.pole_margin),
    )
}
