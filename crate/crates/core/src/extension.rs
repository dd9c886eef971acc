//! Angular fermionic coefficient operators of the two extensions of the TTW
//! Hamiltonian
//!
//! ```text
//! H_k = -∂_r² - (1/r)∂_r - (1/r²)∂_φ² + ω²r²
//!       + (k²/r²)[a(a-1) sec² kφ + b(b-1) csc² kφ]
//! ```
//!
//! Only the multiplicative angular sector is represented. The derivative
//! terms are common to every Hamiltonian compared here and cancel in each
//! difference, so an operator is a map from `φ` to a 4x4 Fock matrix carrying
//! the explicit `1/r²` prefactor.
//!
//! * [`gamma_susy`] is `4ωΓ`, the fermionic part of the supersymmetric
//!   extension apart from `4ωY`.
//! * [`dihedral_difference`] is `ℋ_k - H_k` with every reflection `R^i I`
//!   replaced by its Fock-space matrix.
//! * [`gamma_tilde_rotated`] and [`gamma_tilde_expanded`] are the same
//!   operator `4ωΓ̃` written with rotated number operators and in the
//!   `{N_x, b†_x b_y + b†_y b_x, N_y}` basis.
//!
//! For odd `k` all four coincide.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::dihedral::{self, sin_cos, DihedralParams};
use crate::error::{Error, Result};
use crate::fock::{hopping, max_abs_diff, max_rel_diff, number, FockOperator, Mode};
use crate::report::{IdentityReport, ResidualStats};
use crate::trig::{self, SamplingPlan, FAILURE_FRACTION, FAILURE_THRESHOLD, POLE_MARGIN};

/// Tolerance for exact algebraic rewritings (finite matrix products only).
pub const EXACT_TOL: f64 = 1e-12;
/// Tolerance for the bridge identity, which involves no angle at all.
pub const BRIDGE_TOL: f64 = 1e-13;
/// Tolerance for equivalences that rest on trigonometric identities.
pub const SAMPLED_TOL: f64 = 1e-9;

/// TTW parameters and the radius at which angular operators are evaluated.
///
/// Couplings may be any real numbers; the physical range `a, b > 1/2` is not
/// enforced.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    pub k: u32,
    pub a: f64,
    pub b: f64,
    pub omega: f64,
    pub r: f64,
}

impl ModelParams {
    pub fn new(k: u32, a: f64, b: f64, omega: f64, r: f64) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParams("k must be at least 1".into()));
        }
        if !(a.is_finite() && b.is_finite()) {
            return Err(Error::InvalidParams("couplings must be finite".into()));
        }
        if !(omega.is_finite() && omega >= 0.0) {
            return Err(Error::InvalidParams("omega must be finite and non-negative".into()));
        }
        if !(r.is_finite() && r > 0.0) {
            return Err(Error::InvalidParams("radius must be positive".into()));
        }
        Ok(Self { k, a, b, omega, r })
    }

    /// Unit frequency and unit radius.
    pub fn couplings(k: u32, a: f64, b: f64) -> Result<Self> {
        Self::new(k, a, b, 1.0, 1.0)
    }

    fn dihedral(&self) -> DihedralParams {
        DihedralParams::new(self.k).expect("k validated on construction")
    }

    fn require_odd(&self) -> Result<()> {
        if self.k.is_multiple_of(2) {
            Err(Error::OddKRequired(self.k))
        } else {
            Ok(())
        }
    }

    fn inv_r2(&self) -> f64 {
        1.0 / (self.r * self.r)
    }

    /// Distance in `φ` from any zero of `cos kφ`, `sin kφ`, `cos(φ + iπ/k)`
    /// or `sin(φ + iπ/k)`.
    pub fn pole_distance(&self, phi: f64) -> f64 {
        trig::pole_distance(self.k, phi, false).min(trig::pole_distance(self.k, phi, true))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AngularKind {
    GammaSusy,
    GammaTildeRotated,
    GammaTildeExpanded,
    DihedralDifference,
}

/// A `φ`-dependent Fock operator with a `1/r²` prefactor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngularOperator {
    pub kind: AngularKind,
    pub params: ModelParams,
}

impl AngularOperator {
    /// Evaluates at `φ`, refusing angles within [`POLE_MARGIN`] of a pole.
    pub fn evaluate(&self, phi: f64) -> Result<FockOperator> {
        if self.params.pole_distance(phi) < POLE_MARGIN {
            return Err(Error::NearPole {
                phi,
                margin: POLE_MARGIN,
            });
        }
        Ok(self.assemble(phi))
    }

    /// Evaluates without pole checks.
    pub fn assemble(&self, phi: f64) -> FockOperator {
        let p = &self.params;
        match self.kind {
            AngularKind::GammaSusy => assemble_gamma_susy(p, phi),
            AngularKind::GammaTildeRotated => assemble_gamma_tilde_rotated(p, phi),
            AngularKind::GammaTildeExpanded => assemble_gamma_tilde_expanded(p, phi),
            AngularKind::DihedralDifference => assemble_dihedral_difference(p, phi),
        }
    }
}

/// `4ωΓ` of the supersymmetric extension, defined for every `k >= 1`.
pub fn gamma_susy(p: &ModelParams) -> AngularOperator {
    AngularOperator {
        kind: AngularKind::GammaSusy,
        params: *p,
    }
}

/// `4ωΓ̃` in terms of rotated number operators; odd `k` only.
pub fn gamma_tilde_rotated(p: &ModelParams) -> Result<AngularOperator> {
    p.require_odd()?;
    Ok(AngularOperator {
        kind: AngularKind::GammaTildeRotated,
        params: *p,
    })
}

/// `4ωΓ̃` expanded in the `{N_x, hopping, N_y}` basis; odd `k` only.
pub fn gamma_tilde_expanded(p: &ModelParams) -> Result<AngularOperator> {
    p.require_odd()?;
    Ok(AngularOperator {
        kind: AngularKind::GammaTildeExpanded,
        params: *p,
    })
}

/// `ℋ_k - H_k` with group elements realized on Fock space; odd `k` only.
pub fn dihedral_difference(p: &ModelParams) -> Result<AngularOperator> {
    p.require_odd()?;
    Ok(AngularOperator {
        kind: AngularKind::DihedralDifference,
        params: *p,
    })
}

fn sec2(x: f64) -> f64 {
    1.0 / x.cos().powi(2)
}

fn csc2(x: f64) -> f64 {
    1.0 / x.sin().powi(2)
}

fn combo(nx: f64, hop: f64, ny: f64) -> FockOperator {
    number(Mode::X) * nx + hopping() * hop + number(Mode::Y) * ny
}

/// `4ωΓ` at a real order `k > 0`. The supersymmetric extension is defined
/// for any positive `k`, though no dihedral counterpart exists unless `k` is
/// an odd integer.
pub fn gamma_susy_real_k(k: f64, a: f64, b: f64, r: f64, phi: f64) -> Result<FockOperator> {
    if !(k.is_finite() && k > 0.0) {
        return Err(Error::InvalidParams("k must be positive".into()));
    }
    if !(a.is_finite() && b.is_finite() && phi.is_finite()) {
        return Err(Error::NonFinite);
    }
    if !(r.is_finite() && r > 0.0) {
        return Err(Error::InvalidParams("radius must be positive".into()));
    }
    // zeros of cos kφ and sin kφ together form the lattice kφ ∈ (π/2)ℤ
    if trig::lattice_distance(2.0 * k * phi, 0.0) / (2.0 * k) < POLE_MARGIN {
        return Err(Error::NearPole {
            phi,
            margin: POLE_MARGIN,
        });
    }
    Ok(gamma_susy_matrix(k, a, b, 1.0 / (r * r), phi))
}

fn assemble_gamma_susy(p: &ModelParams, phi: f64) -> FockOperator {
    gamma_susy_matrix(f64::from(p.k), p.a, p.b, p.inv_r2(), phi)
}

fn gamma_susy_matrix(kf: f64, a: f64, b: f64, inv_r2: f64, phi: f64) -> FockOperator {
    let half_k = kf / 2.0;
    let (s_k, c_k) = (kf * phi).sin_cos();
    let (s_km2, c_km2) = ((kf - 2.0) * phi).sin_cos();
    let (s_2, c_2) = (2.0 * phi).sin_cos();

    let a_block = combo(
        c_km2 * c_k + half_k * (1.0 - c_2),
        -(s_km2 * c_k + half_k * s_2),
        -c_km2 * c_k + half_k * (1.0 + c_2),
    );
    let b_block = combo(
        s_km2 * s_k + half_k * (1.0 - c_2),
        c_km2 * s_k - half_k * s_2,
        -s_km2 * s_k + half_k * (1.0 + c_2),
    );
    (a_block * (a / (c_k * c_k)) + b_block * (b / (s_k * s_k))) * (2.0 * kf * inv_r2)
}

/// Index of the rotated operator paired with `sec²(φ + iπ/k)`, reduced into
/// `[0, 2k)`.
pub fn sec_partner_index(k: u32, i: u32) -> u32 {
    (k + 2 * i) % (2 * k)
}

/// Index of the rotated operator paired with `csc²(φ + iπ/k)`.
pub fn csc_partner_index(k: u32, i: u32) -> u32 {
    (2 * i) % (2 * k)
}

fn shifted(k: u32, i: u32, phi: f64) -> f64 {
    phi + f64::from(i) * PI / f64::from(k)
}

fn assemble_gamma_tilde_rotated(p: &ModelParams, phi: f64) -> FockOperator {
    assemble_gamma_tilde_with(p, phi, |dp, j| dihedral::rotated_number(dp, i64::from(j)))
}

/// `4ωΓ̃` with a caller-chosen rotated number operator for each index.
pub(crate) fn assemble_gamma_tilde_with(
    p: &ModelParams,
    phi: f64,
    rotated_number: impl Fn(&DihedralParams, u32) -> FockOperator,
) -> FockOperator {
    let dp = p.dihedral();
    let sum = (0..p.k).fold(FockOperator::zero(), |acc, i| {
        let x = shifted(p.k, i, phi);
        acc + rotated_number(&dp, sec_partner_index(p.k, i)) * (p.a * sec2(x))
            + rotated_number(&dp, csc_partner_index(p.k, i)) * (p.b * csc2(x))
    });
    sum * (2.0 * p.inv_r2())
}

fn assemble_gamma_tilde_expanded(p: &ModelParams, phi: f64) -> FockOperator {
    let kf = f64::from(p.k);
    let sum = (0..p.k).fold(FockOperator::zero(), |acc, i| {
        let x = shifted(p.k, i, phi);
        let (s, c) = sin_cos(2.0 * f64::from(i) * PI / kf);
        acc + combo(c + 1.0, -s, 1.0 - c) * (p.a * sec2(x)) + combo(1.0 - c, s, c + 1.0) * (p.b * csc2(x))
    });
    sum * p.inv_r2()
}

fn assemble_dihedral_difference(p: &ModelParams, phi: f64) -> FockOperator {
    let dp = p.dihedral();
    let id = FockOperator::identity();
    let sum = (0..p.k).fold(FockOperator::zero(), |acc, i| {
        let x = shifted(p.k, i, phi);
        let sec_elem = dihedral::reflection_closed(&dp, i64::from(p.k + 2 * i));
        let csc_elem = dihedral::reflection_closed(&dp, 2 * i64::from(i));
        acc + (id - sec_elem) * (p.a * sec2(x)) + (id - csc_elem) * (p.b * csc2(x))
    });
    sum * p.inv_r2()
}

/// Angular potential of `ℋ_k` with every group element set to 1, minus the
/// angular potential of `H_k`. Zero for odd `k`.
pub fn projected_potential_gap(p: &ModelParams, phi: f64) -> f64 {
    let kf = f64::from(p.k);
    let (sec_sum, csc_sum) = (0..p.k).fold((0.0, 0.0), |(s, c), i| {
        let x = shifted(p.k, i, phi);
        (s + sec2(x), c + csc2(x))
    });
    let extended = p.a * (p.a - 1.0) * sec_sum + p.b * (p.b - 1.0) * csc_sum;
    let ttw = kf * kf * (p.a * (p.a - 1.0) * sec2(kf * phi) + p.b * (p.b - 1.0) * csc2(kf * phi));
    (extended - ttw) * p.inv_r2()
}

/// `4ωY = 2ω[N_x + N_y - k(a + b) - 1]`.
pub fn y_operator(p: &ModelParams) -> FockOperator {
    let shift = f64::from(p.k) * (p.a + p.b) + 1.0;
    (number(Mode::X) + number(Mode::Y) - FockOperator::identity() * shift) * (2.0 * p.omega)
}

/// `-2ω[½(1 + R^k) I + k(a + b)]` assembled from the group realization.
pub fn bridge_operator(p: &ModelParams) -> FockOperator {
    let dp = p.dihedral();
    let inv = dihedral::inversion_i();
    let rk_i = dihedral::reflection_closed(&dp, i64::from(p.k));
    let half_sum = (inv + rk_i) * 0.5;
    let shift = f64::from(p.k) * (p.a + p.b);
    (half_sum + FockOperator::identity() * shift) * (-2.0 * p.omega)
}

/// Sampled entrywise comparison of two angular maps at `k`.
pub fn compare_sampled<L, R>(k: u32, plan: &SamplingPlan, lhs: L, rhs: R, threshold: f64) -> ResidualStats
where
    L: Fn(f64) -> FockOperator + Sync,
    R: Fn(f64) -> FockOperator + Sync,
{
    let poles = ModelParams {
        k,
        a: 0.0,
        b: 0.0,
        omega: 0.0,
        r: 1.0,
    };
    plan.points(k)
        .par_iter()
        .fold(
            || ResidualStats::new(threshold),
            |mut acc, &phi| {
                if poles.pole_distance(phi) < plan.pole_margin {
                    acc.skip();
                } else {
                    let (l, r) = (lhs(phi), rhs(phi));
                    acc.record(max_abs_diff(&l, &r), max_rel_diff(&l, &r));
                }
                acc
            },
        )
        .reduce(|| ResidualStats::new(threshold), ResidualStats::merge)
}

fn ensure_survivors(stats: &ResidualStats, plan: &SamplingPlan) -> Result<()> {
    if 2 * stats.evaluated < plan.n_samples {
        Err(Error::DegenerateSampling {
            accepted: stats.evaluated,
            requested: plan.n_samples,
        })
    } else {
        Ok(())
    }
}

/// Checks `4ωΓ̃ = 4ωΓ` pointwise.
///
/// For odd `k` this must hold to [`SAMPLED_TOL`]. For even `k` the
/// equivalence is not claimed, and the report is an expected-failure control
/// that passes when at least 90% of points miss by more than 0.1.
pub fn verify_gamma_equivalence(p: &ModelParams, plan: &SamplingPlan) -> Result<IdentityReport> {
    verify_gamma_equivalence_at(p, plan, SAMPLED_TOL)
}

/// [`verify_gamma_equivalence`] with an explicit odd-`k` tolerance.
pub fn verify_gamma_equivalence_at(p: &ModelParams, plan: &SamplingPlan, tolerance: f64) -> Result<IdentityReport> {
    plan.ensure_enough_for(p.k)?;
    let stats = compare_sampled(
        p.k,
        plan,
        |phi| assemble_gamma_tilde_rotated(p, phi),
        |phi| assemble_gamma_susy(p, phi),
        FAILURE_THRESHOLD,
    );
    ensure_survivors(&stats, plan)?;
    let report = if p.k % 2 == 1 {
        IdentityReport::holds("gamma_equivalence", p.k, &stats, tolerance)
    } else {
        let confirmed = stats.fraction_above() >= FAILURE_FRACTION;
        IdentityReport::fails("gamma_equivalence", p.k, &stats, FAILURE_THRESHOLD, confirmed)
    };
    Ok(report.with_detail("fraction_above_threshold", stats.fraction_above()))
}

/// Pairwise agreement of the three assemblies of `4ωΓ̃`: the dihedral
/// difference, the rotated-operator form and the expanded form.
pub fn verify_assembly_paths(p: &ModelParams, plan: &SamplingPlan) -> Result<IdentityReport> {
    p.require_odd()?;
    plan.ensure_enough_for(p.k)?;
    let rotated = |phi| assemble_gamma_tilde_rotated(p, phi);
    let expanded = |phi| assemble_gamma_tilde_expanded(p, phi);
    let difference = |phi| assemble_dihedral_difference(p, phi);
    let pairs = [
        (
            "difference_vs_rotated",
            compare_sampled(p.k, plan, difference, rotated, FAILURE_THRESHOLD),
        ),
        (
            "rotated_vs_expanded",
            compare_sampled(p.k, plan, rotated, expanded, FAILURE_THRESHOLD),
        ),
        (
            "difference_vs_expanded",
            compare_sampled(p.k, plan, difference, expanded, FAILURE_THRESHOLD),
        ),
    ];
    let stats = pairs
        .iter()
        .map(|(_, s)| *s)
        .reduce(ResidualStats::merge)
        .expect("three pairs");
    ensure_survivors(&pairs[0].1, plan)?;
    let mut report = IdentityReport::holds("assembly_paths", p.k, &stats, EXACT_TOL);
    for (name, s) in pairs {
        report = report.with_detail(name, s.max_rel);
    }
    Ok(report)
}

/// Checks `-2ω[½(1 + R^k) I + k(a + b)] = 4ωY`.
pub fn verify_susy_bridge(p: &ModelParams) -> IdentityReport {
    let lhs = bridge_operator(p);
    let rhs = y_operator(p);
    let mut stats = ResidualStats::new(FAILURE_THRESHOLD);
    stats.record(max_abs_diff(&lhs, &rhs), max_rel_diff(&lhs, &rhs));
    IdentityReport::holds("susy_bridge", p.k, &stats, BRIDGE_TOL)
}

/// Checks the full angular-plus-fermionic sector of the supersymmetric
/// Hamiltonian: `(ℋ_k - H_k) + bridge = 4ωΓ + 4ωY` at sampled angles.
pub fn verify_supersymmetric_hamiltonian(p: &ModelParams, plan: &SamplingPlan) -> Result<IdentityReport> {
    p.require_odd()?;
    plan.ensure_enough_for(p.k)?;
    let bridge = bridge_operator(p);
    let y = y_operator(p);
    let stats = compare_sampled(
        p.k,
        plan,
        |phi| assemble_dihedral_difference(p, phi) + bridge,
        |phi| assemble_gamma_susy(p, phi) + y,
        FAILURE_THRESHOLD,
    );
    ensure_survivors(&stats, plan)?;
    Ok(IdentityReport::holds(
        "supersymmetric_hamiltonian",
        p.k,
        &stats,
        SAMPLED_TOL,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::FockBasis;
    use nalgebra::Vector4;

    fn params(k: u32, a: f64, b: f64) -> ModelParams {
        ModelParams::couplings(k, a, b).unwrap()
    }

    #[test]
    fn rejects_bad_params() {
        assert!(ModelParams::new(0, 1.0, 1.0, 1.0, 1.0).is_err());
        assert!(ModelParams::new(3, 1.0, 1.0, 1.0, 0.0).is_err());
        assert!(ModelParams::new(3, 1.0, 1.0, -1.0, 1.0).is_err());
        assert!(ModelParams::new(3, f64::NAN, 1.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn even_k_constructors_are_refused() {
        let p = params(4, 1.0, 1.0);
        assert_eq!(gamma_tilde_rotated(&p), Err(Error::OddKRequired(4)));
        assert!(gamma_tilde_expanded(&p).is_err());
        assert!(dihedral_difference(&p).is_err());
    }

    /// Term-by-term evaluation of `4ωΓ` at `k = 1`, `a = 1`, `b = 0`,
    /// `φ = π/6`: the `N_x` coefficient is `2 sec²φ (cos²φ + sin²φ) = 8/3`
    /// and the other two vanish.
    #[test]
    fn gamma_susy_k1_oracle() {
        let phi = PI / 6.0;
        let (s, c) = phi.sin_cos();
        let sec2 = 1.0 / (c * c);
        let nx = 2.0 * sec2 * (c * c + 0.5 * (1.0 - (2.0 * phi).cos()));
        let hop = -2.0 * sec2 * ((-phi).sin() * c + 0.5 * (2.0 * phi).sin());
        let ny = 2.0 * sec2 * (-c * c + 0.5 * (1.0 + (2.0 * phi).cos()));
        assert!((nx - 8.0 / 3.0).abs() < 1e-14);
        assert!(hop.abs() < 1e-15 && ny.abs() < 1e-15);
        let _ = s;

        let g = gamma_susy(&params(1, 1.0, 0.0)).evaluate(phi).unwrap();
        let expected = combo(nx, hop, ny);
        assert!(max_abs_diff(&g, &expected) < 1e-14);
    }

    #[test]
    fn gamma_tilde_k1_reduces_to_number_operators() {
        let p = params(1, 1.3, 0.7);
        let phi = 0.4;
        let expected = (number(Mode::X) * (1.3 * sec2(phi)) + number(Mode::Y) * (0.7 * csc2(phi))) * 2.0;
        let g = gamma_tilde_rotated(&p).unwrap().evaluate(phi).unwrap();
        assert!(max_abs_diff(&g, &expected) < 1e-13);
    }

    #[test]
    fn three_paths_agree_at_k3() {
        for k in [1, 3, 5] {
            let p = params(k, 1.7, 0.4);
            for phi in [0.13, 0.71, 2.3] {
                let r = gamma_tilde_rotated(&p).unwrap().evaluate(phi).unwrap();
                let e = gamma_tilde_expanded(&p).unwrap().evaluate(phi).unwrap();
                let d = dihedral_difference(&p).unwrap().evaluate(phi).unwrap();
                assert!(max_rel_diff(&r, &e) < EXACT_TOL);
                assert!(max_rel_diff(&r, &d) < EXACT_TOL);
            }
        }
    }

    #[test]
    fn sign_flipped_index_convention_gives_same_operator() {
        // b_{j + 2k} = -b_j instead of reducing modulo 2k
        let p = params(5, 1.1, 2.3);
        let phi = 0.77;
        let unreduced = assemble_gamma_tilde_with(&p, phi, |dp, j| {
            let raw = if j < p.k { j + 2 * p.k } else { j };
            dihedral::rotated_number(dp, i64::from(raw))
        });
        let reduced = assemble_gamma_tilde_rotated(&p, phi);
        assert!(max_abs_diff(&unreduced, &reduced) < 1e-12);
    }

    #[test]
    fn vacuum_is_annihilated() {
        let p = params(3, 1.7, 0.4);
        let vac = FockBasis::vacuum();
        let ops = [
            gamma_susy(&p),
            gamma_tilde_rotated(&p).unwrap(),
            gamma_tilde_expanded(&p).unwrap(),
            dihedral_difference(&p).unwrap(),
        ];
        for op in ops {
            for phi in [0.2, 1.0, 2.5] {
                assert_eq!(op.evaluate(phi).unwrap().apply(&vac), Vector4::zeros(), "{:?}", op.kind);
            }
        }
    }

    #[test]
    fn near_pole_evaluation_fails() {
        let g = gamma_susy(&params(3, 1.0, 1.0));
        assert!(matches!(g.evaluate(PI / 6.0), Err(Error::NearPole { .. })));
        assert!(matches!(g.evaluate(PI / 3.0 + 1e-5), Err(Error::NearPole { .. })));
    }

    #[test]
    fn identity_projection_recovers_ttw_potential() {
        for k in [1, 3, 5, 7] {
            let p = params(k, 1.7, 2.4);
            for phi in [0.05, 0.3, 1.1] {
                let gap = projected_potential_gap(&p, phi);
                let scale = f64::from(k * k) * (sec2(f64::from(k) * phi) + csc2(f64::from(k) * phi));
                assert!(gap.abs() / (1.0 + scale) < 1e-12, "k={k} phi={phi} gap={gap:e}");
            }
        }
    }

    #[test]
    fn y_operator_values() {
        let p = ModelParams::new(3, 0.5, 1.5, 0.75, 1.0).unwrap();
        let s = 3.0 * 2.0;
        let expected = FockOperator::from_real_diagonal([-s - 1.0, -s, -s, -s + 1.0]) * 1.5;
        assert!(max_abs_diff(&y_operator(&p), &expected) < 1e-15);
        let free = ModelParams::new(7, 0.0, 0.0, 0.5, 1.0).unwrap();
        assert_eq!(
            y_operator(&free),
            FockOperator::from_real_diagonal([-1.0, 0.0, 0.0, 1.0])
        );
        let y = y_operator(&p);
        assert!(y.is_hermitian(0.0));
        let dp = DihedralParams::new(3).unwrap();
        assert_eq!(
            crate::fock::commutator(&y, &dihedral::inversion_i()),
            FockOperator::zero()
        );
        assert_eq!(
            crate::fock::commutator(&y, &dihedral::reflection_closed(&dp, 3)),
            FockOperator::zero()
        );
    }

    #[test]
    fn bridge_identity_cases() {
        let dp = DihedralParams::new(5).unwrap();
        let half = (dihedral::inversion_i() + dihedral::reflection_closed(&dp, 5)) * 0.5;
        let expected = FockOperator::identity() - number(Mode::X) - number(Mode::Y);
        assert_eq!(half, expected);
        assert_eq!(half, FockOperator::from_real_diagonal([1.0, 0.0, 0.0, -1.0]));

        assert!(verify_susy_bridge(&ModelParams::new(5, 1.2, 3.4, 0.9, 1.0).unwrap()).pass);
        let free = ModelParams::new(2, 0.0, 0.0, 1.3, 1.0).unwrap();
        let target = (number(Mode::X) + number(Mode::Y) - FockOperator::identity()) * 2.6;
        assert!(max_abs_diff(&bridge_operator(&free), &target) < 1e-15);
        let still = ModelParams::new(3, 2.0, 1.0, 0.0, 1.0).unwrap();
        assert_eq!(bridge_operator(&still).max_abs(), 0.0);
        assert_eq!(y_operator(&still).max_abs(), 0.0);
    }

    #[test]
    fn gamma_equivalence_odd_and_even() {
        let plan = SamplingPlan::with_samples(500);
        assert!(verify_gamma_equivalence(&params(3, 1.7, 0.4), &plan).unwrap().pass);
        assert!(verify_gamma_equivalence(&params(1, 0.3, 4.0), &plan).unwrap().pass);
        let even = verify_gamma_equivalence(&params(2, 1.0, 1.0), &plan).unwrap();
        assert!(even.pass, "{even:?}");
        assert!(even.max_rel_residual > 0.1);
        assert_eq!(even.status(), crate::report::Status::ExpectedFailure);
    }

    #[test]
    fn full_supersymmetric_sector() {
        let p = ModelParams::new(5, 1.4, 0.6, 2.0, 1.5).unwrap();
        assert!(
            verify_supersymmetric_hamiltonian(&p, &SamplingPlan::with_samples(300))
                .unwrap()
                .pass
        );
    }

    #[test]
    fn radius_scaling() {
        let p1 = ModelParams::new(3, 1.2, 0.8, 1.0, 1.0).unwrap();
        let p2 = ModelParams::new(3, 1.2, 0.8, 1.0, 2.0).unwrap();
        let phi = 0.9;
        let g1 = gamma_susy(&p1).evaluate(phi).unwrap();
        let g2 = gamma_susy(&p2).evaluate(phi).unwrap();
        assert!(max_abs_diff(&(g1 * 0.25), &g2) < 1e-13);
    }
}
