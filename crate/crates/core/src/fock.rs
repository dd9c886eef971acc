//! Operators on the Fock space of two fermionic modes `x` and `y`.
//!
//! The space is four dimensional. Basis vectors are ordered by occupation
//! numbers `(n_x, n_y)`:
//!
//! | index | `(n_x, n_y)` |
//! |-------|--------------|
//! | 0     | `(0, 0)`     |
//! | 1     | `(1, 0)`     |
//! | 2     | `(0, 1)`     |
//! | 3     | `(1, 1)`     |
//!
//! so that `index = n_x + 2 n_y`. Ladder operators follow a Jordan-Wigner
//! convention in which mode `x` carries no sign string and mode `y` carries
//! the parity `(-1)^{n_x}` of mode `x`. The opposite ordering is available
//! through [`JwConvention::StringOnX`]; every bilinear `b†b` expression is
//! the same in both.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{Matrix4, Vector4};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::report::{IdentityReport, ResidualStats};

/// Fock space dimension.
pub const DIM: usize = 4;

/// One of the two fermionic modes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    X,
    Y,
}

impl Mode {
    pub const ALL: [Mode; 2] = [Mode::X, Mode::Y];
}

/// Which mode carries the Jordan-Wigner parity string.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum JwConvention {
    /// `b_x` is bare, `b_y` picks up `(-1)^{n_x}`.
    #[default]
    StringOnY,
    /// `b_y` is bare, `b_x` picks up `(-1)^{n_y}`.
    StringOnX,
}

/// Fixed occupation-number ordering of the basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FockBasis;

impl FockBasis {
    pub const STATES: [(u8, u8); DIM] = [(0, 0), (1, 0), (0, 1), (1, 1)];

    /// Index of the basis vector with occupations `(n_x, n_y)`.
    ///
    /// Panics if an occupation is not 0 or 1.
    pub fn index(n_x: u8, n_y: u8) -> usize {
        assert!(n_x <= 1 && n_y <= 1, "fermionic occupations are 0 or 1");
        usize::from(n_x) + 2 * usize::from(n_y)
    }

    pub fn occupations(index: usize) -> (u8, u8) {
        Self::STATES[index]
    }

    pub fn occupation(index: usize, mode: Mode) -> u8 {
        let (n_x, n_y) = Self::STATES[index];
        match mode {
            Mode::X => n_x,
            Mode::Y => n_y,
        }
    }

    pub fn vector(n_x: u8, n_y: u8) -> Vector4<Complex64> {
        let mut v = Vector4::zeros();
        v[Self::index(n_x, n_y)] = Complex64::new(1.0, 0.0);
        v
    }

    pub fn vacuum() -> Vector4<Complex64> {
        Self::vector(0, 0)
    }
}

/// A linear operator on the two-mode Fock space, stored as a dense 4x4
/// complex matrix in [`FockBasis`] ordering.
#[derive(Clone, Copy, PartialEq)]
pub struct FockOperator(Matrix4<Complex64>);

impl FockOperator {
    /// Wraps a matrix, rejecting NaN or infinite entries.
    pub fn try_from_matrix(m: Matrix4<Complex64>) -> Result<Self> {
        if m.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            Ok(Self(m))
        } else {
            Err(Error::NonFinite)
        }
    }

    /// Builds an operator from real row-major entries.
    pub fn from_real_rows(rows: [[f64; DIM]; DIM]) -> Self {
        Self(Matrix4::from_fn(|i, j| Complex64::new(rows[i][j], 0.0)))
    }

    pub fn from_real_diagonal(diag: [f64; DIM]) -> Self {
        Self(Matrix4::from_fn(|i, j| {
            if i == j {
                Complex64::new(diag[i], 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        }))
    }

    pub fn identity() -> Self {
        Self(Matrix4::identity())
    }

    pub fn zero() -> Self {
        Self(Matrix4::zeros())
    }

    pub fn matrix(&self) -> &Matrix4<Complex64> {
        &self.0
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.0[(row, col)]
    }

    /// Returns a copy with `delta` added to one entry.
    pub fn with_entry_shifted(mut self, row: usize, col: usize, delta: Complex64) -> Self {
        self.0[(row, col)] += delta;
        self
    }

    pub fn apply(&self, state: &Vector4<Complex64>) -> Vector4<Complex64> {
        self.0 * state
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    pub fn compose(&self, rhs: &Self) -> Self {
        Self(self.0 * rhs.0)
    }

    pub fn scale(&self, s: f64) -> Self {
        Self(self.0 * Complex64::new(s, 0.0))
    }

    /// `A^n` by repeated multiplication.
    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::identity(), |acc, _| acc.compose(self))
    }

    pub fn trace(&self) -> Complex64 {
        self.0.trace()
    }

    /// Hilbert-Schmidt inner product `tr(A† B)`.
    pub fn hs_inner(&self, rhs: &Self) -> Complex64 {
        (self.0.adjoint() * rhs.0).trace()
    }

    /// Largest absolute value of any entry.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest imaginary part in absolute value.
    pub fn max_imag(&self) -> f64 {
        self.0.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        max_abs_diff(self, &self.adjoint()) <= tol
    }
}

impl fmt::Debug for FockOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FockOperator [")?;
        for i in 0..DIM {
            write!(f, "  ")?;
            for j in 0..DIM {
                let z = self.0[(i, j)];
                if z.im == 0.0 {
                    write!(f, "{:>10.6} ", z.re)?;
                } else {
                    write!(f, "{:>10.6}{:+.6}i ", z.re, z.im)?;
                }
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl Add for FockOperator {
    type Output = FockOperator;
    fn add(self, rhs: Self) -> Self {
        Self(self.0 + rhs.0)
    }
}

impl Sub for FockOperator {
    type Output = FockOperator;
    fn sub(self, rhs: Self) -> Self {
        Self(self.0 - rhs.0)
    }
}

impl Neg for FockOperator {
    type Output = FockOperator;
    fn neg(self) -> Self {
        Self(-self.0)
    }
}

impl Mul for FockOperator {
    type Output = FockOperator;
    fn mul(self, rhs: Self) -> Self {
        Self(self.0 * rhs.0)
    }
}

impl Mul<f64> for FockOperator {
    type Output = FockOperator;
    fn mul(self, rhs: f64) -> Self {
        self.scale(rhs)
    }
}

impl Mul<FockOperator> for f64 {
    type Output = FockOperator;
    fn mul(self, rhs: FockOperator) -> FockOperator {
        rhs.scale(self)
    }
}

/// Annihilator `b_m` under the default Jordan-Wigner convention.
pub fn annihilator(m: Mode) -> FockOperator {
    annihilator_with(m, JwConvention::default())
}

/// Annihilator `b_m` under an explicit Jordan-Wigner convention.
pub fn annihilator_with(m: Mode, conv: JwConvention) -> FockOperator {
    let other = match m {
        Mode::X => Mode::Y,
        Mode::Y => Mode::X,
    };
    let carries_string = matches!(
        (m, conv),
        (Mode::Y, JwConvention::StringOnY) | (Mode::X, JwConvention::StringOnX)
    );
    let mut out = Matrix4::zeros();
    for src in 0..DIM {
        if FockBasis::occupation(src, m) == 0 {
            continue;
        }
        let (mut n_x, mut n_y) = FockBasis::occupations(src);
        match m {
            Mode::X => n_x = 0,
            Mode::Y => n_y = 0,
        }
        let sign = if carries_string && FockBasis::occupation(src, other) == 1 {
            -1.0
        } else {
            1.0
        };
        out[(FockBasis::index(n_x, n_y), src)] = Complex64::new(sign, 0.0);
    }
    FockOperator(out)
}

pub fn creator(m: Mode) -> FockOperator {
    annihilator(m).adjoint()
}

pub fn creator_with(m: Mode, conv: JwConvention) -> FockOperator {
    annihilator_with(m, conv).adjoint()
}

/// Number operator `N_m = b†_m b_m`, a diagonal projector.
pub fn number(m: Mode) -> FockOperator {
    let diag: [f64; DIM] = std::array::from_fn(|i| f64::from(FockBasis::occupation(i, m)));
    FockOperator::from_real_diagonal(diag)
}

/// Hopping operator `b†_x b_y + b†_y b_x`.
pub fn hopping() -> FockOperator {
    hopping_with(JwConvention::default())
}

pub fn hopping_with(conv: JwConvention) -> FockOperator {
    let xy = creator_with(Mode::X, conv) * annihilator_with(Mode::Y, conv);
    xy + xy.adjoint()
}

/// Antisymmetric hopping `b†_x b_y - b†_y b_x`.
pub fn antihopping() -> FockOperator {
    antihopping_with(JwConvention::default())
}

pub fn antihopping_with(conv: JwConvention) -> FockOperator {
    let xy = creator_with(Mode::X, conv) * annihilator_with(Mode::Y, conv);
    xy - xy.adjoint()
}

/// Total fermion parity `(1 - 2N_x)(1 - 2N_y)`.
pub fn parity() -> FockOperator {
    let id = FockOperator::identity();
    (id - number(Mode::X) * 2.0) * (id - number(Mode::Y) * 2.0)
}

pub fn anticommutator(a: &FockOperator, b: &FockOperator) -> FockOperator {
    a.compose(b) + b.compose(a)
}

pub fn commutator(a: &FockOperator, b: &FockOperator) -> FockOperator {
    a.compose(b) - b.compose(a)
}

pub fn adjoint(a: &FockOperator) -> FockOperator {
    a.adjoint()
}

pub fn compose(a: &FockOperator, b: &FockOperator) -> FockOperator {
    a.compose(b)
}

/// Entrywise maximum absolute difference.
pub fn max_abs_diff(a: &FockOperator, b: &FockOperator) -> f64 {
    a.0.iter()
        .zip(b.0.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Entrywise maximum of `|a - b| / (1 + max(|a|, |b|))`.
pub fn max_rel_diff(a: &FockOperator, b: &FockOperator) -> f64 {
    a.0.iter()
        .zip(b.0.iter())
        .map(|(x, y)| (x - y).norm() / (1.0 + x.norm().max(y.norm())))
        .fold(0.0, f64::max)
}

/// Tolerance for the canonical anticommutation relations.
pub const CAR_TOL: f64 = 1e-14;

/// Checks `{b_m, b†_n} = δ_mn`, `{b_m, b_n} = 0` and `b_m² = 0` for the
/// default ladder operators.
pub fn verify_canonical_relations() -> IdentityReport {
    verify_canonical_relations_for(&annihilator(Mode::X), &annihilator(Mode::Y))
}

/// Same check for caller-supplied annihilators `b_x`, `b_y`.
pub fn verify_canonical_relations_for(b_x: &FockOperator, b_y: &FockOperator) -> IdentityReport {
    let id = FockOperator::identity();
    let zero = FockOperator::zero();
    let ops = [b_x, b_y];
    let mut stats = ResidualStats::new(CAR_TOL);
    let mut record = |a: &FockOperator, b: &FockOperator| stats.record(max_abs_diff(a, b), max_rel_diff(a, b));
    for (m, bm) in ops.iter().enumerate() {
        record(&bm.compose(bm), &zero);
        for (n, bn) in ops.iter().enumerate() {
            let expected = if m == n { id } else { zero };
            record(&anticommutator(bm, &bn.adjoint()), &expected);
            record(&anticommutator(bm, bn), &zero);
        }
    }
    IdentityReport::holds("canonical_relations", 0, &stats, CAR_TOL)
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXACT: f64 = 1e-14;

    fn delta(m: Mode, n: Mode) -> f64 {
        if m == n {
            1.0
        } else {
            0.0
        }
    }

    #[test]
    fn basis_ordering_is_lexicographic_in_occupations() {
        assert_eq!(FockBasis::index(0, 0), 0);
        assert_eq!(FockBasis::index(1, 0), 1);
        assert_eq!(FockBasis::index(0, 1), 2);
        assert_eq!(FockBasis::index(1, 1), 3);
        for (i, &(nx, ny)) in FockBasis::STATES.iter().enumerate() {
            assert_eq!(FockBasis::index(nx, ny), i);
        }
    }

    #[test]
    fn annihilator_x_lowers_single_particle_state() {
        let out = annihilator(Mode::X).apply(&FockBasis::vector(1, 0));
        assert_eq!(out, FockBasis::vector(0, 0));
        let vac = annihilator(Mode::X).apply(&FockBasis::vacuum());
        assert_eq!(vac, Vector4::zeros());
    }

    /// Keep `b_x` bare and try both signs for the one string-sensitive entry
    /// of `b_y`; only one choice yields canonical anticommutators.
    #[test]
    fn annihilator_y_sign_on_doubly_occupied_state() {
        let b_x = annihilator(Mode::X);
        let mut admissible = Vec::new();
        for sign in [1.0, -1.0] {
            let mut rows = [[0.0; DIM]; DIM];
            rows[0][2] = 1.0;
            rows[1][3] = sign;
            let b_y = FockOperator::from_real_rows(rows);
            let ok = [
                anticommutator(&b_x, &b_y),
                anticommutator(&b_x, &b_y.adjoint()),
                anticommutator(&b_y, &b_y.adjoint()) - FockOperator::identity(),
            ]
            .iter()
            .all(|m| m.max_abs() < EXACT);
            if ok {
                admissible.push(sign);
            }
        }
        assert_eq!(admissible, vec![-1.0]);

        let out = annihilator(Mode::Y).apply(&FockBasis::vector(1, 1));
        assert_eq!(out, -FockBasis::vector(1, 0));
    }

    #[test]
    fn creator_actions() {
        let cx = creator(Mode::X);
        assert_eq!(cx.compose(&cx), FockOperator::zero());
        assert_eq!(cx.apply(&FockBasis::vacuum()), FockBasis::vector(1, 0));
        assert_eq!(creator(Mode::Y), adjoint(&annihilator(Mode::Y)));
    }

    #[test]
    fn canonical_anticommutation_relations() {
        for conv in [JwConvention::StringOnY, JwConvention::StringOnX] {
            for m in Mode::ALL {
                for n in Mode::ALL {
                    let bm = annihilator_with(m, conv);
                    let bn = annihilator_with(n, conv);
                    let cn = creator_with(n, conv);
                    let expected = FockOperator::identity() * delta(m, n);
                    assert!(max_abs_diff(&anticommutator(&bm, &cn), &expected) <= EXACT);
                    assert!(anticommutator(&bm, &bn).max_abs() <= EXACT);
                    assert!(anticommutator(&bm.adjoint(), &cn).max_abs() <= EXACT);
                }
            }
        }
    }

    #[test]
    fn ladder_squares_vanish_exactly() {
        for m in Mode::ALL {
            assert_eq!(annihilator(m) * annihilator(m), FockOperator::zero());
            assert_eq!(creator(m) * creator(m), FockOperator::zero());
        }
    }

    #[test]
    fn number_operators() {
        assert_eq!(number(Mode::Y), FockOperator::from_real_diagonal([0.0, 0.0, 1.0, 1.0]));
        assert_eq!(
            max_abs_diff(
                &number(Mode::X),
                &FockOperator::from_real_diagonal([0.0, 1.0, 0.0, 1.0])
            ),
            0.0
        );
        let total = number(Mode::X) + number(Mode::Y);
        assert_eq!(
            total.apply(&FockBasis::vector(1, 1)),
            FockBasis::vector(1, 1) * Complex64::new(2.0, 0.0)
        );
        assert_eq!(commutator(&number(Mode::X), &number(Mode::Y)), FockOperator::zero());
        for m in Mode::ALL {
            let n = number(m);
            assert_eq!(n, creator(m) * annihilator(m));
            assert_eq!(n * n, n);
            assert!(n.is_hermitian(0.0));
        }
    }

    #[test]
    fn plumbing_identities() {
        let a = creator(Mode::X) + annihilator(Mode::Y) * 0.3;
        assert_eq!(commutator(&a, &a), FockOperator::zero());
        let d = FockOperator::from_real_diagonal([1.0, -2.0, 0.5, 3.0]);
        assert_eq!(d.adjoint(), d);
        assert_eq!(max_abs_diff(&a, &a), 0.0);
        assert_eq!(max_abs_diff(&FockOperator::identity(), &FockOperator::zero()), 1.0);
        assert_eq!(
            anticommutator(&annihilator(Mode::X), &creator(Mode::X)),
            FockOperator::identity()
        );
        assert_eq!(
            anticommutator(&annihilator(Mode::X), &creator(Mode::Y)),
            FockOperator::zero()
        );
    }

    #[test]
    fn bilinears_do_not_depend_on_string_convention() {
        let a = JwConvention::StringOnY;
        let b = JwConvention::StringOnX;
        assert_eq!(hopping_with(a), hopping_with(b));
        assert_eq!(antihopping_with(a), antihopping_with(b));
        for m in Mode::ALL {
            let na = creator_with(m, a) * annihilator_with(m, a);
            let nb = creator_with(m, b) * annihilator_with(m, b);
            assert_eq!(na, nb);
        }
        // the ladder operators themselves do differ
        assert_ne!(annihilator_with(Mode::Y, a), annihilator_with(Mode::Y, b));
    }

    #[test]
    fn rejects_non_finite_entries() {
        let mut m = Matrix4::zeros();
        m[(1, 2)] = Complex64::new(f64::NAN, 0.0);
        assert_eq!(FockOperator::try_from_matrix(m), Err(Error::NonFinite));
        assert!(FockOperator::try_from_matrix(Matrix4::identity()).is_ok());
    }

    #[test]
    fn canonical_relation_check() {
        assert!(verify_canonical_relations().pass);
        let tampered = annihilator(Mode::Y).with_entry_shifted(1, 3, 1e-6.into());
        assert!(!verify_canonical_relations_for(&annihilator(Mode::X), &tampered).pass);
    }

    #[test]
    fn parity_is_diagonal_sign() {
        assert_eq!(parity(), FockOperator::from_real_diagonal([1.0, -1.0, -1.0, 1.0]));
    }
}
