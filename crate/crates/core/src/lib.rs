//! Fermionic realization of the dihedral group `D_2k` and numerical
//! verification of operator identities between two extensions of the
//! Tremblay-Turbiner-Winternitz Hamiltonians: one built from dihedral
//! exchange operators, one from two fermionic modes.
//!
//! * [`fock`]: 4x4 operators on the Fock space of two fermionic modes.
//! * [`dihedral`]: the group elements `R^i`, `R^i I` and rotated ladder operators.
//! * [`trig`]: shifted trigonometric sums, their closed forms and a sampling harness.
//! * [`extension`]: the angular coefficient operators `4ωΓ`, `4ωΓ̃`, `4ωY`.
//! * [`runner`]: parameter sweeps and JSON / Markdown reports.

pub mod dihedral;
pub mod error;
pub mod extension;
pub mod fock;
pub mod report;
pub mod runner;
pub mod trig;

pub use error::{Error, Result};
pub use fock::{FockOperator, Mode};
pub use report::{IdentityReport, Status};
