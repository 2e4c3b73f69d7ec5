//! Stimulated parametric down-conversion seeded with two-mode sphere
//! coherent states.
//!
//! The crate is organised bottom-up:
//!
//! - [`fock`]: truncated two-mode Fock space, ladder operators, serialization.
//! - [`algebra`]: the curvature-deformed su(2) generators and their commutators.
//! - [`scs`]: two-mode sphere coherent states and the g-deformation machinery.
//! - [`pdc`]: the down-conversion unitary, applied both through the
//!   disentangled closed form and through a dense matrix exponential.
//! - [`observables`]: partial traces, linear entropy, photon statistics.
//! - [`sweep`]: parameter sweeps, figure data and the self-verification suite.

pub mod algebra;
pub mod config;
pub mod error;
pub mod fock;
pub mod math;
pub mod observables;
pub mod pdc;
pub mod scs;
pub mod sweep;
pub mod verify;

pub use error::{Error, Result};
pub use fock::{FockIndex, Mode, TwoModeState};
pub use observables::ObservableReport;
pub use pdc::{PdcParams, TruncationPolicy};
pub use scs::ScsParams;
