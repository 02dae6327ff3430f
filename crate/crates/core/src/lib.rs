//! Numerical model of one-step deterministic polarization entanglement
//! purification with polarization/spatial-mode hyperentangled photon pairs.
//!
//! The crate is organised bottom-up:
//!
//! * [`matrix`] and [`qstate`]: dense complex algebra, density operators and
//!   the Bell basis.
//! * [`optics`]: single-photon linear-optical elements, the purification
//!   circuits and coincidence post-selection.
//! * [`noise`]: Pauli channels on the polarization qubit, including the
//!   liquid-crystal duty-cycle schedules used to load noise.
//! * [`purify`]: the end-to-end one-step purification pipeline.
//! * [`recurrence`]: two-copy recurrence purification and the source
//!   efficiency comparison.
//! * [`tomography`]: simulated two-qubit tomography.
//! * [`reference`]: published experimental values, for comparison output.

pub mod error;
pub mod matrix;
pub mod noise;
pub mod optics;
pub mod purify;
pub mod qstate;
pub mod recurrence;
pub mod reference;
pub mod tomography;

pub use error::{Error, Result};
pub use matrix::ComplexMatrix;
pub use qstate::{BellDiagonal, BellKind, DensityMatrix, HyperState, PureState};

/// Numerical tolerances shared across modules.
pub mod tol {
    /// Algebraic identities on operators of dimension <= 16.
    pub const ALGEBRAIC: f64 = 1e-12;
    /// Lowest eigenvalue still accepted as positive semidefinite.
    pub const PSD_FLOOR: f64 = 1e-10;
    /// Bell-weight sums further than this from 1 are rescaled.
    pub const RENORMALIZE: f64 = 1e-9;
    /// Post-selected patterns below this probability carry no state.
    pub const NEGLIGIBLE_PROBABILITY: f64 = 1e-14;
    /// Probability conservation and pipeline-level comparisons.
    pub const PIPELINE: f64 = 1e-10;
}
