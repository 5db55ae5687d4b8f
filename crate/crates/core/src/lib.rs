//! Sensitivity limits for spin-based magnetometers and EDM searches.
//!
//! Three routes to the same number:
//! - [`limits`]: the closed-form spin-projection-noise limit and its
//!   relatives,
//! - [`protocol`]: Monte Carlo simulation of the idealized
//!   pump-precession-probe measurement,
//! - [`faraday`]: a shot-noise-limited linear Faraday-rotation magnetometer
//!   model with optical-depth optimization.
//!
//! [`angmom`] supplies the exact angular-momentum algebra underneath, and
//! [`harness`] provides parameter sweeps, power-law fits, and the
//! cross-model equivalence report.
//!
//! Core formulas use natural units (hbar = g*mu0 = 1); unit conversion is a
//! caller concern.

pub mod angmom;
pub mod error;
pub mod faraday;
pub mod harness;
pub mod limits;
pub mod protocol;
pub mod rng;

pub use angmom::{build_spin_system, Operator, Spin, SpinSystem, StateVector};
pub use error::{Error, Result};
pub use faraday::{FaradayResult, OpticalMedium};
pub use harness::{PowerLawFit, SweepParameter, SweepResult, SweepSpec};
pub use limits::SensorParams;
pub use protocol::{CampaignResult, ProtocolConfig};
