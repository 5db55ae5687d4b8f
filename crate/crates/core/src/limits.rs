//! Closed-form spin-projection-noise sensitivity limits.
//!
//! The central result is the magnetometric limit
//! deltaB = hbar / (g * mu0 * sqrt(2J)) * sqrt(Gamma / (N * T)),
//! its EDM analog, the single-spin repeated-measurement estimate, and the
//! signal-to-noise chain they derive from. Order-unity coefficients are
//! written exactly as stated; Monte Carlo comparisons use ratio-stability
//! acceptance rather than absolute equality.

use serde::{Deserialize, Serialize};

use crate::angmom::Spin;
use crate::error::{Error, Result};

/// Inputs for the sensitivity formulas. Natural-unit use sets
/// g = mu0 = hbar = 1; SI use passes physical constants explicitly.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct SensorParams {
    /// Lande factor (dimensionless).
    pub g: f64,
    /// Magnetic-moment unit (Bohr magneton in SI use).
    pub mu0: f64,
    pub hbar: f64,
    pub j: Spin,
    /// Spin-relaxation rate.
    pub gamma: f64,
    /// Number of spins.
    pub n: f64,
    /// Total measurement time.
    pub t: f64,
    /// Effective electric field; required for the EDM limit only.
    pub e_field: Option<f64>,
}

impl SensorParams {
    /// Natural-unit parameter set (g = mu0 = hbar = 1).
    pub fn natural(j: Spin, gamma: f64, n: f64, t: f64) -> Self {
        SensorParams { g: 1.0, mu0: 1.0, hbar: 1.0, j, gamma, n, t, e_field: None }
    }

    pub fn with_e_field(mut self, e_field: f64) -> Self {
        self.e_field = Some(e_field);
        self
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("g", self.g),
            ("mu0", self.mu0),
            ("hbar", self.hbar),
            ("gamma", self.gamma),
            ("n", self.n),
            ("t", self.t),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidInput(format!("{name} must be positive and finite, got {v}")));
            }
        }
        if self.j.doubled() < 1 {
            return Err(Error::InvalidInput("sensitivity formulas require J >= 1/2".into()));
        }
        if let Some(e) = self.e_field {
            if !(e.is_finite() && e > 0.0) {
                return Err(Error::InvalidInput(format!("e_field must be positive and finite, got {e}")));
            }
        }
        Ok(())
    }

    fn two_j(&self) -> f64 {
        self.j.doubled() as f64
    }
}

/// Magnetometric sensitivity limit:
/// deltaB = hbar / (g mu0 sqrt(2J)) * sqrt(Gamma / (N T)).
pub fn delta_b(p: &SensorParams) -> Result<f64> {
    p.validate()?;
    Ok(p.hbar / (p.g * p.mu0 * p.two_j().sqrt()) * (p.gamma / (p.n * p.t)).sqrt())
}

/// EDM sensitivity limit:
/// deltad = hbar sqrt(J/2) / E * sqrt(Gamma / (N T)).
pub fn delta_d(p: &SensorParams) -> Result<f64> {
    p.validate()?;
    let e = p.e_field.ok_or_else(|| Error::InvalidInput("EDM limit requires e_field".into()))?;
    Ok(p.hbar * (p.j.j() / 2.0).sqrt() / e * (p.gamma / (p.n * p.t)).sqrt())
}

/// Single-spin repeated-measurement estimate:
/// deltaB = hbar / (g mu0) * (1 / t1) * sqrt(t1 / T).
pub fn delta_b_single_spin(p: &SensorParams, t1: f64) -> Result<f64> {
    p.validate()?;
    if !(t1.is_finite() && t1 > 0.0) {
        return Err(Error::InvalidInput(format!("t1 must be positive and finite, got {t1}")));
    }
    if t1 > p.t {
        return Err(Error::InvalidInput(format!(
            "single-shot time t1 = {t1} exceeds total time T = {}",
            p.t
        )));
    }
    Ok(p.hbar / (p.g * p.mu0) * (1.0 / t1) * (t1 / p.t).sqrt())
}

/// Single-measurement signal-to-noise ratio:
/// S/sigma = (g mu0 B / hbar) * sqrt(2J) / Gamma.
pub fn snr_single(p: &SensorParams, b: f64) -> Result<f64> {
    p.validate()?;
    if !b.is_finite() {
        return Err(Error::InvalidInput("field must be finite".into()));
    }
    Ok(p.g * p.mu0 * b / p.hbar * p.two_j().sqrt() / p.gamma)
}

/// Ensemble signal-to-noise ratio, snr_single * sqrt(N T Gamma)
/// = (g mu0 B / hbar) * sqrt(2J) * sqrt(N T / Gamma).
pub fn snr_ensemble(p: &SensorParams, b: f64) -> Result<f64> {
    Ok(snr_single(p, b)? * (p.n * p.t * p.gamma).sqrt())
}
