//! Shot-noise-limited linear Faraday-rotation (Macaluso-Corbino)
//! magnetometer model.
//!
//! The chain: rotation angle phi = (omega/Gamma) * x with x = l/l0 the
//! optical depth; transmitted photons follow Beer-Lambert e^(-x), anchored
//! so that the budget at the optimal depth x = 2 equals N*Gamma*T; the
//! ideal-polarimeter noise is 1/(2 sqrt(N_phot)). Together these give
//! deltaB(x) proportional to e^(x/2)/x, minimized at exactly x = 2. All
//! order-unity coefficients are written as stated, so cross-model
//! comparisons are ratio-based.
//!
//! Natural units: hbar = g*mu0 = 1, fields are identified with Larmor
//! rates.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Saturation parameters above this are outside the low-light model and are
/// rejected rather than modeled.
pub const MAX_SATURATION: f64 = 2.0;

/// Faraday-rotation sample description.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct OpticalMedium {
    /// Natural linewidth of the probed transition.
    pub gamma: f64,
    /// Optical depth x = l/l0.
    pub optical_depth: f64,
    /// Number of atoms in the interaction region.
    pub n_atoms: u64,
    /// Doppler width; 0 means negligible broadening.
    pub doppler_width: f64,
    /// Saturation parameter kappa; the model assumes order unity.
    pub saturation: f64,
    /// Detuning from resonance.
    pub detuning: f64,
}

impl OpticalMedium {
    pub fn new(gamma: f64, optical_depth: f64, n_atoms: u64) -> Result<Self> {
        let m = OpticalMedium {
            gamma,
            optical_depth,
            n_atoms,
            doppler_width: 0.0,
            saturation: 1.0,
            detuning: 0.0,
        };
        m.validate()?;
        Ok(m)
    }

    pub fn with_doppler_width(mut self, doppler_width: f64) -> Result<Self> {
        self.doppler_width = doppler_width;
        self.validate()?;
        Ok(self)
    }

    pub fn with_saturation(mut self, saturation: f64) -> Result<Self> {
        self.saturation = saturation;
        self.validate()?;
        Ok(self)
    }

    pub fn with_detuning(mut self, detuning: f64) -> Result<Self> {
        self.detuning = detuning;
        self.validate()?;
        Ok(self)
    }

    pub fn with_optical_depth(mut self, optical_depth: f64) -> Result<Self> {
        self.optical_depth = optical_depth;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.gamma.is_finite() && self.gamma > 0.0) {
            return Err(Error::InvalidInput(format!("gamma must be positive and finite, got {}", self.gamma)));
        }
        if !(self.optical_depth.is_finite() && self.optical_depth >= 0.0) {
            return Err(Error::InvalidInput(format!(
                "optical depth must be non-negative and finite, got {}",
                self.optical_depth
            )));
        }
        if !(self.doppler_width.is_finite() && self.doppler_width >= 0.0) {
            return Err(Error::InvalidInput(format!(
                "doppler width must be non-negative and finite, got {}",
                self.doppler_width
            )));
        }
        if !(self.saturation.is_finite() && self.saturation >= 0.0) {
            return Err(Error::InvalidInput(format!(
                "saturation must be non-negative and finite, got {}",
                self.saturation
            )));
        }
        if !self.detuning.is_finite() {
            return Err(Error::InvalidInput("detuning must be finite".into()));
        }
        Ok(())
    }

    fn check_low_light(&self) -> Result<()> {
        if self.saturation > MAX_SATURATION {
            return Err(Error::InvalidInput(format!(
                "saturation parameter {} is in the high-intensity regime (> {MAX_SATURATION}), which this model does not cover",
                self.saturation
            )));
        }
        Ok(())
    }
}

/// Point evaluation of the rotation/noise chain.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct FaradayResult {
    pub rotation_angle: f64,
    pub n_photons: f64,
    /// Polarimeter angular noise; infinite when no photons are collected.
    pub delta_phi: f64,
    /// Field sensitivity at the medium's own optical depth.
    pub delta_b_scaled: f64,
}

impl FaradayResult {
    pub fn noise_unbounded(&self) -> bool {
        !self.delta_phi.is_finite()
    }
}

/// Linearity classification of the requested operating point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Linearity {
    /// |omega|/gamma <= 0.1: comfortably linear.
    Linear,
    /// 0.1 < |omega|/gamma <= 0.3: linear model still applied, accuracy degrades.
    Marginal,
    /// |omega|/gamma > 0.3: rejected.
    NonLinear,
}

pub fn linearity(m: &OpticalMedium, omega: f64) -> Linearity {
    let ratio = (omega / m.gamma).abs();
    if ratio <= 0.1 {
        Linearity::Linear
    } else if ratio <= 0.3 {
        Linearity::Marginal
    } else {
        Linearity::NonLinear
    }
}

/// Small-field rotation angle phi = (omega / gamma) * x; odd in omega.
/// Rejected outside |omega|/gamma <= 0.3 where the linear model breaks down.
pub fn rotation_angle(m: &OpticalMedium, omega: f64) -> Result<f64> {
    m.validate()?;
    if !omega.is_finite() {
        return Err(Error::InvalidInput("omega must be finite".into()));
    }
    let ratio = omega / m.gamma;
    if ratio.abs() > 0.3 {
        return Err(Error::OutOfLinearRegime { ratio: ratio.abs() });
    }
    Ok(ratio * m.optical_depth)
}

/// Transmitted-photon budget over time `t` at the optimal depth x = 2:
/// N * Gamma * t (order-of-magnitude model, coefficient exactly 1).
pub fn photon_budget(m: &OpticalMedium, t: f64) -> Result<f64> {
    m.validate()?;
    m.check_low_light()?;
    if !(t.is_finite() && t > 0.0) {
        return Err(Error::InvalidInput(format!("measurement time must be positive and finite, got {t}")));
    }
    Ok(m.n_atoms as f64 * m.gamma * t)
}

/// Ideal-polarimeter angular noise 1/(2 sqrt(N_phot)); infinite when the
/// photon count is not positive.
pub fn polarimeter_noise(n_photons: f64) -> f64 {
    if n_photons > 0.0 {
        1.0 / (2.0 * n_photons.sqrt())
    } else {
        f64::INFINITY
    }
}

/// Field sensitivity at a requested depth and at the x = 2 optimum.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct DepthSensitivity {
    /// deltaB at the medium's optical depth; infinite at x = 0 (no signal).
    pub at_depth: f64,
    /// deltaB at the optimal depth x = 2.
    pub at_optimum: f64,
}

// Degradation of the rotation slope from Doppler broadening and detuning;
// 1.0 when both are absent.
fn slope_degradation(m: &OpticalMedium) -> Result<f64> {
    let doppler = if m.doppler_width > 0.0 { doppler_penalty(m.gamma, m.doppler_width)? } else { 1.0 };
    let detuned = detuned_snr_relative((m.detuning / m.gamma).abs())?;
    Ok(doppler * detuned)
}

fn delta_b_at_depth(m: &OpticalMedium, t: f64, x: f64) -> Result<f64> {
    m.validate()?;
    m.check_low_light()?;
    if !(t.is_finite() && t > 0.0) {
        return Err(Error::InvalidInput(format!("measurement time must be positive and finite, got {t}")));
    }
    if x <= 0.0 {
        return Ok(f64::INFINITY);
    }
    // Slope of the rotation angle in the field is x/Gamma; the transmitted
    // photon number is N Gamma T e^(2-x), anchored at the x = 2 budget.
    let n_phot = m.n_atoms as f64 * m.gamma * t * (2.0 - x).exp();
    let noise = polarimeter_noise(n_phot);
    let slope = x / m.gamma * slope_degradation(m)?;
    Ok(noise / slope)
}

/// Shot-noise-limited field sensitivity of the optimized rotation
/// magnetometer: deltaB(x) = sqrt(Gamma/(N T)) * e^((x-2)/2) / (2x), times
/// Doppler and detuning degradation factors when the medium carries them.
///
/// Returns both the value at the medium's own depth and the value at the
/// x = 2 optimum, where the expression reduces to the spin-projection limit
/// up to an order-unity factor.
pub fn magnetometer_sensitivity(m: &OpticalMedium, t: f64) -> Result<DepthSensitivity> {
    Ok(DepthSensitivity {
        at_depth: delta_b_at_depth(m, t, m.optical_depth)?,
        at_optimum: delta_b_at_depth(m, t, 2.0)?,
    })
}

/// Relative single-pass SNR of detuned probing, normalized to 1 on
/// resonance: rotation falls as 1/(1 + delta^2) while the bleaching-limited
/// photon rate grows as (1 + delta^2), leaving 1/sqrt(1 + delta^2).
///
/// The asymptote (proportional to 1/delta far from resonance) is the
/// physical content; the Lorentzian crossover shape is an interpolating
/// model choice.
pub fn detuned_snr_relative(delta_over_gamma: f64) -> Result<f64> {
    if !(delta_over_gamma.is_finite() && delta_over_gamma >= 0.0) {
        return Err(Error::InvalidInput(format!(
            "detuning ratio must be non-negative and finite, got {delta_over_gamma}"
        )));
    }
    Ok(1.0 / (1.0 + delta_over_gamma * delta_over_gamma).sqrt())
}

/// Multiplicative rotation penalty from Doppler broadening,
/// min(1, gamma/gamma_d).
pub fn doppler_penalty(gamma: f64, gamma_d: f64) -> Result<f64> {
    if !(gamma.is_finite() && gamma > 0.0) || !(gamma_d.is_finite() && gamma_d > 0.0) {
        return Err(Error::InvalidInput(format!(
            "doppler penalty requires positive rates, got gamma = {gamma}, gamma_d = {gamma_d}"
        )));
    }
    Ok((gamma / gamma_d).min(1.0))
}

/// Full point evaluation at the medium's depth for a probe field omega.
pub fn evaluate(m: &OpticalMedium, omega: f64, t: f64) -> Result<FaradayResult> {
    let rotation = rotation_angle(m, omega)?;
    let n_photons = photon_budget(m, t)?;
    let delta_phi = polarimeter_noise(n_photons);
    let sens = magnetometer_sensitivity(m, t)?;
    Ok(FaradayResult { rotation_angle: rotation, n_photons, delta_phi, delta_b_scaled: sens.at_depth })
}

// Golden-section minimizer on [a, b]; the objectives here are smooth and
// unimodal.
fn golden_section_min(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while b - a > 1e-10 {
        if f1 < f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
    }
    0.5 * (a + b)
}

/// Optimal optical depth: maximizes the single-pass SNR, proportional to
/// x * e^(-x/2), by golden-section search on x in [1e-6, 50]. The argmax is
/// invariant under the positive scale set by the medium, and equals 2.
pub fn optimize_optical_depth(m: &OpticalMedium) -> f64 {
    let t = 1.0;
    let objective = |x: f64| -> f64 {
        match delta_b_at_depth(m, t, x) {
            Ok(v) if v.is_finite() => v,
            // Degenerate media (e.g. no atoms) fall back to the bare shape.
            _ => (0.5 * x).exp() / x,
        }
    };
    golden_section_min(objective, 1e-6, 50.0)
}

/// One row of a depth scan.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct DepthScanPoint {
    pub x: f64,
    /// Single-pass SNR relative to the x = 2 optimum.
    pub snr: f64,
    pub delta_b_scaled: f64,
}

/// deltaB(x) over a grid of optical depths.
pub fn depth_scan(m: &OpticalMedium, t: f64, xs: &[f64]) -> Result<Vec<DepthScanPoint>> {
    let at_optimum = delta_b_at_depth(m, t, 2.0)?;
    xs.iter()
        .map(|&x| {
            let delta_b = delta_b_at_depth(m, t, x)?;
            let snr = if delta_b.is_finite() { at_optimum / delta_b } else { 0.0 };
            Ok(DepthScanPoint { x, snr, delta_b_scaled: delta_b })
        })
        .collect()
}
