//! Monte Carlo simulation of the idealized pump-precession-probe
//! magnetometer: polarize along x, precess about z, measure Jy.
//!
//! Natural units throughout: hbar = g*mu0 = 1, so the field is identified
//! with the Larmor angular frequency omega. Each shot lasts exactly t1 with
//! no decay during evolution; the relaxation rate enters only through the
//! default time budget t1 = 1/gamma.

use rand::RngCore;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::angmom::{evolve, hermitian_eigen, max_projection_state, Spin, SpinSystem};
use crate::error::{Error, Result};
use crate::rng::{self, tags};

const X_AXIS: [f64; 3] = [1.0, 0.0, 0.0];

/// Parameters of one Monte Carlo campaign.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct ProtocolConfig {
    pub j: Spin,
    /// Signed precession rate of <J> from +x toward +y, in rad per unit
    /// time. In natural units this *is* the field being estimated.
    pub omega: f64,
    /// Single-shot precession time.
    pub t1: f64,
    /// Spin-relaxation rate; fixes the default time budget t1 = 1/gamma.
    pub gamma: f64,
    pub n_spins: u64,
    pub n_reps: u64,
    pub seed: u64,
}

impl ProtocolConfig {
    /// Config with the default time budget t1 = 1/gamma.
    pub fn new(j: Spin, omega: f64, gamma: f64, n_spins: u64, n_reps: u64, seed: u64) -> Result<Self> {
        if !(gamma.is_finite() && gamma > 0.0) {
            return Err(Error::InvalidInput(format!("gamma must be positive and finite, got {gamma}")));
        }
        let cfg = ProtocolConfig { j, omega, t1: 1.0 / gamma, gamma, n_spins, n_reps, seed };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Overrides the single-shot precession time.
    pub fn with_t1(mut self, t1: f64) -> Result<Self> {
        self.t1 = t1;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if self.j.doubled() < 1 {
            return Err(Error::InvalidInput("protocol requires J >= 1/2".into()));
        }
        if !(self.t1.is_finite() && self.t1 > 0.0) {
            return Err(Error::InvalidInput(format!("t1 must be positive and finite, got {}", self.t1)));
        }
        if !(self.gamma.is_finite() && self.gamma > 0.0) {
            return Err(Error::InvalidInput(format!("gamma must be positive and finite, got {}", self.gamma)));
        }
        if !self.omega.is_finite() {
            return Err(Error::InvalidInput("omega must be finite".into()));
        }
        if self.phi().abs() >= std::f64::consts::FRAC_PI_2 {
            return Err(Error::InvalidInput(format!(
                "|omega * t1| = {} must stay below pi/2 for the arcsin estimator",
                self.phi().abs()
            )));
        }
        if self.n_spins == 0 || self.n_reps == 0 {
            return Err(Error::InvalidInput("n_spins and n_reps must be positive".into()));
        }
        Ok(())
    }

    /// Per-shot precession angle omega * t1.
    pub fn phi(&self) -> f64 {
        self.omega * self.t1
    }

    /// Shots per campaign, n_spins * n_reps.
    pub fn shots(&self) -> u64 {
        self.n_spins * self.n_reps
    }

    /// Total precession time T = n_reps * t1.
    pub fn total_time(&self) -> f64 {
        self.n_reps as f64 * self.t1
    }
}

/// Born distribution of Jy outcomes for the precessed probe state.
///
/// The state |J,J>_x evolved about z by phi is fixed for a given config, so
/// the outcome distribution is computed once and sampled cheaply; one shot
/// consumes exactly one u64 from its stream.
#[derive(Clone, Debug)]
pub struct MeasurementDistribution {
    m_values: Vec<f64>,
    probabilities: Vec<f64>,
    cdf: Vec<f64>,
}

impl MeasurementDistribution {
    pub fn new(system: &SpinSystem, phi: f64) -> Result<Self> {
        let psi0 = max_projection_state(system, X_AXIS)?;
        let psi = evolve(&psi0, system.jz(), phi)?;
        let eig = hermitian_eigen(system.jy())?;

        let dim = system.dim();
        let mut m_values = Vec::with_capacity(dim);
        let mut probabilities = Vec::with_capacity(dim);
        for k in 0..dim {
            m_values.push(system.spin().m_value(k));
            let amp = eig.vectors().column(k).dotc(psi.vector());
            probabilities.push(amp.norm_sqr());
        }
        let total: f64 = probabilities.iter().sum();
        if !((total - 1.0).abs() < 1e-10) {
            return Err(Error::Numeric(format!("Born probabilities sum to {total}, expected 1")));
        }
        for p in &mut probabilities {
            *p /= total;
        }
        let mut cdf = Vec::with_capacity(dim);
        let mut acc = 0.0;
        for &p in &probabilities {
            acc += p;
            cdf.push(acc);
        }
        cdf[dim - 1] = 1.0;
        Ok(MeasurementDistribution { m_values, probabilities, cdf })
    }

    /// Outcomes m = J, J-1, ..., -J.
    pub fn m_values(&self) -> &[f64] {
        &self.m_values
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    /// Samples an outcome index by inverse CDF; consumes one u64.
    pub fn sample_index(&self, rng: &mut impl RngCore) -> usize {
        let u = rng::uniform_f64(rng);
        // Linear scan; dimensions are tiny (2J + 1).
        for (i, &c) in self.cdf.iter().enumerate() {
            if u < c {
                return i;
            }
        }
        self.cdf.len() - 1
    }

    /// Samples a measured m value.
    pub fn sample(&self, rng: &mut impl RngCore) -> f64 {
        self.m_values[self.sample_index(rng)]
    }
}

/// One projective measurement: prepare |J,J>_x, precess about z by
/// phi = omega * t1, measure Jy. Returns the measured m value.
pub fn single_shot(system: &SpinSystem, config: &ProtocolConfig, rng: &mut impl RngCore) -> Result<f64> {
    config.validate()?;
    check_system(system, config)?;
    let dist = MeasurementDistribution::new(system, config.phi())?;
    Ok(dist.sample(rng))
}

/// Aggregate of one campaign of shots.
///
/// Serializes with exactly the wire field names consumed downstream:
/// mean_jy, variance, omega_hat, sigma_omega, shots, saturated.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CampaignResult {
    /// Sample mean of the measured m values.
    pub mean_jy: f64,
    /// Sample variance (ddof = 1) of the measured m values.
    pub variance: f64,
    /// Estimated precession rate, arcsin(mean/J) / t1.
    pub omega_hat: f64,
    /// Delta-method standard error on omega_hat.
    pub sigma_omega: f64,
    pub shots: u64,
    /// True when |mean| reached J and the arcsin estimator was clamped.
    pub saturated: bool,
}

impl CampaignResult {
    /// Estimated field in scaled units, hbar * omega_hat / (g * mu0).
    pub fn field_scaled(&self, hbar: f64, g: f64, mu0: f64) -> f64 {
        hbar * self.omega_hat / (g * mu0)
    }
}

fn check_system(system: &SpinSystem, config: &ProtocolConfig) -> Result<()> {
    if system.spin() != config.j {
        return Err(Error::InvalidInput(format!(
            "spin system is J = {} but config requests J = {}",
            system.spin(),
            config.j
        )));
    }
    Ok(())
}

fn campaign_stream(config: &ProtocolConfig, campaign: u64) -> ChaCha8Rng {
    rng::stream(config.seed, tags::CAMPAIGN, campaign)
}

fn estimate(config: &ProtocolConfig, counts: &[u64], dist: &MeasurementDistribution) -> CampaignResult {
    let n: u64 = counts.iter().sum();
    let nf = n as f64;
    let j = config.j.j();

    // Counts are exact integers, so the statistics are independent of any
    // parallel split of the shots.
    let mut sum = 0.0;
    for (c, m) in counts.iter().zip(dist.m_values()) {
        sum += *c as f64 * m;
    }
    let mean = sum / nf;
    let mut ss = 0.0;
    for (c, m) in counts.iter().zip(dist.m_values()) {
        ss += *c as f64 * (m - mean) * (m - mean);
    }
    let variance = if n > 1 { ss / (nf - 1.0) } else { 0.0 };

    let ratio = mean / j;
    let saturated = ratio.abs() >= 1.0;
    let phi_hat = ratio.clamp(-1.0, 1.0).asin();
    let omega_hat = phi_hat / config.t1;

    // All-identical samples put a floor on the spread at the one-sigma
    // upper bound for one unseen outcome one level away.
    let std = if variance > 0.0 { variance.sqrt() } else { 1.0 / nf.sqrt() };
    let sigma_omega = std / (j * phi_hat.cos().max(f64::EPSILON) * nf.sqrt()) / config.t1;

    CampaignResult { mean_jy: mean, variance, omega_hat, sigma_omega, shots: n, saturated }
}

fn run_campaign_with(
    config: &ProtocolConfig,
    dist: &MeasurementDistribution,
    campaign: u64,
) -> CampaignResult {
    let mut rng = campaign_stream(config, campaign);
    let mut counts = vec![0u64; dist.m_values().len()];
    for _ in 0..config.shots() {
        counts[dist.sample_index(&mut rng)] += 1;
    }
    estimate(config, &counts, dist)
}

/// Runs a single campaign of `config.shots()` independent shots and
/// estimates omega. Deterministic for a fixed (config, seed).
pub fn run_campaign(system: &SpinSystem, config: &ProtocolConfig) -> Result<CampaignResult> {
    config.validate()?;
    check_system(system, config)?;
    if config.shots() < 2 {
        return Err(Error::InvalidInput("a campaign needs at least 2 shots".into()));
    }
    let dist = MeasurementDistribution::new(system, config.phi())?;
    Ok(run_campaign_with(config, &dist, 0))
}

/// Empirical sensitivity from repeated campaigns.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct McSensitivity {
    /// Standard deviation of omega_hat across campaigns.
    pub delta_omega: f64,
    /// Bootstrap standard error of `delta_omega` (200 resamples).
    pub std_error: f64,
    pub campaigns: u64,
}

const BOOTSTRAP_RESAMPLES: usize = 200;

fn sample_std(values: &[f64]) -> f64 {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let ss: f64 = values.iter().map(|v| (v - mean) * (v - mean)).sum();
    (ss / (n - 1.0)).sqrt()
}

/// Runs `n_campaigns` independent campaigns (child streams derived from
/// (seed, campaign index)) and returns the spread of the estimates.
///
/// Campaigns may execute in parallel; results are reduced in campaign order,
/// so the output is bit-identical regardless of the worker count.
pub fn sensitivity_mc(system: &SpinSystem, config: &ProtocolConfig, n_campaigns: u64) -> Result<McSensitivity> {
    config.validate()?;
    check_system(system, config)?;
    if n_campaigns < 30 {
        return Err(Error::InvalidInput(format!(
            "at least 30 campaigns are required for a sensitivity estimate, got {n_campaigns}"
        )));
    }
    if config.shots() < 2 {
        return Err(Error::InvalidInput("a campaign needs at least 2 shots".into()));
    }
    let dist = MeasurementDistribution::new(system, config.phi())?;

    let omegas: Vec<f64> = (0..n_campaigns)
        .into_par_iter()
        .map(|k| run_campaign_with(config, &dist, k).omega_hat)
        .collect();

    let delta_omega = sample_std(&omegas);

    let mut boot_rng = rng::stream(config.seed, tags::BOOTSTRAP, 0);
    let n = omegas.len();
    let mut boot = Vec::with_capacity(BOOTSTRAP_RESAMPLES);
    let mut resample = vec![0.0f64; n];
    for _ in 0..BOOTSTRAP_RESAMPLES {
        for slot in resample.iter_mut() {
            let idx = (boot_rng.next_u64() % n as u64) as usize;
            *slot = omegas[idx];
        }
        boot.push(sample_std(&resample));
    }
    let std_error = sample_std(&boot);

    Ok(McSensitivity { delta_omega, std_error, campaigns: n_campaigns })
}
