//! Parameter sweeps, power-law fitting, and the cross-model equivalence
//! report that checks both magnetometers against the closed-form limit.

use serde::{Deserialize, Serialize};

use crate::angmom::{build_spin_system, Spin};
use crate::error::{Error, Result};
use crate::faraday::{magnetometer_sensitivity, OpticalMedium};
use crate::limits::{delta_b, SensorParams};
use crate::protocol::{sensitivity_mc, ProtocolConfig};
use crate::rng::{self, tags};

pub const SCHEMA_VERSION: &str = "1";

/// Which knob a sweep varies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepParameter {
    NSpins,
    TTotal,
    Gamma,
    SpinJ,
    OpticalDepth,
    Detuning,
}

impl SweepParameter {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "n_spins" => Ok(SweepParameter::NSpins),
            "t_total" => Ok(SweepParameter::TTotal),
            "gamma" => Ok(SweepParameter::Gamma),
            "spin_j" => Ok(SweepParameter::SpinJ),
            "optical_depth" => Ok(SweepParameter::OpticalDepth),
            "detuning" => Ok(SweepParameter::Detuning),
            other => Err(Error::InvalidInput(format!("unknown sweep parameter '{other}'"))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            SweepParameter::NSpins => "n_spins",
            SweepParameter::TTotal => "t_total",
            SweepParameter::Gamma => "gamma",
            SweepParameter::SpinJ => "spin_j",
            SweepParameter::OpticalDepth => "optical_depth",
            SweepParameter::Detuning => "detuning",
        }
    }
}

/// Base configuration a sweep perturbs.
#[derive(Clone, Debug, Serialize)]
pub enum SweepBase {
    Protocol(ProtocolConfig),
    Optical { medium: OpticalMedium, t: f64 },
}

/// MC sweeps run the sampling protocol per point; analytic sweeps evaluate
/// the closed-form limit with the swept parameter treated continuously.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepMode {
    MonteCarlo,
    Analytic,
}

#[derive(Clone, Debug)]
pub struct SweepSpec {
    pub parameter: SweepParameter,
    pub values: Vec<f64>,
    pub base: SweepBase,
    pub mode: SweepMode,
    pub campaigns_per_point: u64,
    pub seed: u64,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.values.is_empty() {
            return Err(Error::InvalidInput("sweep needs at least one value".into()));
        }
        for w in self.values.windows(2) {
            if !(w[1] > w[0]) {
                return Err(Error::InvalidInput("sweep values must be strictly increasing".into()));
            }
        }
        if self.values.iter().any(|v| !(v.is_finite() && *v > 0.0)) {
            return Err(Error::InvalidInput("sweep values must be positive and finite".into()));
        }
        if self.mode == SweepMode::MonteCarlo && matches!(self.base, SweepBase::Protocol(_)) {
            if self.campaigns_per_point < 30 {
                return Err(Error::InvalidInput(format!(
                    "Monte Carlo sweeps need at least 30 campaigns per point, got {}",
                    self.campaigns_per_point
                )));
            }
        }
        Ok(())
    }
}

/// One sweep row; a failed point keeps its error message instead of values.
#[derive(Clone, Debug, Serialize)]
pub struct SweepPoint {
    pub param: f64,
    pub delta_b: Option<f64>,
    pub delta_b_err: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepResult {
    pub schema_version: String,
    pub parameter: SweepParameter,
    pub mode: SweepMode,
    pub points: Vec<SweepPoint>,
}

impl SweepResult {
    /// CSV table of the successful points (columns: param, delta_b,
    /// delta_b_err). Failed points are reported in the JSON form only.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("# eqone-sweep-csv v1\nparam,delta_b,delta_b_err\n");
        for p in &self.points {
            if let (Some(db), Some(err)) = (p.delta_b, p.delta_b_err) {
                out.push_str(&format!("{},{},{}\n", p.param, db, err));
            }
        }
        out
    }
}

fn protocol_analytic_point(base: &ProtocolConfig, param: SweepParameter, value: f64) -> Result<f64> {
    let mut j = base.j;
    let mut gamma = base.gamma;
    let mut n = base.n_spins as f64;
    let mut t = base.total_time();
    match param {
        SweepParameter::NSpins => n = value,
        SweepParameter::TTotal => t = value,
        SweepParameter::Gamma => gamma = value,
        SweepParameter::SpinJ => j = Spin::from_j(value)?,
        SweepParameter::OpticalDepth | SweepParameter::Detuning => {
            return Err(Error::InvalidInput(format!(
                "parameter '{}' does not apply to the spin protocol",
                param.name()
            )));
        }
    }
    delta_b(&SensorParams::natural(j, gamma, n, t))
}

fn optical_point(medium: &OpticalMedium, t: f64, param: SweepParameter, value: f64) -> Result<f64> {
    let mut m = *medium;
    let mut t = t;
    match param {
        SweepParameter::NSpins => m.n_atoms = value.round().max(0.0) as u64,
        SweepParameter::TTotal => t = value,
        SweepParameter::Gamma => m.gamma = value,
        SweepParameter::OpticalDepth => m.optical_depth = value,
        SweepParameter::Detuning => m.detuning = value,
        SweepParameter::SpinJ => {
            return Err(Error::InvalidInput("parameter 'spin_j' does not apply to the optical model".into()));
        }
    }
    m.validate()?;
    Ok(magnetometer_sensitivity(&m, t)?.at_depth)
}

/// Runs the sweep; rows come back in sweep order and a failed point is
/// recorded rather than fatal. Deterministic per (spec, seed).
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepResult> {
    spec.validate()?;
    let mut points = Vec::with_capacity(spec.values.len());
    for (idx, &value) in spec.values.iter().enumerate() {
        let outcome: Result<(f64, f64)> = match (&spec.base, spec.mode) {
            (SweepBase::Protocol(base), SweepMode::MonteCarlo) => {
                run_protocol_mc(base, spec.parameter, value, spec, idx as u64)
            }
            (SweepBase::Protocol(base), SweepMode::Analytic) => {
                protocol_analytic_point(base, spec.parameter, value).map(|db| (db, 0.0))
            }
            (SweepBase::Optical { medium, t }, _) => {
                optical_point(medium, *t, spec.parameter, value).map(|db| (db, 0.0))
            }
        };
        points.push(match outcome {
            Ok((db, err)) => SweepPoint { param: value, delta_b: Some(db), delta_b_err: Some(err), error: None },
            Err(e) => SweepPoint { param: value, delta_b: None, delta_b_err: None, error: Some(e.to_string()) },
        });
    }
    Ok(SweepResult {
        schema_version: SCHEMA_VERSION.into(),
        parameter: spec.parameter,
        mode: spec.mode,
        points,
    })
}

fn run_protocol_mc(
    base: &ProtocolConfig,
    param: SweepParameter,
    value: f64,
    spec: &SweepSpec,
    idx: u64,
) -> Result<(f64, f64)> {
    let mut cfg = *base;
    cfg.seed = rng::derive_seed(spec.seed, tags::SWEEP_POINT, idx);
    match param {
        SweepParameter::NSpins => {
            cfg.n_spins = value.round().max(1.0) as u64;
        }
        SweepParameter::TTotal => {
            cfg.n_reps = (value / cfg.t1).round().max(1.0) as u64;
        }
        SweepParameter::Gamma => {
            let t_total = base.total_time();
            let phi = base.phi();
            cfg.gamma = value;
            cfg.t1 = 1.0 / value;
            cfg.n_reps = (t_total * value).round().max(1.0) as u64;
            cfg.omega = phi / cfg.t1;
        }
        SweepParameter::SpinJ => {
            cfg.j = Spin::from_j(value)?;
        }
        SweepParameter::OpticalDepth | SweepParameter::Detuning => {
            return Err(Error::InvalidInput(format!(
                "parameter '{}' does not apply to the spin protocol",
                param.name()
            )));
        }
    }
    cfg.validate()?;
    let system = build_spin_system(cfg.j)?;
    let mc = sensitivity_mc(&system, &cfg, spec.campaigns_per_point)?;
    Ok((mc.delta_omega, mc.std_error))
}

/// Power-law fit of a sweep table in log-log space.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct PowerLawFit {
    pub exponent: f64,
    pub exponent_stderr: f64,
    pub log_prefactor: f64,
    pub r_squared: f64,
}

fn fit_points(result: &SweepResult) -> Result<Vec<(f64, f64, f64)>> {
    let pts: Vec<(f64, f64, f64)> = result
        .points
        .iter()
        .filter_map(|p| match (p.delta_b, p.delta_b_err) {
            (Some(db), Some(err)) => Some((p.param, db, err)),
            _ => None,
        })
        .collect();
    if pts.len() < 4 {
        return Err(Error::InvalidInput(format!(
            "a power-law fit needs at least 4 successful points, got {}",
            pts.len()
        )));
    }
    if pts.iter().any(|(x, y, _)| !(x.is_finite() && *x > 0.0 && y.is_finite() && *y > 0.0)) {
        return Err(Error::InvalidInput("power-law fit requires positive parameter and delta_b values".into()));
    }
    Ok(pts)
}

fn weighted_ols(data: &[(f64, f64, f64)]) -> PowerLawFit {
    let n = data.len() as f64;
    let wsum: f64 = data.iter().map(|(_, _, w)| w).sum();
    let xbar: f64 = data.iter().map(|(x, _, w)| w * x).sum::<f64>() / wsum;
    let ybar: f64 = data.iter().map(|(_, y, w)| w * y).sum::<f64>() / wsum;
    let sxx: f64 = data.iter().map(|(x, _, w)| w * (x - xbar) * (x - xbar)).sum();
    let sxy: f64 = data.iter().map(|(x, y, w)| w * (x - xbar) * (y - ybar)).sum();
    let slope = sxy / sxx;
    let intercept = ybar - slope * xbar;
    let ssr: f64 = data.iter().map(|(x, y, w)| {
        let r = y - (intercept + slope * x);
        w * r * r
    }).sum();
    let sst: f64 = data.iter().map(|(_, y, w)| w * (y - ybar) * (y - ybar)).sum();
    let dof = (n - 2.0).max(1.0);
    let stderr = (ssr / dof / sxx).sqrt();
    let r_squared = if sst > 0.0 { (1.0 - ssr / sst).clamp(0.0, 1.0) } else { 1.0 };
    PowerLawFit { exponent: slope, exponent_stderr: stderr, log_prefactor: intercept, r_squared }
}

/// Unweighted ordinary least squares on (ln param, ln delta_b).
pub fn fit_power_law(result: &SweepResult) -> Result<PowerLawFit> {
    let pts = fit_points(result)?;
    let data: Vec<(f64, f64, f64)> = pts.iter().map(|(x, y, _)| (x.ln(), y.ln(), 1.0)).collect();
    Ok(weighted_ols(&data))
}

/// Weighted fit using per-point error bars (weights 1/sigma_lnY^2).
/// Every point must carry a positive error bar.
pub fn fit_power_law_weighted(result: &SweepResult) -> Result<PowerLawFit> {
    let pts = fit_points(result)?;
    if pts.iter().any(|(_, _, e)| !(e.is_finite() && *e > 0.0)) {
        return Err(Error::InvalidInput("weighted fit requires a positive error bar on every point".into()));
    }
    let data: Vec<(f64, f64, f64)> = pts
        .iter()
        .map(|(x, y, e)| {
            let sigma_ln = e / y;
            (x.ln(), y.ln(), 1.0 / (sigma_ln * sigma_ln))
        })
        .collect();
    Ok(weighted_ols(&data))
}

/// One matched (N, Gamma, T) comparison between the Monte Carlo protocol,
/// the optical model at its optimal depth, and the closed-form limit.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct EquivalenceEntry {
    pub n: u64,
    pub gamma: f64,
    pub t: f64,
    pub delta_b_mc: f64,
    pub delta_b_faraday: f64,
    pub delta_b_formula: f64,
    pub ratio_mc_formula: f64,
    pub ratio_faraday_formula: f64,
    pub ratio_mc_faraday: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct EquivalenceReport {
    pub schema_version: String,
    pub entries: Vec<EquivalenceEntry>,
    /// Acceptance band for ratio stability (fractional deviation from the mean).
    pub stability_band: f64,
    pub ratios_stable: bool,
    /// Relative spread of the (analytic) faraday/formula ratio.
    pub faraday_formula_spread: f64,
}

/// Compares the three sensitivity routes on one matched parameter triple.
/// The spin and optical configurations must agree on (N, Gamma, T).
pub fn equivalence_report(
    spin_cfg: &ProtocolConfig,
    optical_cfg: &OpticalMedium,
    t_optical: f64,
    campaigns: u64,
) -> Result<EquivalenceEntry> {
    spin_cfg.validate()?;
    optical_cfg.validate()?;
    let rel = |a: f64, b: f64| (a - b).abs() / b.abs().max(1e-300);
    if spin_cfg.n_spins != optical_cfg.n_atoms {
        return Err(Error::InvalidInput(format!(
            "mismatched spin counts: protocol N = {}, optical N = {}",
            spin_cfg.n_spins, optical_cfg.n_atoms
        )));
    }
    if rel(spin_cfg.gamma, optical_cfg.gamma) > 1e-12 {
        return Err(Error::InvalidInput(format!(
            "mismatched relaxation rates: protocol Gamma = {}, optical Gamma = {}",
            spin_cfg.gamma, optical_cfg.gamma
        )));
    }
    if rel(spin_cfg.total_time(), t_optical) > 1e-12 {
        return Err(Error::InvalidInput(format!(
            "mismatched total times: protocol T = {}, optical T = {}",
            spin_cfg.total_time(),
            t_optical
        )));
    }

    let system = build_spin_system(spin_cfg.j)?;
    let mc = sensitivity_mc(&system, spin_cfg, campaigns)?.delta_omega;
    let faraday = magnetometer_sensitivity(optical_cfg, t_optical)?.at_optimum;
    let formula = delta_b(&SensorParams::natural(
        spin_cfg.j,
        spin_cfg.gamma,
        spin_cfg.n_spins as f64,
        spin_cfg.total_time(),
    ))?;

    Ok(EquivalenceEntry {
        n: spin_cfg.n_spins,
        gamma: spin_cfg.gamma,
        t: spin_cfg.total_time(),
        delta_b_mc: mc,
        delta_b_faraday: faraday,
        delta_b_formula: formula,
        ratio_mc_formula: mc / formula,
        ratio_faraday_formula: faraday / formula,
        ratio_mc_faraday: mc / faraday,
    })
}

/// Built-in matched (N, Gamma, T) triples; n_reps = T * Gamma is integral
/// for each and the per-shot angle is 0.1 rad.
pub const EQUIVALENCE_TRIPLES: [(u64, f64, f64); 5] = [
    (100, 1.0, 100.0),
    (200, 1.0, 50.0),
    (500, 2.0, 100.0),
    (1000, 0.5, 200.0),
    (300, 4.0, 25.0),
];

const STABILITY_BAND: f64 = 0.20;

/// Runs the built-in matched triples and checks that the MC/formula ratio
/// is constant within the stability band.
pub fn equivalence_suite(campaigns: u64, seed: u64) -> Result<EquivalenceReport> {
    let mut entries = Vec::with_capacity(EQUIVALENCE_TRIPLES.len());
    for (i, &(n, gamma, t)) in EQUIVALENCE_TRIPLES.iter().enumerate() {
        let n_reps = (t * gamma).round() as u64;
        let omega = 0.1 * gamma; // phi = omega * t1 = 0.1
        let cfg = ProtocolConfig::new(
            Spin::from_doubled(1),
            omega,
            gamma,
            n,
            n_reps,
            rng::derive_seed(seed, tags::EQUIVALENCE, i as u64),
        )?;
        let medium = OpticalMedium::new(gamma, 2.0, n)?;
        entries.push(equivalence_report(&cfg, &medium, t, campaigns)?);
    }

    let mean_mc: f64 = entries.iter().map(|e| e.ratio_mc_formula).sum::<f64>() / entries.len() as f64;
    let ratios_stable = entries
        .iter()
        .all(|e| (e.ratio_mc_formula - mean_mc).abs() <= STABILITY_BAND * mean_mc);

    let ff: Vec<f64> = entries.iter().map(|e| e.ratio_faraday_formula).collect();
    let ff_mean = ff.iter().sum::<f64>() / ff.len() as f64;
    let ff_spread = ff.iter().map(|r| (r - ff_mean).abs()).fold(0.0, f64::max) / ff_mean;

    Ok(EquivalenceReport {
        schema_version: SCHEMA_VERSION.into(),
        entries,
        stability_band: STABILITY_BAND,
        ratios_stable,
        faraday_formula_spread: ff_spread,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn synthetic_result(data: &[(f64, f64)], err: f64) -> SweepResult {
        SweepResult {
            schema_version: SCHEMA_VERSION.into(),
            parameter: SweepParameter::NSpins,
            mode: SweepMode::Analytic,
            points: data
                .iter()
                .map(|&(x, y)| SweepPoint {
                    param: x,
                    delta_b: Some(y),
                    delta_b_err: Some(err),
                    error: None,
                })
                .collect(),
        }
    }

    fn base_protocol() -> ProtocolConfig {
        ProtocolConfig::new(Spin::from_doubled(1), 0.1, 1.0, 100, 100, 5).unwrap()
    }

    #[test]
    fn exact_half_power_law() {
        let data: Vec<(f64, f64)> = [1.0f64, 4.0, 9.0, 16.0, 25.0]
            .iter()
            .map(|&x| (x, x.powf(-0.5)))
            .collect();
        let fit = fit_power_law(&synthetic_result(&data, 0.0)).unwrap();
        assert_abs_diff_eq!(fit.exponent, -0.5, epsilon = 1e-12);
        assert!(fit.exponent_stderr < 1e-12);
        assert_abs_diff_eq!(fit.r_squared, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(fit.log_prefactor, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn fit_refuses_underdetermined_tables() {
        let fit = fit_power_law(&synthetic_result(&[(1.0, 1.0)], 0.0));
        assert!(fit.is_err());
        let fit = fit_power_law(&synthetic_result(&[(1.0, 1.0), (2.0, 0.7), (3.0, 0.6)], 0.0));
        assert!(fit.is_err());
    }

    #[test]
    fn fit_rejects_non_positive_values() {
        let fit = fit_power_law(&synthetic_result(&[(1.0, 1.0), (2.0, -0.7), (3.0, 0.6), (4.0, 0.5)], 0.0));
        assert!(fit.is_err());
    }

    #[test]
    fn weighted_fit_requires_error_bars() {
        let data: Vec<(f64, f64)> = (1..=5).map(|i| (i as f64, (i as f64).powf(-0.5))).collect();
        assert!(fit_power_law_weighted(&synthetic_result(&data, 0.0)).is_err());
        let fit = fit_power_law_weighted(&synthetic_result(&data, 1e-3)).unwrap();
        assert_abs_diff_eq!(fit.exponent, -0.5, epsilon = 1e-10);
    }

    #[test]
    fn analytic_gamma_sweep_has_exact_exponent() {
        let spec = SweepSpec {
            parameter: SweepParameter::Gamma,
            values: vec![0.5, 1.0, 2.0, 4.0, 8.0, 16.0],
            base: SweepBase::Protocol(base_protocol()),
            mode: SweepMode::Analytic,
            campaigns_per_point: 0,
            seed: 1,
        };
        let result = run_sweep(&spec).unwrap();
        let fit = fit_power_law(&result).unwrap();
        assert_abs_diff_eq!(fit.exponent, 0.5, epsilon = 1e-10);
        assert!(fit.exponent_stderr < 1e-10);
    }

    #[test]
    fn analytic_n_sweep_has_exact_exponent() {
        let spec = SweepSpec {
            parameter: SweepParameter::NSpins,
            values: vec![100.0, 300.0, 1000.0, 3000.0, 10000.0],
            base: SweepBase::Protocol(base_protocol()),
            mode: SweepMode::Analytic,
            campaigns_per_point: 0,
            seed: 1,
        };
        let fit = fit_power_law(&run_sweep(&spec).unwrap()).unwrap();
        assert_abs_diff_eq!(fit.exponent, -0.5, epsilon = 1e-10);
    }

    #[test]
    fn optical_depth_sweep_records_curve() {
        let medium = OpticalMedium::new(1.0, 2.0, 1000).unwrap();
        let spec = SweepSpec {
            parameter: SweepParameter::OpticalDepth,
            values: (1..=40).map(|i| i as f64 * 0.25).collect(),
            base: SweepBase::Optical { medium, t: 50.0 },
            mode: SweepMode::Analytic,
            campaigns_per_point: 0,
            seed: 1,
        };
        let result = run_sweep(&spec).unwrap();
        let best = result
            .points
            .iter()
            .min_by(|a, b| a.delta_b.unwrap().partial_cmp(&b.delta_b.unwrap()).unwrap())
            .unwrap();
        assert_abs_diff_eq!(best.param, 2.0, epsilon = 0.26);
    }

    #[test]
    fn inapplicable_parameter_is_recorded_not_fatal() {
        let medium = OpticalMedium::new(1.0, 2.0, 1000).unwrap();
        let spec = SweepSpec {
            parameter: SweepParameter::SpinJ,
            values: vec![0.5, 1.0, 1.5, 2.0],
            base: SweepBase::Optical { medium, t: 50.0 },
            mode: SweepMode::Analytic,
            campaigns_per_point: 0,
            seed: 1,
        };
        let result = run_sweep(&spec).unwrap();
        assert_eq!(result.points.len(), 4);
        assert!(result.points.iter().all(|p| p.error.is_some()));
        assert!(fit_power_law(&result).is_err());
    }

    #[test]
    fn sweep_rejects_unsorted_values() {
        let spec = SweepSpec {
            parameter: SweepParameter::Gamma,
            values: vec![2.0, 1.0],
            base: SweepBase::Protocol(base_protocol()),
            mode: SweepMode::Analytic,
            campaigns_per_point: 0,
            seed: 1,
        };
        assert!(run_sweep(&spec).is_err());
    }

    #[test]
    fn mc_sweep_is_deterministic() {
        let spec = SweepSpec {
            parameter: SweepParameter::NSpins,
            values: vec![20.0, 40.0, 80.0, 160.0],
            base: SweepBase::Protocol(base_protocol()),
            mode: SweepMode::MonteCarlo,
            campaigns_per_point: 30,
            seed: 11,
        };
        let a = run_sweep(&spec).unwrap();
        let b = run_sweep(&spec).unwrap();
        for (pa, pb) in a.points.iter().zip(&b.points) {
            assert_eq!(pa.delta_b.unwrap().to_bits(), pb.delta_b.unwrap().to_bits());
        }
    }

    #[test]
    fn csv_has_versioned_header() {
        let data: Vec<(f64, f64)> = (1..=4).map(|i| (i as f64, 1.0 / i as f64)).collect();
        let csv = synthetic_result(&data, 0.0).to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "# eqone-sweep-csv v1");
        assert_eq!(lines.next().unwrap(), "param,delta_b,delta_b_err");
        assert_eq!(lines.count(), 4);
    }

    #[test]
    fn equivalence_rejects_mismatched_triples() {
        let cfg = base_protocol();
        let medium = OpticalMedium::new(1.0, 2.0, 999).unwrap();
        assert!(equivalence_report(&cfg, &medium, 100.0, 30).is_err());
        let medium = OpticalMedium::new(2.0, 2.0, 100).unwrap();
        assert!(equivalence_report(&cfg, &medium, 100.0, 30).is_err());
        let medium = OpticalMedium::new(1.0, 2.0, 100).unwrap();
        assert!(equivalence_report(&cfg, &medium, 42.0, 30).is_err());
    }

    #[test]
    fn equivalence_entry_on_matched_triple() {
        let cfg = base_protocol();
        let medium = OpticalMedium::new(1.0, 2.0, 100).unwrap();
        let entry = equivalence_report(&cfg, &medium, 100.0, 40).unwrap();
        assert_abs_diff_eq!(entry.delta_b_formula, 0.01, epsilon = 1e-15);
        assert_abs_diff_eq!(entry.ratio_faraday_formula, 0.25, epsilon = 1e-12);
        assert!(entry.ratio_mc_formula > 0.3 && entry.ratio_mc_formula < 3.0);
    }

    proptest! {
        #[test]
        fn fit_is_scale_equivariant(scale in 0.01f64..100.0) {
            let data: Vec<(f64, f64)> = (1..=6).map(|i| {
                let x = i as f64;
                (x, 2.5 * x.powf(-0.37))
            }).collect();
            let base = fit_power_law(&synthetic_result(&data, 0.0)).unwrap();
            let scaled: Vec<(f64, f64)> = data.iter().map(|&(x, y)| (x, scale * y)).collect();
            let fit = fit_power_law(&synthetic_result(&scaled, 0.0)).unwrap();
            prop_assert!((fit.exponent - base.exponent).abs() < 1e-10);
            prop_assert!((fit.log_prefactor - (base.log_prefactor + scale.ln())).abs() < 1e-9);
        }
    }
}
