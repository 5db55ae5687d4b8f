//! Application logic behind the `eqone` binary. Subcommand handlers build
//! core-library calls from parsed arguments and emit deterministic JSON or
//! CSV; nothing here consults wall-clock time or ambient randomness.

pub mod args;
pub mod config;

use std::path::Path;

use serde_json::json;

use args::{Cli, Command, FaradayArgs, FormulaArgs, OptimizeArgs, OutputFormat, SimulateArgs, SweepArgs, SweepTarget};
use config::RunConfig;
use eqone::angmom::{build_spin_system, Spin};
use eqone::faraday::{self, OpticalMedium};
use eqone::harness::{
    equivalence_suite, fit_power_law, fit_power_law_weighted, run_sweep, SweepBase, SweepMode,
    SweepParameter, SweepSpec, SCHEMA_VERSION,
};
use eqone::limits::{self, SensorParams};
use eqone::protocol::{run_campaign, ProtocolConfig};

/// Exit code 2 marks configuration errors, 3 numeric failures.
#[derive(Debug)]
pub struct CliError {
    pub message: String,
    pub code: i32,
}

impl CliError {
    pub fn config(message: impl Into<String>) -> Self {
        CliError { message: message.into(), code: 2 }
    }

    pub fn numeric(message: impl Into<String>) -> Self {
        CliError { message: message.into(), code: 3 }
    }
}

impl From<eqone::Error> for CliError {
    fn from(e: eqone::Error) -> Self {
        if e.is_input_error() {
            CliError::config(e.to_string())
        } else {
            CliError::numeric(e.to_string())
        }
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::numeric(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn json_line(value: &serde_json::Value) -> String {
    let mut s = serde_json::to_string(value).expect("JSON serialization cannot fail");
    s.push('\n');
    s
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(CliError::config("--threads must be at least 1"));
        }
        // First initialization wins; later calls are no-ops, which is fine
        // because results do not depend on the worker count.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let rc = RunConfig::resolve(cli.units, cli.seed, cli.config.as_deref())?;
    let out = cli.out.as_deref();

    let text = match &cli.command {
        Command::Formula(a) => formula(a, &rc)?,
        Command::Simulate(a) => simulate(a, &rc)?,
        Command::Sweep(a) => sweep(a, &rc)?,
        Command::Faraday(a) => faraday_cmd(a, &rc)?,
        Command::Optimize(a) => optimize(a, &rc)?,
        Command::Equivalence(a) => equivalence(a, &rc)?,
    };
    emit(out, &text)
}

fn formula(a: &FormulaArgs, rc: &RunConfig) -> Result<String, CliError> {
    let j = Spin::from_j(a.j)?;
    let (hbar, mu0) = rc.hbar_mu0();
    let mut params = SensorParams { g: a.g, mu0, hbar, j, gamma: a.gamma, n: a.n, t: a.t, e_field: None };
    if let Some(e) = a.e_field {
        params = params.with_e_field(e);
    }

    let delta_b = limits::delta_b(&params)?;
    let delta_d = a.e_field.map(|_| limits::delta_d(&params)).transpose()?;
    let single_spin = a.t1.map(|t1| limits::delta_b_single_spin(&params, t1)).transpose()?;

    Ok(json_line(&json!({
        "schema_version": SCHEMA_VERSION,
        "kind": "formula",
        "units": rc.units_name(),
        "params": params,
        "delta_b": delta_b,
        "delta_d": delta_d,
        "delta_b_single_spin": single_spin,
    })))
}

fn simulate(a: &SimulateArgs, rc: &RunConfig) -> Result<String, CliError> {
    let j = Spin::from_j(a.j)?;
    let mut cfg = ProtocolConfig::new(j, a.omega, a.gamma, a.n_spins, a.n_reps, rc.seed)?;
    if let Some(t1) = a.t1 {
        cfg = cfg.with_t1(t1)?;
    }
    let system = build_spin_system(j)?;
    let result = run_campaign(&system, &cfg)?;

    let (hbar, mu0) = rc.hbar_mu0();
    Ok(json_line(&json!({
        "schema_version": SCHEMA_VERSION,
        "kind": "campaign",
        "units": rc.units_name(),
        "config": cfg,
        "campaign": result,
        "field_scaled": result.field_scaled(hbar, a.g, mu0),
        "sigma_field": hbar * result.sigma_omega / (a.g * mu0),
    })))
}

fn sweep(a: &SweepArgs, rc: &RunConfig) -> Result<String, CliError> {
    let parameter = SweepParameter::parse(&a.param)?;
    let (base, mode) = match a.target {
        SweepTarget::Mc | SweepTarget::Formula => {
            let j = Spin::from_j(a.j)?;
            let mut cfg = ProtocolConfig::new(j, a.omega, a.gamma, a.n_spins, a.n_reps, rc.seed)?;
            if let Some(t1) = a.t1 {
                cfg = cfg.with_t1(t1)?;
            }
            let mode = if a.target == SweepTarget::Mc { SweepMode::MonteCarlo } else { SweepMode::Analytic };
            (SweepBase::Protocol(cfg), mode)
        }
        SweepTarget::Faraday => {
            let medium = OpticalMedium::new(a.gamma, a.depth, a.n_atoms)?;
            (SweepBase::Optical { medium, t: a.t }, SweepMode::Analytic)
        }
    };
    let spec = SweepSpec {
        parameter,
        values: a.values.clone(),
        base,
        mode,
        campaigns_per_point: a.campaigns,
        seed: rc.seed,
    };
    let result = run_sweep(&spec)?;

    if a.fit || a.format == OutputFormat::Json {
        let fit = if a.fit {
            Some(if a.weighted { fit_power_law_weighted(&result)? } else { fit_power_law(&result)? })
        } else {
            None
        };
        let mut value = serde_json::to_value(&result).expect("sweep result serializes");
        value["kind"] = json!("sweep");
        value["fit"] = json!(fit);
        Ok(json_line(&value))
    } else {
        Ok(result.to_csv())
    }
}

fn build_medium(gamma: f64, depth: f64, n_atoms: u64, doppler: f64, saturation: f64, detuning: f64) -> Result<OpticalMedium, CliError> {
    Ok(OpticalMedium::new(gamma, depth, n_atoms)?
        .with_doppler_width(doppler)?
        .with_saturation(saturation)?
        .with_detuning(detuning)?)
}

fn parse_scan(spec: &str) -> Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(CliError::config(format!("--scan expects 'min:max:points', got '{spec}'")));
    }
    let min: f64 = parts[0].parse().map_err(|_| CliError::config("scan min must be a number"))?;
    let max: f64 = parts[1].parse().map_err(|_| CliError::config("scan max must be a number"))?;
    let points: usize = parts[2].parse().map_err(|_| CliError::config("scan points must be an integer"))?;
    if !(min.is_finite() && max.is_finite() && max > min && points >= 2) {
        return Err(CliError::config("scan needs max > min and at least 2 points"));
    }
    let step = (max - min) / (points - 1) as f64;
    Ok((0..points).map(|i| min + i as f64 * step).collect())
}

fn faraday_cmd(a: &FaradayArgs, rc: &RunConfig) -> Result<String, CliError> {
    let medium = build_medium(a.gamma, a.depth, a.n_atoms, a.doppler_width, a.saturation, a.detuning)?;

    if let Some(scan) = &a.scan {
        let xs = parse_scan(scan)?;
        let rows = faraday::depth_scan(&medium, a.t, &xs)?;
        let mut out = String::from("# eqone-faraday-csv v1\nx,snr,delta_b_scaled\n");
        for r in rows {
            out.push_str(&format!("{},{},{}\n", r.x, r.snr, r.delta_b_scaled));
        }
        return Ok(out);
    }

    let result = faraday::evaluate(&medium, a.omega, a.t)?;
    let sens = faraday::magnetometer_sensitivity(&medium, a.t)?;
    Ok(json_line(&json!({
        "schema_version": SCHEMA_VERSION,
        "kind": "faraday",
        "units": rc.units_name(),
        "medium": medium,
        "t": a.t,
        "omega": a.omega,
        "linearity": faraday::linearity(&medium, a.omega),
        "result": result,
        "noise_unbounded": result.noise_unbounded(),
        "delta_b_at_optimum": sens.at_optimum,
    })))
}

fn optimize(a: &OptimizeArgs, _rc: &RunConfig) -> Result<String, CliError> {
    let medium = build_medium(a.gamma, 2.0, a.n_atoms, a.doppler_width, a.saturation, a.detuning)?;
    let x = faraday::optimize_optical_depth(&medium);
    let sens = faraday::magnetometer_sensitivity(&medium, 1.0)?;
    Ok(json_line(&json!({
        "schema_version": SCHEMA_VERSION,
        "kind": "optimize",
        "optimal_depth": x,
        "delta_b_at_optimum": sens.at_optimum,
    })))
}

fn equivalence(a: &args::EquivalenceArgs, rc: &RunConfig) -> Result<String, CliError> {
    let report = equivalence_suite(a.campaigns, rc.seed)?;
    let mut value = serde_json::to_value(&report).expect("equivalence report serializes");
    value["kind"] = json!("equivalence");
    value["campaigns"] = json!(a.campaigns);
    Ok(json_line(&value))
}
