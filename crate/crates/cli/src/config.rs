//! Run configuration: unit system, seed resolution, physical constants.

use serde::{Deserialize, Serialize};
use std::path::Path;

use crate::args::Units;
use crate::CliError;

/// Default constants file (CODATA 2018) compiled into the binary;
/// a config file may override individual values.
const DEFAULT_CONSTANTS: &str = include_str!("../data/codata2018.json");

pub const SEED_ENV_VAR: &str = "EQONE_SEED";

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct Constants {
    pub hbar: f64,
    pub bohr_magneton: f64,
}

#[derive(Deserialize, Default)]
struct FileConfig {
    units: Option<Units>,
    seed: Option<u64>,
    constants: Option<PartialConstants>,
}

#[derive(Deserialize)]
struct PartialConstants {
    hbar: Option<f64>,
    bohr_magneton: Option<f64>,
}

/// Resolved global settings for one invocation.
#[derive(Clone, Copy, Debug)]
pub struct RunConfig {
    pub units: Units,
    pub seed: u64,
    pub constants: Constants,
}

impl RunConfig {
    /// Resolution order: explicit flag, then config file, then environment
    /// (seed only), then built-in defaults.
    pub fn resolve(
        flag_units: Option<Units>,
        flag_seed: Option<u64>,
        config_path: Option<&Path>,
    ) -> Result<Self, CliError> {
        let defaults: serde_json::Value =
            serde_json::from_str(DEFAULT_CONSTANTS).expect("embedded constants file is valid");
        let mut constants = Constants {
            hbar: defaults["hbar"].as_f64().expect("embedded hbar"),
            bohr_magneton: defaults["bohr_magneton"].as_f64().expect("embedded bohr_magneton"),
        };

        let file: FileConfig = match config_path {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| {
                    CliError::config(format!("cannot read config file {}: {e}", path.display()))
                })?;
                serde_json::from_str(&text).map_err(|e| {
                    CliError::config(format!("cannot parse config file {}: {e}", path.display()))
                })?
            }
            None => FileConfig::default(),
        };

        if let Some(pc) = &file.constants {
            if let Some(h) = pc.hbar {
                constants.hbar = h;
            }
            if let Some(mu) = pc.bohr_magneton {
                constants.bohr_magneton = mu;
            }
        }
        if !(constants.hbar > 0.0 && constants.bohr_magneton > 0.0) {
            return Err(CliError::config("constants must be positive"));
        }

        let env_seed = match std::env::var(SEED_ENV_VAR) {
            Ok(text) => Some(text.parse::<u64>().map_err(|_| {
                CliError::config(format!("{SEED_ENV_VAR} must be an unsigned integer, got '{text}'"))
            })?),
            Err(_) => None,
        };

        let units = flag_units.or(file.units).unwrap_or(Units::Natural);
        let seed = flag_seed
            .or(file.seed)
            .or(env_seed)
            .unwrap_or(eqone::rng::DEFAULT_SEED);

        Ok(RunConfig { units, seed, constants })
    }

    /// (hbar, mu0) as seen by the formulas: unity in natural units,
    /// physical constants in SI mode.
    pub fn hbar_mu0(&self) -> (f64, f64) {
        match self.units {
            Units::Natural => (1.0, 1.0),
            Units::Si => (self.constants.hbar, self.constants.bohr_magneton),
        }
    }

    pub fn units_name(&self) -> &'static str {
        match self.units {
            Units::Natural => "natural",
            Units::Si => "si",
        }
    }
}
