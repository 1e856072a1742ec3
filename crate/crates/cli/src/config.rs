//! Configuration file schema. One flat TOML document per physical setup;
//! unknown keys are hard errors so a typo in a rate never silently runs
//! with a default.

use std::fs;
use std::path::Path;

use catoptric::{CavityParams, RunConfig, C64};
use serde::{Deserialize, Serialize};

use crate::CliError;

/// Which protocol `simulate` drives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// The full repeated-reflection protocol.
    Multi,
    /// The one-bounce reference protocol.
    Single,
}

fn default_mode() -> Mode {
    Mode::Multi
}

/// Parsed configuration. Rates follow the convention that a value of `x`
/// stands for an angular rate of 2π·x MHz; only ratios enter the model, so
/// the 2π never materializes.
#[derive(Debug, Clone, Copy, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    /// Input pulse intensity |alpha|^2, photons. Must be positive.
    pub alpha_sq: f64,
    /// Number of passes M.
    pub m_cycles: u32,
    /// Mirror intensity loss per pass, in [0, 1).
    pub epsilon: f64,
    /// Atom-cavity coupling g.
    pub g_mhz: f64,
    /// Atomic scattering rate gamma.
    pub gamma_mhz: f64,
    /// Reflector-port cavity rate kappa_R.
    pub kappa_r_mhz: f64,
    /// Transmission-port cavity rate kappa_T.
    pub kappa_t_mhz: f64,
    /// Atom-light detuning Delta.
    pub delta_mhz: f64,
    #[serde(default = "default_mode")]
    pub mode: Mode,
    /// Keep per-pass amplitude snapshots.
    #[serde(default)]
    pub trace: bool,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<ConfigFile, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        toml::from_str(&text)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }

    /// Translate to the model's run configuration, validating ranges.
    pub fn to_run_config(&self) -> Result<RunConfig, catoptric::Error> {
        if !self.alpha_sq.is_finite() || self.alpha_sq <= 0.0 {
            return Err(catoptric::Error::InvalidParam {
                name: "alpha_sq",
                value: self.alpha_sq,
                reason: "must be finite and positive",
            });
        }
        let config = RunConfig {
            alpha: C64::new(self.alpha_sq.sqrt(), 0.0),
            m_cycles: self.m_cycles,
            epsilon: self.epsilon,
            cavity: CavityParams {
                g: self.g_mhz,
                gamma: self.gamma_mhz,
                kappa_r: self.kappa_r_mhz,
                kappa_t: self.kappa_t_mhz,
                delta: self.delta_mhz,
            },
            trace_enabled: self.trace,
        };
        config.validate()?;
        Ok(config)
    }

    /// Serialize back to TOML; parsing the result yields identical values.
    #[cfg(test)]
    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }
}
