//! Flat JSON run configuration. Every key is optional; missing keys take the
//! library defaults and unknown keys are rejected.

use std::path::Path;

use blockpeek::channel::{FadingMode, Scenario};
use blockpeek::experiment::SweepConfig;
use serde::Deserialize;

use crate::error::CliError;

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub frequency_hz: Option<f64>,
    pub tx_power_dbm: Option<f64>,
    pub noise_power_dbm: Option<f64>,
    pub rho_r_m: Option<f64>,
    pub rho_a_m: Option<f64>,
    pub array_elements_azimuth: Option<u32>,
    pub array_elements_elevation: Option<u32>,
    pub element_spacing_wavelengths: Option<f64>,
    pub boresight_gain_dbi: Option<f64>,
    pub obstacle_radius_m: Option<f64>,
    pub obstacle_height_m: Option<f64>,
    pub antenna_height_m: Option<f64>,
    pub fading_mean_power_db: Option<f64>,
    pub fading_mode: Option<FadingMode>,
    pub scatter_coefficient: Option<f64>,
    pub gain_floor_dbi: Option<f64>,
    pub distances_m: Option<Vec<f64>>,
    pub realizations: Option<usize>,
    pub master_seed: Option<u64>,
}

impl ConfigFile {
    pub fn parse(text: &str, origin: &Path) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::parse(origin, e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::parse(&text, path)
    }

    pub fn scenario(&self) -> Scenario {
        let d = Scenario::default();
        Scenario {
            frequency_hz: self.frequency_hz.unwrap_or(d.frequency_hz),
            tx_power_dbm: self.tx_power_dbm.unwrap_or(d.tx_power_dbm),
            noise_power_dbm: self.noise_power_dbm.unwrap_or(d.noise_power_dbm),
            rho_r_m: self.rho_r_m.unwrap_or(d.rho_r_m),
            rho_a_m: self.rho_a_m.unwrap_or(d.rho_a_m),
            array_elements_azimuth: self
                .array_elements_azimuth
                .unwrap_or(d.array_elements_azimuth),
            array_elements_elevation: self
                .array_elements_elevation
                .unwrap_or(d.array_elements_elevation),
            element_spacing_wavelengths: self
                .element_spacing_wavelengths
                .unwrap_or(d.element_spacing_wavelengths),
            boresight_gain_dbi: self.boresight_gain_dbi.unwrap_or(d.boresight_gain_dbi),
            obstacle_radius_m: self.obstacle_radius_m.unwrap_or(d.obstacle_radius_m),
            obstacle_height_m: self.obstacle_height_m.unwrap_or(d.obstacle_height_m),
            antenna_height_m: self.antenna_height_m.unwrap_or(d.antenna_height_m),
            fading_mean_power_db: self.fading_mean_power_db.unwrap_or(d.fading_mean_power_db),
            fading_mode: self.fading_mode.unwrap_or(d.fading_mode),
            scatter_coefficient: self.scatter_coefficient.or(d.scatter_coefficient),
            gain_floor_dbi: self.gain_floor_dbi.unwrap_or(d.gain_floor_dbi),
        }
    }

    /// Sweep settings; `seed` (from the command line) overrides `master_seed`.
    pub fn sweep(&self, seed: Option<u64>) -> SweepConfig {
        let d = SweepConfig::default();
        SweepConfig {
            distances_m: self.distances_m.clone().unwrap_or(d.distances_m),
            realizations: self.realizations.unwrap_or(d.realizations),
            master_seed: seed.or(self.master_seed).unwrap_or(d.master_seed),
            scenario: self.scenario(),
        }
    }
}
