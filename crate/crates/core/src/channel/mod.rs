//! Surrogate 60 GHz channel between a fixed transmitter at the origin, a
//! receiver on a circle of radius `rho_r_m`, and a cylindrical blocker.
//!
//! The received amplitude is `r12 + r3`, where `r12` combines the
//! line-of-sight path (array gain, free-space loss, knife-edge blockage) with
//! the bistatic field scattered by the cylinder, and `r3` is a Rayleigh
//! multipath term drawn independently of the geometry.

mod fading;
mod pattern;
mod propagation;

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use fading::{draw_fading, draw_fading_field, FadingField, FadingMode};
pub use pattern::{array_gain_dbi, ELEMENT_PATTERN_EXPONENT};
pub use propagation::{
    double_edge_loss_db, free_space_amplitude, fresnel_parameter, knife_edge_loss_db,
    knife_edge_loss_from_fresnel, los_clearance, path_geometry, scattered_component, PathGeometry,
    OFF_AXIS_LIMIT_DEG,
};

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Largest angle a mobile node may occupy, degrees.
pub const MAX_THETA_DEG: f64 = 60.0;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ChannelError {
    #[error("angle {0}° outside the supported range")]
    AngleOutOfRange(f64),
    #[error("distance must be positive and finite, got {0} m")]
    NonPositiveDistance(f64),
    #[error("frequency must be positive and finite, got {0} Hz")]
    InvalidFrequency(f64),
    #[error("receiver and obstacle positions coincide")]
    CoincidentPositions,
    #[error("invalid scenario: {0}")]
    InvalidScenario(String),
}

/// Position in the transmitter-centred polar plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PolarPosition {
    rho_m: f64,
    theta_deg: f64,
}

impl PolarPosition {
    pub fn new(rho_m: f64, theta_deg: f64) -> Result<Self, ChannelError> {
        if !(rho_m.is_finite() && rho_m > 0.0) {
            return Err(ChannelError::NonPositiveDistance(rho_m));
        }
        if !(0.0..=MAX_THETA_DEG).contains(&theta_deg) {
            return Err(ChannelError::AngleOutOfRange(theta_deg));
        }
        Ok(Self { rho_m, theta_deg })
    }

    pub fn rho_m(&self) -> f64 {
        self.rho_m
    }

    pub fn theta_deg(&self) -> f64 {
        self.theta_deg
    }

    /// Cartesian coordinates `(x, y)` with the transmitter at the origin.
    pub fn to_cartesian(&self) -> (f64, f64) {
        let (s, c) = self.theta_deg.to_radians().sin_cos();
        (self.rho_m * c, self.rho_m * s)
    }
}

impl fmt::Display for PolarPosition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} m, {}°)", self.rho_m, self.theta_deg)
    }
}

/// Physical constants of one game instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub frequency_hz: f64,
    pub tx_power_dbm: f64,
    pub noise_power_dbm: f64,
    pub rho_r_m: f64,
    pub rho_a_m: f64,
    pub array_elements_azimuth: u32,
    pub array_elements_elevation: u32,
    pub element_spacing_wavelengths: f64,
    pub boresight_gain_dbi: f64,
    pub obstacle_radius_m: f64,
    pub obstacle_height_m: f64,
    pub antenna_height_m: f64,
    pub fading_mean_power_db: f64,
    pub fading_mode: FadingMode,
    /// Scaling of the bistatic scattering term. `None` means calibrated, see
    /// [`Scenario::resolved_scatter_coefficient`].
    pub scatter_coefficient: Option<f64>,
    pub gain_floor_dbi: f64,
}

impl Default for Scenario {
    fn default() -> Self {
        Self {
            frequency_hz: 60e9,
            tx_power_dbm: 0.0,
            noise_power_dbm: -100.0,
            rho_r_m: 3.0,
            rho_a_m: 1.5,
            array_elements_azimuth: 8,
            array_elements_elevation: 4,
            element_spacing_wavelengths: 0.5,
            boresight_gain_dbi: 20.0,
            obstacle_radius_m: 0.25,
            obstacle_height_m: 1.75,
            antenna_height_m: 1.0,
            fading_mean_power_db: -97.0,
            fading_mode: FadingMode::PerCell,
            scatter_coefficient: None,
            gain_floor_dbi: -40.0,
        }
    }
}

/// Scattered power of the calibrated model sits this far below the unblocked
/// boresight line-of-sight power, at the strongest action-grid cell.
pub const SCATTER_CALIBRATION_DB: f64 = -10.0;

impl Scenario {
    pub fn wavelength_m(&self) -> f64 {
        SPEED_OF_LIGHT / self.frequency_hz
    }

    /// Effective illuminated height of the cylinder.
    pub fn effective_scatter_height_m(&self) -> f64 {
        self.obstacle_height_m.min(2.0 * self.antenna_height_m)
    }

    /// `P_t / P_n` as a linear ratio.
    pub fn tx_to_noise_ratio(&self) -> f64 {
        10f64.powf((self.tx_power_dbm - self.noise_power_dbm) / 10.0)
    }

    pub fn receiver_at(&self, theta_deg: f64) -> Result<PolarPosition, ChannelError> {
        PolarPosition::new(self.rho_r_m, theta_deg)
    }

    pub fn adversary_at(&self, theta_deg: f64) -> Result<PolarPosition, ChannelError> {
        PolarPosition::new(self.rho_a_m, theta_deg)
    }

    pub fn validate(&self) -> Result<(), ChannelError> {
        let bad = |msg: String| Err(ChannelError::InvalidScenario(msg));
        if !(self.frequency_hz.is_finite() && self.frequency_hz > 0.0) {
            return Err(ChannelError::InvalidFrequency(self.frequency_hz));
        }
        for (name, v) in [
            ("tx_power_dbm", self.tx_power_dbm),
            ("noise_power_dbm", self.noise_power_dbm),
            ("boresight_gain_dbi", self.boresight_gain_dbi),
            ("gain_floor_dbi", self.gain_floor_dbi),
            ("fading_mean_power_db", self.fading_mean_power_db),
        ] {
            if !v.is_finite() {
                return bad(format!("{name} must be finite, got {v}"));
            }
        }
        for (name, v) in [
            ("rho_r_m", self.rho_r_m),
            ("rho_a_m", self.rho_a_m),
            (
                "element_spacing_wavelengths",
                self.element_spacing_wavelengths,
            ),
            ("obstacle_radius_m", self.obstacle_radius_m),
            ("obstacle_height_m", self.obstacle_height_m),
            ("antenna_height_m", self.antenna_height_m),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return bad(format!("{name} must be positive, got {v}"));
            }
        }
        if self.rho_a_m >= self.rho_r_m {
            return bad(format!(
                "rho_a_m ({}) must be smaller than rho_r_m ({})",
                self.rho_a_m, self.rho_r_m
            ));
        }
        if self.array_elements_azimuth == 0 || self.array_elements_elevation == 0 {
            return bad("array dimensions must be at least 1".into());
        }
        if self.fading_mean_power_db >= 0.0 {
            return bad(format!(
                "fading_mean_power_db must be below 0 dB, got {}",
                self.fading_mean_power_db
            ));
        }
        if self.gain_floor_dbi >= self.boresight_gain_dbi {
            return bad("gain_floor_dbi must lie below boresight_gain_dbi".into());
        }
        if let Some(k) = self.scatter_coefficient {
            if !(k.is_finite() && k >= 0.0) {
                return bad(format!("scatter_coefficient must be non-negative, got {k}"));
            }
        }
        Ok(())
    }

    /// Scatter coefficient actually used by the model.
    ///
    /// When unset, it is chosen so that the strongest scattered path over the
    /// action grid, with the obstacle half-way to the receiver, is
    /// [`SCATTER_CALIBRATION_DB`] below the unblocked boresight line of sight.
    pub fn resolved_scatter_coefficient(&self) -> Result<f64, ChannelError> {
        if let Some(k) = self.scatter_coefficient {
            return Ok(k);
        }
        let mut unit = self.clone();
        unit.scatter_coefficient = Some(1.0);
        unit.rho_a_m = 0.5 * self.rho_r_m;

        let boresight = free_space_amplitude(self.rho_r_m, self.frequency_hz)?.norm_sqr()
            * db_to_linear(array_gain_dbi(0.0, self)?);

        let grid = crate::game::ActionGrid::standard();
        let mut strongest = 0.0f64;
        for &theta_r in grid.angles() {
            for &theta_a in grid.angles() {
                let r2 = scattered_component(
                    &unit.receiver_at(theta_r)?,
                    &unit.adversary_at(theta_a)?,
                    &unit,
                )?;
                strongest = strongest.max(r2.norm_sqr());
            }
        }
        if strongest == 0.0 {
            return Ok(0.0);
        }
        Ok(db_to_linear(SCATTER_CALIBRATION_DB) * boresight / strongest)
    }

    /// Copy of the scenario with the scatter coefficient pinned.
    pub fn resolved(&self) -> Result<Scenario, ChannelError> {
        let mut s = self.clone();
        s.scatter_coefficient = Some(self.resolved_scatter_coefficient()?);
        Ok(s)
    }
}

/// Complex gains seen by the receiver for one cell of one realization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelSample {
    /// Line of sight plus obstacle scattering.
    pub r12: Complex64,
    /// Random multipath.
    pub r3: Complex64,
}

impl ChannelSample {
    pub fn total_gain(&self) -> f64 {
        (self.r12 + self.r3).norm_sqr()
    }
}

/// Line-of-sight amplitude with the obstacle removed from the scene.
pub fn unobstructed_los_component(
    pos_r: &PolarPosition,
    scenario: &Scenario,
) -> Result<Complex64, ChannelError> {
    let free = free_space_amplitude(pos_r.rho_m(), scenario.frequency_hz)?;
    let gain = db_to_linear(array_gain_dbi(pos_r.theta_deg(), scenario)?).sqrt();
    Ok(free * gain)
}

/// Line-of-sight amplitude `r1`, including knife-edge blockage by the cylinder.
pub fn los_component(
    pos_r: &PolarPosition,
    pos_a: &PolarPosition,
    scenario: &Scenario,
) -> Result<Complex64, ChannelError> {
    let lambda = scenario.wavelength_m();
    let loss_db = match path_geometry(pos_r, pos_a) {
        Some(g) => double_edge_loss_db(
            g.offset_m.abs(),
            scenario.obstacle_radius_m,
            g.along_m,
            g.path_len_m - g.along_m,
            lambda,
        )?,
        None => 0.0,
    };
    Ok(unobstructed_los_component(pos_r, scenario)? * 10f64.powf(-loss_db / 20.0))
}

/// Builds the channel sample for one receiver/obstacle placement.
pub fn channel_sample(
    pos_r: &PolarPosition,
    pos_a: &PolarPosition,
    scenario: &Scenario,
    r3: Complex64,
) -> Result<ChannelSample, ChannelError> {
    let r1 = los_component(pos_r, pos_a, scenario)?;
    let r2 = scattered_component(pos_r, pos_a, scenario)?;
    Ok(ChannelSample { r12: r1 + r2, r3 })
}

/// Shannon spectral efficiency `log2(1 + P_t |r12 + r3|^2 / P_n)`, b/s/Hz.
pub fn spectral_efficiency(sample: &ChannelSample, scenario: &Scenario) -> f64 {
    spectral_efficiency_from_gain(sample.total_gain(), scenario)
}

pub fn spectral_efficiency_from_gain(gain: f64, scenario: &Scenario) -> f64 {
    (scenario.tx_to_noise_ratio() * gain).ln_1p() / std::f64::consts::LN_2
}

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

pub fn linear_to_db(x: f64) -> f64 {
    10.0 * x.log10()
}
