use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::{db_to_linear, Scenario};

/// How the multipath term is drawn across the cells of a payoff matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FadingMode {
    /// Independent draw for every receiver/obstacle cell.
    #[default]
    PerCell,
    /// A single draw shared by every cell of the realization.
    Shared,
    /// No multipath; `r3 = 0` everywhere.
    Off,
}

/// Circularly-symmetric complex Gaussian gain with mean power
/// `fading_mean_power_db`, so `|r3|` is Rayleigh distributed.
pub fn draw_fading<R: Rng + ?Sized>(rng: &mut R, scenario: &Scenario) -> Complex64 {
    if scenario.fading_mode == FadingMode::Off {
        return Complex64::new(0.0, 0.0);
    }
    let sigma = (db_to_linear(scenario.fading_mean_power_db) / 2.0).sqrt();
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(sigma * re, sigma * im)
}

/// Multipath gains for every cell of one realization, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct FadingField {
    rows: usize,
    cols: usize,
    values: Vec<Complex64>,
}

impl FadingField {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            values: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn from_values(rows: usize, cols: usize, values: Vec<Complex64>) -> Option<Self> {
        (values.len() == rows * cols).then_some(Self { rows, cols, values })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.values[row * self.cols + col]
    }
}

pub fn draw_fading_field<R: Rng + ?Sized>(
    rng: &mut R,
    scenario: &Scenario,
    rows: usize,
    cols: usize,
) -> FadingField {
    let values = match scenario.fading_mode {
        FadingMode::PerCell => (0..rows * cols)
            .map(|_| draw_fading(rng, scenario))
            .collect(),
        FadingMode::Shared => vec![draw_fading(rng, scenario); rows * cols],
        FadingMode::Off => return FadingField::zeros(rows, cols),
    };
    FadingField { rows, cols, values }
}
