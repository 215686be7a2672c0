//! Monte-Carlo campaigns over fading realizations and obstacle distances.

mod seed;
mod sweep;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::channel::{draw_fading_field, ChannelError, Scenario};
use crate::game::{
    build_payoff_matrix, solve_zero_sum_lp, ActionGrid, Equilibrium, MixedStrategy, PayoffMatrix,
    SolveError, GRID_SIZE,
};

pub use seed::child_seed;
pub use sweep::{sweep, sweep_with, Execution, SweepReport};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExperimentError {
    #[error(transparent)]
    Channel(#[from] ChannelError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error("invalid sweep configuration: {0}")]
    Config(String),
    #[error("cannot aggregate an empty set of equilibria")]
    EmptyAggregate,
}

/// Obstacle distances of the default campaign, metres.
pub const DEFAULT_DISTANCES_M: [f64; 7] = [1.00, 1.25, 1.50, 1.75, 2.00, 2.25, 2.50];
pub const DEFAULT_REALIZATIONS: usize = 50;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepConfig {
    pub distances_m: Vec<f64>,
    pub realizations: usize,
    pub master_seed: u64,
    /// Template; `rho_a_m` is overwritten by each sweep distance.
    pub scenario: Scenario,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            distances_m: DEFAULT_DISTANCES_M.to_vec(),
            realizations: DEFAULT_REALIZATIONS,
            master_seed: 0,
            scenario: Scenario::default(),
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<(), ExperimentError> {
        if self.distances_m.is_empty() {
            return Err(ExperimentError::Config("no distances".into()));
        }
        if self.realizations == 0 {
            return Err(ExperimentError::Config(
                "realizations must be at least 1".into(),
            ));
        }
        if !self.distances_m.windows(2).all(|w| w[0] < w[1]) {
            return Err(ExperimentError::Config(
                "distances must be strictly increasing".into(),
            ));
        }
        for &d in &self.distances_m {
            self.scenario_at(d).validate()?;
        }
        Ok(())
    }

    pub fn scenario_at(&self, rho_a_m: f64) -> Scenario {
        Scenario {
            rho_a_m,
            ..self.scenario.clone()
        }
    }
}

/// Outcome of one fading realization.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Realization {
    pub seed: u64,
    pub equilibrium: Equilibrium,
    pub min_entry: f64,
    pub max_entry: f64,
}

/// Payoff matrix of one realization: the fading field is drawn from a
/// ChaCha8 stream seeded with `seed`.
pub fn realization_matrix(scenario: &Scenario, seed: u64) -> Result<PayoffMatrix, ExperimentError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let field = draw_fading_field(&mut rng, scenario, GRID_SIZE, GRID_SIZE);
    Ok(build_payoff_matrix(scenario, &field)?)
}

/// Draws one fading field, builds the payoff matrix and solves it.
pub fn run_realization(scenario: &Scenario, seed: u64) -> Result<Realization, ExperimentError> {
    let matrix = realization_matrix(scenario, seed)?;
    let equilibrium = solve_zero_sum_lp(&matrix)?;
    Ok(Realization {
        seed,
        equilibrium,
        min_entry: matrix.min_entry(),
        max_entry: matrix.max_entry(),
    })
}

/// Probability-weighted mean angle of a mixed strategy over the grid.
///
/// This is a summary statistic only: a 50/50 mix of 0° and 60° averages to
/// 30° without ever placing the player at 30°.
pub fn weighted_mean_angle(strategy: &MixedStrategy, grid: &ActionGrid) -> f64 {
    strategy
        .probs()
        .iter()
        .zip(grid.angles())
        .map(|(p, a)| p * a)
        .sum()
}

/// Statistics of the equilibria found at one obstacle distance. Standard
/// deviations use the population convention (divide by `N`).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistanceAggregate {
    pub rho_a_m: f64,
    pub realizations: usize,
    pub mean_strategy_r: Vec<f64>,
    pub mean_strategy_a: Vec<f64>,
    pub std_strategy_r: Vec<f64>,
    pub std_strategy_a: Vec<f64>,
    pub mean_angle_r_deg: f64,
    pub mean_angle_a_deg: f64,
    pub std_angle_r_deg: f64,
    pub std_angle_a_deg: f64,
    pub mean_value: f64,
    pub std_value: f64,
}

impl DistanceAggregate {
    /// Whether the adversary's mean angle sits below the receiver's.
    pub fn adversary_below_receiver(&self) -> bool {
        self.mean_angle_a_deg < self.mean_angle_r_deg
    }
}

fn mean_std(xs: impl Iterator<Item = f64> + Clone) -> (f64, f64) {
    let n = xs.clone().count() as f64;
    let mean = xs.clone().sum::<f64>() / n;
    let var = xs.map(|x| (x - mean).powi(2)).sum::<f64>() / n;
    (mean, var.sqrt())
}

fn per_action(vectors: &[&[f64]]) -> (Vec<f64>, Vec<f64>) {
    let k = vectors[0].len();
    (0..k)
        .map(|a| mean_std(vectors.iter().map(move |v| v[a])))
        .unzip()
}

pub fn aggregate(
    rho_a_m: f64,
    equilibria: &[Equilibrium],
    grid: &ActionGrid,
) -> Result<DistanceAggregate, ExperimentError> {
    if equilibria.is_empty() {
        return Err(ExperimentError::EmptyAggregate);
    }
    let rs: Vec<&[f64]> = equilibria.iter().map(|e| e.x_r.probs()).collect();
    let as_: Vec<&[f64]> = equilibria.iter().map(|e| e.x_a.probs()).collect();
    let (mean_strategy_r, std_strategy_r) = per_action(&rs);
    let (mean_strategy_a, std_strategy_a) = per_action(&as_);
    let (mean_angle_r_deg, std_angle_r_deg) =
        mean_std(equilibria.iter().map(|e| weighted_mean_angle(&e.x_r, grid)));
    let (mean_angle_a_deg, std_angle_a_deg) =
        mean_std(equilibria.iter().map(|e| weighted_mean_angle(&e.x_a, grid)));
    let (mean_value, std_value) = mean_std(equilibria.iter().map(|e| e.value));
    Ok(DistanceAggregate {
        rho_a_m,
        realizations: equilibria.len(),
        mean_strategy_r,
        mean_strategy_a,
        std_strategy_r,
        std_strategy_a,
        mean_angle_r_deg,
        mean_angle_a_deg,
        std_angle_r_deg,
        std_angle_a_deg,
        mean_value,
        std_value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::FadingMode;
    use approx::assert_abs_diff_eq;

    fn pure_eq(r: usize, a: usize, value: f64) -> Equilibrium {
        Equilibrium {
            x_r: MixedStrategy::pure(15, r),
            x_a: MixedStrategy::pure(15, a),
            value,
        }
    }

    #[test]
    fn weighted_angles() {
        let g = ActionGrid::standard();
        assert_eq!(weighted_mean_angle(&MixedStrategy::pure(15, 7), &g), 30.0);
        let mut p = vec![0.0; 15];
        p[0] = 0.5;
        p[14] = 0.5;
        assert_eq!(
            weighted_mean_angle(&MixedStrategy::new(p).unwrap(), &g),
            30.0
        );
        let mut p = vec![0.0; 15];
        p[6] = 0.25;
        p[10] = 0.75;
        let expected = 0.25 * 180.0 / 7.0 + 0.75 * 300.0 / 7.0;
        assert_abs_diff_eq!(
            weighted_mean_angle(&MixedStrategy::new(p).unwrap(), &g),
            expected,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(expected, 38.571, epsilon = 1e-3);
    }

    #[test]
    fn aggregate_single_and_identical() {
        let g = ActionGrid::standard();
        let e = pure_eq(6, 1, 7.5);
        for eqs in [vec![e.clone()], vec![e.clone(), e.clone()]] {
            let agg = aggregate(1.5, &eqs, &g).unwrap();
            assert_eq!(agg.mean_value, 7.5);
            assert_eq!(agg.std_value, 0.0);
            assert_eq!(agg.mean_strategy_r, e.x_r.probs());
            assert!(agg.std_strategy_a.iter().all(|s| *s == 0.0));
            assert_eq!(agg.mean_angle_r_deg, g.angles()[6]);
            assert_eq!(agg.std_angle_r_deg, 0.0);
        }
    }

    #[test]
    fn aggregate_population_std() {
        let g = ActionGrid::standard();
        let agg = aggregate(1.0, &[pure_eq(0, 0, 6.0), pure_eq(14, 0, 8.0)], &g).unwrap();
        assert_eq!(agg.mean_value, 7.0);
        assert_eq!(agg.std_value, 1.0);
        assert_eq!(agg.mean_strategy_r[0], 0.5);
        assert_eq!(agg.std_strategy_r[0], 0.5);
        assert_abs_diff_eq!(
            agg.mean_strategy_r.iter().sum::<f64>(),
            1.0,
            epsilon = 1e-12
        );
        assert_eq!(agg.mean_angle_r_deg, 30.0);
    }

    #[test]
    fn aggregate_empty_is_error() {
        assert_eq!(
            aggregate(1.0, &[], &ActionGrid::standard()),
            Err(ExperimentError::EmptyAggregate)
        );
    }

    #[test]
    fn realization_is_deterministic() {
        let s = Scenario::default();
        assert_eq!(
            run_realization(&s, 99).unwrap(),
            run_realization(&s, 99).unwrap()
        );
    }

    #[test]
    fn realization_without_fading_ignores_seed() {
        let s = Scenario {
            fading_mode: FadingMode::Off,
            ..Scenario::default()
        };
        let a = run_realization(&s, 1).unwrap();
        let b = run_realization(&s, 2).unwrap();
        assert_eq!(a.equilibrium, b.equilibrium);
    }

    #[test]
    fn config_validation() {
        assert!(SweepConfig::default().validate().is_ok());
        let bad = SweepConfig {
            distances_m: vec![1.0, 1.0],
            ..SweepConfig::default()
        };
        assert!(bad.validate().is_err());
        let bad = SweepConfig {
            distances_m: vec![1.0, 3.5],
            ..SweepConfig::default()
        };
        assert!(bad.validate().is_err());
        let bad = SweepConfig {
            realizations: 0,
            ..SweepConfig::default()
        };
        assert!(bad.validate().is_err());
    }
}
