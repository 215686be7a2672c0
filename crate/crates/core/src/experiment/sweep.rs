#[cfg(feature = "parallel")]
use rayon::prelude::*;
use serde::Serialize;

use super::{
    aggregate, child_seed, run_realization, DistanceAggregate, ExperimentError, Realization,
    SweepConfig,
};
use crate::game::ActionGrid;

/// How the independent realizations of a sweep are scheduled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    /// Rayon work-stealing over realizations. Without the `parallel`
    /// feature this runs sequentially.
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepReport {
    pub aggregates: Vec<DistanceAggregate>,
    /// Per-distance, per-realization outcomes in seed order.
    pub realizations: Vec<Vec<Realization>>,
}

impl SweepReport {
    /// Distances at which the adversary's mean angle is not below the
    /// receiver's.
    pub fn peeking_violations(&self) -> Vec<f64> {
        self.aggregates
            .iter()
            .filter(|a| !a.adversary_below_receiver())
            .map(|a| a.rho_a_m)
            .collect()
    }
}

/// Runs the whole campaign with the default execution strategy.
pub fn sweep(config: &SweepConfig) -> Result<Vec<DistanceAggregate>, ExperimentError> {
    Ok(sweep_with(config, Execution::default())?.aggregates)
}

pub fn sweep_with(
    config: &SweepConfig,
    execution: Execution,
) -> Result<SweepReport, ExperimentError> {
    config.validate()?;
    let template = config.scenario.resolved()?;
    let scenarios: Vec<_> = config
        .distances_m
        .iter()
        .map(|&d| {
            super::SweepConfig {
                scenario: template.clone(),
                ..config.clone()
            }
            .scenario_at(d)
        })
        .collect();

    let tasks: Vec<(usize, usize)> = (0..scenarios.len())
        .flat_map(|d| (0..config.realizations).map(move |r| (d, r)))
        .collect();
    let run = |&(d, r): &(usize, usize)| {
        run_realization(&scenarios[d], child_seed(config.master_seed, d, r))
    };

    let outcomes: Vec<Realization> = match execution {
        #[cfg(feature = "parallel")]
        Execution::Parallel => tasks.par_iter().map(run).collect::<Result<_, _>>()?,
        _ => tasks.iter().map(run).collect::<Result<_, _>>()?,
    };

    let grid = ActionGrid::standard();
    let mut aggregates = Vec::with_capacity(scenarios.len());
    let mut realizations = Vec::with_capacity(scenarios.len());
    for (chunk, &rho_a) in outcomes
        .chunks(config.realizations)
        .zip(&config.distances_m)
    {
        let eqs: Vec<_> = chunk.iter().map(|r| r.equilibrium.clone()).collect();
        let agg = aggregate(rho_a, &eqs, &grid)?;
        if !agg.adversary_below_receiver() {
            log::warn!(
                "rho_a = {rho_a:.2} m: adversary mean angle {:.2}° is not below receiver mean angle {:.2}°",
                agg.mean_angle_a_deg,
                agg.mean_angle_r_deg
            );
        }
        aggregates.push(agg);
        realizations.push(chunk.to_vec());
    }
    Ok(SweepReport {
        aggregates,
        realizations,
    })
}
