use std::path::{Path, PathBuf};

use blockpeek::channel::{array_gain_dbi, Scenario};
use blockpeek::experiment::{realization_matrix, sweep_with, Execution};
use blockpeek::game::{
    solve_zero_sum_lp, support, ActionGrid, PayoffMatrix, Residuals, DEFAULT_SUPPORT_EPSILON,
};
use serde::Serialize;

use crate::config::ConfigFile;
use crate::error::CliError;
use crate::manifest::{unix_now, OutputSet};
use crate::tables::{self, Player};

/// Options shared by every subcommand.
#[derive(Debug, Clone)]
pub struct Globals {
    pub config: Option<PathBuf>,
    pub seed: Option<u64>,
    pub out: PathBuf,
}

impl Globals {
    fn config_file(&self) -> Result<ConfigFile, CliError> {
        match &self.config {
            Some(p) => ConfigFile::load(p),
            None => Ok(ConfigFile::default()),
        }
    }

    fn seed_for(&self, cfg: &ConfigFile) -> u64 {
        self.seed.or(cfg.master_seed).unwrap_or(0)
    }
}

pub const MAX_PATTERN_RESOLUTION_DEG: f64 = 5.0;

/// Samples of the transmit pattern over [-90°, 90°].
pub fn pattern_samples(
    scenario: &Scenario,
    resolution_deg: f64,
) -> Result<Vec<(f64, f64)>, CliError> {
    if !(resolution_deg > 0.0 && resolution_deg <= MAX_PATTERN_RESOLUTION_DEG) {
        return Err(CliError::Domain(format!(
            "resolution must be in (0, {MAX_PATTERN_RESOLUTION_DEG}] degrees, got {resolution_deg}"
        )));
    }
    let steps = (180.0 / resolution_deg + 1e-9).floor() as usize;
    (0..=steps)
        .map(|k| {
            let angle = ((k as f64 * resolution_deg - 90.0) * 1e9).round() / 1e9;
            let angle = angle.min(90.0) + 0.0;
            Ok((angle, array_gain_dbi(angle, scenario)?))
        })
        .collect()
}

pub fn pattern(g: &Globals, resolution_deg: f64, output: &str) -> Result<Vec<PathBuf>, CliError> {
    let started = unix_now();
    let cfg = g.config_file()?;
    let scenario = cfg.scenario();
    scenario.validate()?;
    let rows = pattern_samples(&scenario, resolution_deg)?;
    let mut out = OutputSet::new(&g.out)?;
    let file = out.write(output, &tables::pattern_table(&rows))?;
    let manifest = out.finish("pattern", g.seed_for(&cfg), &scenario, started)?;
    Ok(vec![file, manifest])
}

pub fn payoff(g: &Globals, output: &str) -> Result<Vec<PathBuf>, CliError> {
    let started = unix_now();
    let cfg = g.config_file()?;
    let seed = g.seed_for(&cfg);
    let scenario = cfg.scenario().resolved()?;
    let matrix = realization_matrix(&scenario, seed)?;
    let comments = vec![format!(
        "rho_r_m={} rho_a_m={} seed={seed}",
        scenario.rho_r_m, scenario.rho_a_m
    )];
    let mut out = OutputSet::new(&g.out)?;
    let file = out.write(
        output,
        &tables::payoff_table(&matrix, &ActionGrid::standard(), &comments),
    )?;
    let manifest = out.finish("payoff", seed, &scenario, started)?;
    Ok(vec![file, manifest])
}

/// Equilibrium file written by `solve`.
#[derive(Debug, Serialize)]
pub struct SolveOutput {
    pub rows: usize,
    pub cols: usize,
    pub value: f64,
    pub x_r: Vec<f64>,
    pub x_a: Vec<f64>,
    pub support_epsilon: f64,
    pub support_r: Vec<usize>,
    pub support_a: Vec<usize>,
    pub residuals: Residuals,
}

pub fn solve_matrix(matrix: &PayoffMatrix) -> Result<SolveOutput, CliError> {
    let eq = solve_zero_sum_lp(matrix)?;
    Ok(SolveOutput {
        rows: matrix.rows(),
        cols: matrix.cols(),
        value: eq.value,
        residuals: eq.residuals(matrix),
        support_epsilon: DEFAULT_SUPPORT_EPSILON,
        support_r: support(&eq.x_r, DEFAULT_SUPPORT_EPSILON),
        support_a: support(&eq.x_a, DEFAULT_SUPPORT_EPSILON),
        x_r: eq.x_r.probs().to_vec(),
        x_a: eq.x_a.probs().to_vec(),
    })
}

#[derive(Serialize)]
struct SolveConfigEcho<'a> {
    matrix: Option<&'a Path>,
    scenario: Option<Scenario>,
}

pub fn solve(
    g: &Globals,
    matrix_path: Option<&Path>,
    output: &str,
) -> Result<Vec<PathBuf>, CliError> {
    let started = unix_now();
    let cfg = g.config_file()?;
    let seed = g.seed_for(&cfg);
    let (matrix, echo) = match matrix_path {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| CliError::io(p, e))?;
            let echo = SolveConfigEcho {
                matrix: Some(p),
                scenario: None,
            };
            (tables::parse_matrix(&text, p)?, echo)
        }
        None => {
            let scenario = cfg.scenario().resolved()?;
            let m = realization_matrix(&scenario, seed)?;
            (
                m,
                SolveConfigEcho {
                    matrix: None,
                    scenario: Some(scenario),
                },
            )
        }
    };
    let result = solve_matrix(&matrix)?;
    let mut text = serde_json::to_string_pretty(&result).expect("equilibrium serialises");
    text.push('\n');
    let mut out = OutputSet::new(&g.out)?;
    let file = out.write(output, &text)?;
    let manifest = out.finish("solve", seed, echo, started)?;
    Ok(vec![file, manifest])
}

pub const HEATMAP_RECEIVER: &str = "heatmap_receiver.csv";
pub const HEATMAP_ADVERSARY: &str = "heatmap_adversary.csv";
pub const SUMMARY: &str = "summary.csv";
pub const REALIZATIONS: &str = "realizations.csv";

pub fn sweep(g: &Globals, dump_realizations: bool) -> Result<Vec<PathBuf>, CliError> {
    let started = unix_now();
    let cfg = g.config_file()?;
    let mut config = cfg.sweep(g.seed);
    config.scenario = config.scenario.resolved()?;
    let report = sweep_with(&config, Execution::default())?;
    let grid = ActionGrid::standard();

    let mut out = OutputSet::new(&g.out)?;
    let mut files = vec![
        out.write(
            HEATMAP_RECEIVER,
            &tables::heatmap_table(&report.aggregates, &grid, Player::Receiver),
        )?,
        out.write(
            HEATMAP_ADVERSARY,
            &tables::heatmap_table(&report.aggregates, &grid, Player::Adversary),
        )?,
        out.write(SUMMARY, &tables::summary_table(&report.aggregates))?,
    ];
    if dump_realizations {
        files.push(out.write(REALIZATIONS, &tables::realizations_table(&report, &grid))?);
    }
    let violations = report.peeking_violations();
    if violations.is_empty() {
        log::info!("adversary mean angle below receiver mean angle at every distance");
    } else {
        log::warn!("adversary mean angle not below receiver's at rho_a = {violations:?} m");
    }
    files.push(out.finish("sweep", config.master_seed, &config, started)?);
    Ok(files)
}
