//! Plot-ready CSV tables: comma separated, LF line endings, comment lines
//! start with `#`.

use std::fmt::Write as _;
use std::path::Path;

use blockpeek::experiment::{DistanceAggregate, SweepReport};
use blockpeek::game::{ActionGrid, PayoffMatrix};

use crate::error::CliError;

pub const PAYOFF_DECIMALS: usize = 4;
pub const PROBABILITY_DECIMALS: usize = 6;

/// Which player a heatmap describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Player {
    Receiver,
    Adversary,
}

/// Rounds a probability vector to `decimals` places so that the printed
/// values still sum to exactly one (largest-remainder rounding).
pub fn round_probabilities(probs: &[f64], decimals: usize) -> Vec<String> {
    let scale = 10u64.pow(decimals as u32);
    let scaled: Vec<f64> = probs.iter().map(|p| p.max(0.0) * scale as f64).collect();
    let mut units: Vec<u64> = scaled.iter().map(|s| s.floor() as u64).collect();
    let target = scaled.iter().sum::<f64>().round() as u64;
    let mut deficit = target.saturating_sub(units.iter().sum());
    let mut order: Vec<usize> = (0..probs.len()).collect();
    order.sort_by(|&a, &b| {
        let fa = scaled[a] - scaled[a].floor();
        let fb = scaled[b] - scaled[b].floor();
        fb.total_cmp(&fa).then(a.cmp(&b))
    });
    for &k in order.iter().cycle().take(probs.len() * 2) {
        if deficit == 0 {
            break;
        }
        units[k] += 1;
        deficit -= 1;
    }
    units
        .into_iter()
        .map(|u| format!("{}.{:0width$}", u / scale, u % scale, width = decimals))
        .collect()
}

/// Formats a float, mapping negative zero to zero.
fn fixed(x: f64, decimals: usize) -> String {
    let s = format!("{x:.decimals$}");
    if s.starts_with('-') && s[1..].chars().all(|c| c == '0' || c == '.') {
        s[1..].to_string()
    } else {
        s
    }
}

pub fn pattern_table(rows: &[(f64, f64)]) -> String {
    let mut out = String::from("# transmit array azimuth pattern\n# angle_deg,gain_dbi\n");
    for (angle, gain) in rows {
        let _ = writeln!(out, "{},{}", fixed(*angle, 4), fixed(*gain, 4));
    }
    out
}

pub fn payoff_table(matrix: &PayoffMatrix, grid: &ActionGrid, comments: &[String]) -> String {
    let mut out = String::from(
        "# spectral efficiency (b/s/Hz); rows: receiver angle (deg), columns: adversary angle (deg)\n",
    );
    for c in comments {
        let _ = writeln!(out, "# {c}");
    }
    out.push_str("theta_r/theta_a");
    for a in grid.angles() {
        let _ = write!(out, ",{}", fixed(*a, 4));
    }
    out.push('\n');
    for (i, a) in grid.angles().iter().enumerate() {
        out.push_str(&fixed(*a, 4));
        for v in matrix.row(i) {
            let _ = write!(out, ",{}", fixed(*v, PAYOFF_DECIMALS));
        }
        out.push('\n');
    }
    out
}

/// Parses a payoff matrix. Accepts either a bare numeric grid or the labelled
/// layout written by [`payoff_table`] (first row and column are angles,
/// top-left cell is a label).
pub fn parse_matrix(text: &str, origin: &Path) -> Result<PayoffMatrix, CliError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .peekable();

    let labelled = match lines.peek() {
        Some((_, first)) => first
            .split(',')
            .next()
            .is_some_and(|cell| cell.trim().parse::<f64>().is_err()),
        None => return Err(CliError::parse(origin, "no matrix rows")),
    };
    if labelled {
        lines.next();
    }

    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (line_no, line) in lines {
        let mut cells = line.split(',').enumerate();
        if labelled {
            cells.next();
        }
        let row = cells
            .map(|(col, cell)| {
                cell.trim()
                    .parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| {
                        CliError::parse(
                            origin,
                            format!(
                                "line {line_no}, column {}: not a finite number: {cell:?}",
                                col + 1
                            ),
                        )
                    })
            })
            .collect::<Result<Vec<_>, _>>()?;
        if let Some(first) = rows.first() {
            if first.len() != row.len() {
                return Err(CliError::parse(
                    origin,
                    format!(
                        "line {line_no}: expected {} values, found {}",
                        first.len(),
                        row.len()
                    ),
                ));
            }
        }
        rows.push(row);
    }
    PayoffMatrix::from_rows(&rows).map_err(|e| CliError::parse(origin, e.to_string()))
}

pub fn heatmap_table(
    aggregates: &[DistanceAggregate],
    grid: &ActionGrid,
    player: Player,
) -> String {
    let name = match player {
        Player::Receiver => "receiver",
        Player::Adversary => "adversary",
    };
    let mut out = format!(
        "# mean equilibrium probability of each {name} angle, averaged over realizations\n\
         # rho_a_m,theta_deg,mean_probability\n"
    );
    for (k, agg) in aggregates.iter().enumerate() {
        if k > 0 {
            out.push('\n');
        }
        let probs = match player {
            Player::Receiver => &agg.mean_strategy_r,
            Player::Adversary => &agg.mean_strategy_a,
        };
        for (angle, p) in grid
            .angles()
            .iter()
            .zip(round_probabilities(probs, PROBABILITY_DECIMALS))
        {
            let _ = writeln!(out, "{},{},{}", fixed(agg.rho_a_m, 2), fixed(*angle, 4), p);
        }
    }
    out
}

pub fn summary_table(aggregates: &[DistanceAggregate]) -> String {
    let realizations = aggregates.first().map_or(0, |a| a.realizations);
    let mut out = format!(
        "# equilibrium summary over {realizations} realizations per distance\n\
         # std_value is the population standard deviation; 3-sigma band = mean_value +- 3 * std_value\n\
         # rho_a_m,mean_angle_r,mean_angle_a,mean_value,std_value\n"
    );
    for a in aggregates {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            fixed(a.rho_a_m, 2),
            fixed(a.mean_angle_r_deg, 4),
            fixed(a.mean_angle_a_deg, 4),
            fixed(a.mean_value, PAYOFF_DECIMALS),
            fixed(a.std_value, PAYOFF_DECIMALS)
        );
    }
    out
}

/// Raw per-realization equilibria.
pub fn realizations_table(report: &SweepReport, grid: &ActionGrid) -> String {
    let k = grid.len();
    let mut out = String::from(
        "# per-realization equilibria\n# rho_a_m,realization,seed,value,min_entry,max_entry",
    );
    for i in 0..k {
        let _ = write!(out, ",x_r_{i}");
    }
    for i in 0..k {
        let _ = write!(out, ",x_a_{i}");
    }
    out.push('\n');
    for (agg, runs) in report.aggregates.iter().zip(&report.realizations) {
        for (n, r) in runs.iter().enumerate() {
            let _ = write!(
                out,
                "{},{},{},{},{},{}",
                fixed(agg.rho_a_m, 2),
                n,
                r.seed,
                fixed(r.equilibrium.value, PAYOFF_DECIMALS),
                fixed(r.min_entry, PAYOFF_DECIMALS),
                fixed(r.max_entry, PAYOFF_DECIMALS)
            );
            for s in [&r.equilibrium.x_r, &r.equilibrium.x_a] {
                for p in round_probabilities(s.probs(), PROBABILITY_DECIMALS) {
                    let _ = write!(out, ",{p}");
                }
            }
            out.push('\n');
        }
    }
    out
}
