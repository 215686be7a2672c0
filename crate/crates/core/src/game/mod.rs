//! Two-player zero-sum games in normal form: the receiver picks a row and
//! maximises, the adversary picks a column and minimises.

mod fictitious;
mod payoff;
mod simplex;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use fictitious::fictitious_play;
pub use payoff::build_payoff_matrix;
pub use simplex::solve_zero_sum_lp;

/// Probability below which an action is not counted as played.
pub const DEFAULT_SUPPORT_EPSILON: f64 = 1e-6;

/// Number of angular positions available to each player.
pub const GRID_SIZE: usize = 15;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolveError {
    #[error("payoff matrix is empty")]
    EmptyMatrix,
    #[error("payoff matrix has {got} values, expected {rows}x{cols}")]
    ShapeMismatch {
        rows: usize,
        cols: usize,
        got: usize,
    },
    #[error("payoff entry ({row}, {col}) is not finite: {value}")]
    NonFinite { row: usize, col: usize, value: f64 },
    #[error("invalid mixed strategy: {0}")]
    InvalidStrategy(String),
    #[error("simplex failed to converge: {0}")]
    Numerical(ConditionReport),
}

/// Diagnostics attached to a failed solve.
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionReport {
    pub rows: usize,
    pub cols: usize,
    pub min_entry: f64,
    pub max_entry: f64,
    pub smallest_pivot: f64,
    pub iterations: usize,
    pub reason: &'static str,
}

impl fmt::Display for ConditionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} ({}x{} matrix, entries in [{:e}, {:e}], smallest pivot {:e}, {} iterations)",
            self.reason,
            self.rows,
            self.cols,
            self.min_entry,
            self.max_entry,
            self.smallest_pivot,
            self.iterations
        )
    }
}

/// The common angular action set `alpha_k = (k / 7) * 30°`, `k = 0..=14`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ActionGrid {
    angles: Vec<f64>,
}

impl ActionGrid {
    pub fn standard() -> Self {
        let angles = (0..GRID_SIZE).map(|k| (k as f64 / 7.0) * 30.0).collect();
        Self { angles }
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    pub fn len(&self) -> usize {
        self.angles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.angles.is_empty()
    }
}

/// Dense row-major payoff matrix (payoff to the row player).
#[derive(Debug, Clone, PartialEq)]
pub struct PayoffMatrix {
    rows: usize,
    cols: usize,
    values: Vec<f64>,
}

impl PayoffMatrix {
    pub fn new(rows: usize, cols: usize, values: Vec<f64>) -> Result<Self, SolveError> {
        if rows == 0 || cols == 0 {
            return Err(SolveError::EmptyMatrix);
        }
        if values.len() != rows * cols {
            return Err(SolveError::ShapeMismatch {
                rows,
                cols,
                got: values.len(),
            });
        }
        if let Some(k) = values.iter().position(|v| !v.is_finite()) {
            return Err(SolveError::NonFinite {
                row: k / cols,
                col: k % cols,
                value: values[k],
            });
        }
        Ok(Self { rows, cols, values })
    }

    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self, SolveError> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut values = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(SolveError::ShapeMismatch {
                    rows: rows.len(),
                    cols,
                    got: r.len(),
                });
            }
            values.extend_from_slice(r);
        }
        Self::new(rows.len(), cols, values)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.values[row * self.cols + col]
    }

    pub fn row(&self, row: usize) -> &[f64] {
        &self.values[row * self.cols..(row + 1) * self.cols]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn min_entry(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max_entry(&self) -> f64 {
        self.values
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn transpose(&self) -> Self {
        let mut values = Vec::with_capacity(self.values.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                values.push(self.get(i, j));
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            values,
        }
    }

    /// `a * M + b` elementwise.
    pub fn affine(&self, a: f64, b: f64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            values: self.values.iter().map(|v| a * v + b).collect(),
        }
    }

    /// Expected payoff of each pure row against the column mix `y`.
    pub fn row_payoffs(&self, y: &[f64]) -> Vec<f64> {
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(y).map(|(m, p)| m * p).sum())
            .collect()
    }

    /// Expected payoff of each pure column against the row mix `x`.
    pub fn col_payoffs(&self, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.cols];
        for (i, &p) in x.iter().enumerate() {
            for (o, m) in out.iter_mut().zip(self.row(i)) {
                *o += p * m;
            }
        }
        out
    }
}

/// Probability distribution over a player's pure actions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MixedStrategy(Vec<f64>);

impl MixedStrategy {
    pub const SUM_TOLERANCE: f64 = 1e-9;

    pub fn new(probs: Vec<f64>) -> Result<Self, SolveError> {
        if probs.is_empty() {
            return Err(SolveError::InvalidStrategy("no actions".into()));
        }
        if let Some(p) = probs.iter().find(|p| !(p.is_finite() && **p >= 0.0)) {
            return Err(SolveError::InvalidStrategy(format!(
                "weight {p} is negative or not finite"
            )));
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > Self::SUM_TOLERANCE {
            return Err(SolveError::InvalidStrategy(format!("weights sum to {sum}")));
        }
        Ok(Self(probs))
    }

    /// Clips round-off negatives and rescales non-negative weights to sum 1.
    pub fn normalized(mut weights: Vec<f64>) -> Result<Self, SolveError> {
        for w in weights.iter_mut() {
            if *w < 0.0 && *w > -1e-9 {
                *w = 0.0;
            }
        }
        let sum: f64 = weights.iter().sum();
        if !(sum.is_finite() && sum > 0.0) {
            return Err(SolveError::InvalidStrategy(format!("weights sum to {sum}")));
        }
        weights.iter_mut().for_each(|w| *w /= sum);
        Self::new(weights)
    }

    pub fn pure(len: usize, index: usize) -> Self {
        let mut p = vec![0.0; len];
        p[index] = 1.0;
        Self(p)
    }

    pub fn uniform(len: usize) -> Self {
        Self(vec![1.0 / len as f64; len])
    }

    pub fn probs(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Indices of actions played with probability above `epsilon`.
pub fn support(strategy: &MixedStrategy, epsilon: f64) -> Vec<usize> {
    strategy
        .probs()
        .iter()
        .enumerate()
        .filter(|(_, &p)| p > epsilon)
        .map(|(i, _)| i)
        .collect()
}

/// Mixed equilibrium of a zero-sum game.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Equilibrium {
    pub x_r: MixedStrategy,
    pub x_a: MixedStrategy,
    pub value: f64,
}

/// How far a strategy pair is from an exact equilibrium of a given matrix.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Residuals {
    /// Best pure-row payoff against `x_a`.
    pub minimax: f64,
    /// Worst pure-column payoff against `x_r`.
    pub maximin: f64,
    /// `minimax - maximin`; zero at an exact equilibrium.
    pub minimax_gap: f64,
    /// Largest deviation from the value among rows in the support of `x_r`.
    pub row_indifference: f64,
    /// Largest deviation from the value among columns in the support of `x_a`.
    pub col_indifference: f64,
    /// Largest gain a pure row deviation makes over the value.
    pub row_deviation_gain: f64,
    /// Largest gain a pure column deviation makes for the minimiser.
    pub col_deviation_gain: f64,
}

impl Equilibrium {
    pub fn residuals(&self, matrix: &PayoffMatrix) -> Residuals {
        let rows = matrix.row_payoffs(self.x_a.probs());
        let cols = matrix.col_payoffs(self.x_r.probs());
        let minimax = rows.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let maximin = cols.iter().copied().fold(f64::INFINITY, f64::min);
        let indifference = |payoffs: &[f64], strategy: &MixedStrategy| {
            support(strategy, DEFAULT_SUPPORT_EPSILON)
                .into_iter()
                .map(|k| (payoffs[k] - self.value).abs())
                .fold(0.0, f64::max)
        };
        Residuals {
            minimax,
            maximin,
            minimax_gap: minimax - maximin,
            row_indifference: indifference(&rows, &self.x_r),
            col_indifference: indifference(&cols, &self.x_a),
            row_deviation_gain: (minimax - self.value).max(0.0),
            col_deviation_gain: (self.value - maximin).max(0.0),
        }
    }
}
