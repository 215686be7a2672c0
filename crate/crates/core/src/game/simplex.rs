//! Dense tableau simplex for the minimax linear program.
//!
//! After shifting the matrix so every entry is at least 1, the column
//! player's problem becomes
//!
//! ```text
//! maximise  sum_j w_j   subject to  A w <= 1,  w >= 0
//! ```
//!
//! whose slack basis is feasible, so no phase one is needed. With `z` the
//! optimum, the shifted value is `1 / z`, the column strategy is `w / z`, and
//! the row strategy is read from the slack reduced costs (the dual).

use super::{ConditionReport, Equilibrium, MixedStrategy, PayoffMatrix, SolveError};

const REDUCED_COST_TOL: f64 = 1e-11;
const PIVOT_TOL: f64 = 1e-11;
const RATIO_TIE_TOL: f64 = 1e-12;

struct Tableau {
    rows: usize,
    width: usize,
    cells: Vec<f64>,
    basis: Vec<usize>,
}

impl Tableau {
    fn new(shifted: &PayoffMatrix) -> Self {
        let (m, n) = (shifted.rows(), shifted.cols());
        let width = n + m + 1;
        let mut cells = vec![0.0; (m + 1) * width];
        for i in 0..m {
            let row = &mut cells[i * width..(i + 1) * width];
            row[..n].copy_from_slice(shifted.row(i));
            row[n + i] = 1.0;
            row[width - 1] = 1.0;
        }
        // Objective row holds reduced costs; its last cell is -z.
        cells[m * width..m * width + n].fill(1.0);
        Self {
            rows: m,
            width,
            cells,
            basis: (n..n + m).collect(),
        }
    }

    fn at(&self, i: usize, j: usize) -> f64 {
        self.cells[i * self.width + j]
    }

    fn rhs(&self, i: usize) -> f64 {
        self.at(i, self.width - 1)
    }

    /// Bland: lowest-index column with a positive reduced cost.
    fn entering(&self) -> Option<usize> {
        (0..self.width - 1).find(|&j| self.at(self.rows, j) > REDUCED_COST_TOL)
    }

    /// Minimum-ratio row, ties broken by the lowest basic variable index.
    fn leaving(&self, col: usize) -> Option<usize> {
        let mut best: Option<(usize, f64)> = None;
        for i in 0..self.rows {
            let a = self.at(i, col);
            if a <= PIVOT_TOL {
                continue;
            }
            let ratio = self.rhs(i) / a;
            best = match best {
                None => Some((i, ratio)),
                Some((bi, br)) => {
                    let tie = (ratio - br).abs() <= RATIO_TIE_TOL * br.abs().max(1.0);
                    if (tie && self.basis[i] < self.basis[bi]) || (!tie && ratio < br) {
                        Some((i, ratio))
                    } else {
                        Some((bi, br))
                    }
                }
            };
        }
        best.map(|(i, _)| i)
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let w = self.width;
        let p = self.at(row, col);
        for v in &mut self.cells[row * w..(row + 1) * w] {
            *v /= p;
        }
        let pivot_row: Vec<f64> = self.cells[row * w..(row + 1) * w].to_vec();
        for i in 0..=self.rows {
            if i == row {
                continue;
            }
            let factor = self.at(i, col);
            if factor == 0.0 {
                continue;
            }
            for (v, pr) in self.cells[i * w..(i + 1) * w].iter_mut().zip(&pivot_row) {
                *v -= factor * pr;
            }
            self.cells[i * w + col] = 0.0;
        }
        self.basis[row] = col;
    }
}

/// Exact mixed equilibrium of a zero-sum game by linear programming.
pub fn solve_zero_sum_lp(matrix: &PayoffMatrix) -> Result<Equilibrium, SolveError> {
    let (m, n) = (matrix.rows(), matrix.cols());
    let (lo, hi) = (matrix.min_entry(), matrix.max_entry());
    let shift = 1.0 - lo;
    let shifted = matrix.affine(1.0, shift);

    let mut tab = Tableau::new(&shifted);
    let max_iterations = 50 * (m + n) + 1000;
    let mut smallest_pivot = f64::INFINITY;
    let report = |reason, iterations, smallest_pivot| {
        SolveError::Numerical(ConditionReport {
            rows: m,
            cols: n,
            min_entry: lo,
            max_entry: hi,
            smallest_pivot,
            iterations,
            reason,
        })
    };

    let mut iterations = 0;
    while let Some(col) = tab.entering() {
        if iterations >= max_iterations {
            return Err(report(
                "iteration limit reached",
                iterations,
                smallest_pivot,
            ));
        }
        let Some(row) = tab.leaving(col) else {
            return Err(report(
                "no admissible pivot row",
                iterations,
                smallest_pivot,
            ));
        };
        smallest_pivot = smallest_pivot.min(tab.at(row, col).abs());
        tab.pivot(row, col);
        iterations += 1;
    }

    let mut w = vec![0.0; n];
    for (i, &b) in tab.basis.iter().enumerate() {
        if b < n {
            w[b] = tab.rhs(i);
        }
    }
    let duals: Vec<f64> = (0..m).map(|i| -tab.at(m, n + i)).collect();

    let z: f64 = w.iter().sum();
    if !(z.is_finite() && z > 0.0) {
        return Err(report("degenerate optimum", iterations, smallest_pivot));
    }
    let x_a = MixedStrategy::normalized(w).map_err(|_| {
        report(
            "primal solution not a distribution",
            iterations,
            smallest_pivot,
        )
    })?;
    let x_r = MixedStrategy::normalized(duals).map_err(|_| {
        report(
            "dual solution not a distribution",
            iterations,
            smallest_pivot,
        )
    })?;

    Ok(Equilibrium {
        x_r,
        x_a,
        value: 1.0 / z - shift,
    })
}
