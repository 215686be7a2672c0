use super::{Equilibrium, MixedStrategy, PayoffMatrix};

/// Simultaneous fictitious play.
///
/// Both players start on their first action and then best-respond to the
/// empirical mix of the opponent. The returned value is the midpoint of the
/// best-response bounds `max_i (M y)_i` and `min_j (x^T M)_j`, which bracket
/// the game value at every step. Ties go to the lowest index.
pub fn fictitious_play(matrix: &PayoffMatrix, iterations: usize) -> Equilibrium {
    let (m, n) = (matrix.rows(), matrix.cols());
    let iterations = iterations.max(1);
    let transposed = matrix.transpose();

    // Cumulative payoff of each pure row against the column history, and of
    // each pure column against the row history.
    let mut row_totals = vec![0.0; m];
    let mut col_totals = vec![0.0; n];
    let mut row_counts = vec![0u64; m];
    let mut col_counts = vec![0u64; n];
    let (mut row, mut col) = (0usize, 0usize);

    for _ in 0..iterations {
        row_counts[row] += 1;
        col_counts[col] += 1;
        for (t, v) in row_totals.iter_mut().zip(transposed.row(col)) {
            *t += v;
        }
        for (t, v) in col_totals.iter_mut().zip(matrix.row(row)) {
            *t += v;
        }
        row = argmax(&row_totals);
        col = argmin(&col_totals);
    }

    let t = iterations as f64;
    let upper = row_totals[argmax(&row_totals)] / t;
    let lower = col_totals[argmin(&col_totals)] / t;
    let to_strategy = |counts: &[u64]| {
        MixedStrategy::normalized(counts.iter().map(|&c| c as f64).collect())
            .expect("fictitious play counts are positive")
    };
    Equilibrium {
        x_r: to_strategy(&row_counts),
        x_a: to_strategy(&col_counts),
        value: 0.5 * (upper + lower),
    }
}

fn argmax(v: &[f64]) -> usize {
    let mut best = 0;
    for (i, &x) in v.iter().enumerate().skip(1) {
        if x > v[best] {
            best = i;
        }
    }
    best
}

fn argmin(v: &[f64]) -> usize {
    let mut best = 0;
    for (i, &x) in v.iter().enumerate().skip(1) {
        if x < v[best] {
            best = i;
        }
    }
    best
}
