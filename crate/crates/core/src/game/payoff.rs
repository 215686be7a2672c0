use super::{ActionGrid, PayoffMatrix};
use crate::channel::{channel_sample, spectral_efficiency, ChannelError, FadingField, Scenario};

/// Spectral efficiency for every receiver (row) and adversary (column)
/// angle of the standard action grid.
pub fn build_payoff_matrix(
    scenario: &Scenario,
    fading: &FadingField,
) -> Result<PayoffMatrix, ChannelError> {
    scenario.validate()?;
    let grid = ActionGrid::standard();
    let k = grid.len();
    if fading.rows() != k || fading.cols() != k {
        return Err(ChannelError::InvalidScenario(format!(
            "fading field is {}x{}, expected {k}x{k}",
            fading.rows(),
            fading.cols()
        )));
    }
    let scenario = scenario.resolved()?;

    let mut values = Vec::with_capacity(k * k);
    for (i, &theta_r) in grid.angles().iter().enumerate() {
        let pos_r = scenario.receiver_at(theta_r)?;
        for (j, &theta_a) in grid.angles().iter().enumerate() {
            let pos_a = scenario.adversary_at(theta_a)?;
            let sample = channel_sample(&pos_r, &pos_a, &scenario, fading.get(i, j))?;
            values.push(spectral_efficiency(&sample, &scenario));
        }
    }
    Ok(PayoffMatrix::new(k, k, values).expect("spectral efficiencies are finite"))
}
