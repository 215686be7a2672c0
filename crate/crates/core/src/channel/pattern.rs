use std::f64::consts::PI;

use super::{ChannelError, Scenario};

/// Exponent `q` of the `cos^q(theta)` power pattern of a single patch.
///
/// Smallest round value that puts the 60° pattern at least 25 dB below
/// boresight for the default 8-element half-wavelength array.
pub const ELEMENT_PATTERN_EXPONENT: f64 = 2.4;

/// Normalised uniform array factor `sin(N psi / 2) / (N sin(psi / 2))`.
fn array_factor(theta_rad: f64, elements: u32, spacing_wavelengths: f64) -> f64 {
    let n = f64::from(elements);
    let half_psi = PI * spacing_wavelengths * theta_rad.sin();
    let den = n * half_psi.sin();
    if den.abs() < 1e-12 {
        // Main (or grating) lobe: limit is +-1.
        return 1.0;
    }
    (n * half_psi).sin() / den
}

/// Transmit gain in dBi along the azimuth cut at `theta_deg`.
///
/// Even in `theta_deg`, equal to `boresight_gain_dbi` at 0° and clamped
/// from below at `gain_floor_dbi`.
pub fn array_gain_dbi(theta_deg: f64, scenario: &Scenario) -> Result<f64, ChannelError> {
    if !(-90.0..=90.0).contains(&theta_deg) {
        return Err(ChannelError::AngleOutOfRange(theta_deg));
    }
    let theta = theta_deg.abs().to_radians();
    let af = array_factor(
        theta,
        scenario.array_elements_azimuth,
        scenario.element_spacing_wavelengths,
    );
    let element = theta.cos().max(0.0).powf(ELEMENT_PATTERN_EXPONENT);
    let power = af * af * element;
    if power <= 0.0 {
        return Ok(scenario.gain_floor_dbi);
    }
    let gain = scenario.boresight_gain_dbi + 10.0 * power.log10();
    Ok(gain.clamp(scenario.gain_floor_dbi, scenario.boresight_gain_dbi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn boresight_gain() {
        let s = Scenario::default();
        assert_eq!(array_gain_dbi(0.0, &s).unwrap(), 20.0);
    }

    #[test]
    fn first_sidelobe_near_21_degrees() {
        let s = Scenario::default();
        assert_abs_diff_eq!(array_gain_dbi(21.0, &s).unwrap(), 6.7, epsilon = 0.3);
    }

    #[test]
    fn null_at_30_degrees_hits_floor() {
        let s = Scenario::default();
        assert_eq!(array_gain_dbi(30.0, &s).unwrap(), -40.0);
    }

    #[test]
    fn sixty_degrees_at_least_25_db_down() {
        let s = Scenario::default();
        assert!(array_gain_dbi(60.0, &s).unwrap() <= 20.0 - 25.0);
        assert_eq!(array_gain_dbi(90.0, &s).unwrap(), -40.0);
    }

    #[test]
    fn rejects_out_of_range() {
        let s = Scenario::default();
        assert!(array_gain_dbi(90.01, &s).is_err());
        assert!(array_gain_dbi(-91.0, &s).is_err());
        assert!(array_gain_dbi(f64::NAN, &s).is_err());
    }

    #[test]
    fn single_element_is_element_pattern() {
        let s = Scenario {
            array_elements_azimuth: 1,
            ..Scenario::default()
        };
        let expected = 20.0 + ELEMENT_PATTERN_EXPONENT * 10.0 * 45f64.to_radians().cos().log10();
        assert_abs_diff_eq!(array_gain_dbi(45.0, &s).unwrap(), expected, epsilon = 1e-12);
    }

    proptest! {
        #[test]
        fn even_and_bounded(theta in 0.0f64..=90.0) {
            let s = Scenario::default();
            let g = array_gain_dbi(theta, &s).unwrap();
            prop_assert_eq!(g, array_gain_dbi(-theta, &s).unwrap());
            prop_assert!((-40.0..=20.0).contains(&g));
        }
    }
}
