use std::f64::consts::PI;

use num_complex::Complex64;

use super::{array_gain_dbi, db_to_linear, ChannelError, PolarPosition, Scenario, SPEED_OF_LIGHT};

/// Obstacles more than this far in angle from the receiver ray are off-axis
/// and never intercept the line of sight.
pub const OFF_AXIS_LIMIT_DEG: f64 = 45.0;

/// Below this Fresnel parameter the knife-edge approximation predicts no loss.
const FRESNEL_THRESHOLD: f64 = -0.78;

/// `exp(-j 2 pi d / lambda)` with the wavelength count reduced mod 1 first.
fn propagation_phase(d_m: f64, wavelength_m: f64) -> Complex64 {
    let cycles = (d_m / wavelength_m).fract();
    Complex64::from_polar(1.0, -2.0 * PI * cycles)
}

/// Friis amplitude `lambda / (4 pi d)` with propagation phase.
pub fn free_space_amplitude(d_m: f64, frequency_hz: f64) -> Result<Complex64, ChannelError> {
    if !(d_m.is_finite() && d_m > 0.0) {
        return Err(ChannelError::NonPositiveDistance(d_m));
    }
    if !(frequency_hz.is_finite() && frequency_hz > 0.0) {
        return Err(ChannelError::InvalidFrequency(frequency_hz));
    }
    let lambda = SPEED_OF_LIGHT / frequency_hz;
    Ok(propagation_phase(d_m, lambda) * (lambda / (4.0 * PI * d_m)))
}

/// Obstacle centre expressed relative to the transmitter-receiver segment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathGeometry {
    /// Distance from the transmitter to the foot of the perpendicular.
    pub along_m: f64,
    /// Signed perpendicular distance of the obstacle axis from the path.
    pub offset_m: f64,
    /// Transmitter-receiver distance.
    pub path_len_m: f64,
}

/// Projects the obstacle onto the T-R path. `None` when the foot of the
/// perpendicular falls outside the segment or the obstacle is off-axis.
pub fn path_geometry(pos_r: &PolarPosition, pos_a: &PolarPosition) -> Option<PathGeometry> {
    let delta_deg = pos_a.theta_deg() - pos_r.theta_deg();
    if delta_deg.abs() >= OFF_AXIS_LIMIT_DEG {
        return None;
    }
    let (s, c) = delta_deg.to_radians().sin_cos();
    let along = pos_a.rho_m() * c;
    if along <= 0.0 || along >= pos_r.rho_m() {
        return None;
    }
    Some(PathGeometry {
        along_m: along,
        offset_m: pos_a.rho_m() * s,
        path_len_m: pos_r.rho_m(),
    })
}

/// Distance between the cylinder surface and the T-R segment; negative when
/// the line of sight passes through the cylinder. `f64::INFINITY` when the
/// obstacle cannot intercept the path.
pub fn los_clearance(pos_r: &PolarPosition, pos_a: &PolarPosition, obstacle_radius_m: f64) -> f64 {
    path_geometry(pos_r, pos_a).map_or(f64::INFINITY, |g| g.offset_m.abs() - obstacle_radius_m)
}

/// Fresnel-Kirchhoff diffraction parameter `v` for an edge at the given
/// clearance (positive clearance means the edge is below the ray).
pub fn fresnel_parameter(
    clearance_m: f64,
    d1_m: f64,
    d2_m: f64,
    wavelength_m: f64,
) -> Result<f64, ChannelError> {
    for d in [d1_m, d2_m, wavelength_m] {
        if !(d.is_finite() && d > 0.0) {
            return Err(ChannelError::NonPositiveDistance(d));
        }
    }
    Ok(-clearance_m * (2.0 * (d1_m + d2_m) / (wavelength_m * d1_m * d2_m)).sqrt())
}

/// Single knife-edge loss `J(v)` in dB.
pub fn knife_edge_loss_from_fresnel(v: f64) -> f64 {
    if v.is_nan() || v <= FRESNEL_THRESHOLD {
        return 0.0;
    }
    let w = v - 0.1;
    (6.9 + 20.0 * ((w * w + 1.0).sqrt() + w).log10()).max(0.0)
}

/// Single knife-edge obstruction loss in dB for a signed clearance.
pub fn knife_edge_loss_db(
    clearance_m: f64,
    d1_m: f64,
    d2_m: f64,
    wavelength_m: f64,
) -> Result<f64, ChannelError> {
    let v = fresnel_parameter(clearance_m, d1_m, d2_m, wavelength_m)?;
    Ok(knife_edge_loss_from_fresnel(v))
}

/// Blockage loss of a cylinder treated as two lateral knife edges whose
/// diffracted powers add. `offset_m` is the unsigned distance from the path
/// to the cylinder axis.
pub fn double_edge_loss_db(
    offset_m: f64,
    radius_m: f64,
    d1_m: f64,
    d2_m: f64,
    wavelength_m: f64,
) -> Result<f64, ChannelError> {
    let near = knife_edge_loss_db(offset_m - radius_m, d1_m, d2_m, wavelength_m)?;
    let far = knife_edge_loss_db(-(offset_m + radius_m), d1_m, d2_m, wavelength_m)?;
    let power = db_to_linear(-near) + db_to_linear(-far);
    Ok(-10.0 * power.min(1.0).log10())
}

/// Bistatic field scattered by the cylinder towards the receiver (`r2`).
///
/// Radar-equation amplitude with the broadside cylinder cross-section
/// `2 pi a h^2 / lambda`, weighted by a `cos^2` lobe around the forward
/// direction of the incident ray and scaled by the scatter coefficient.
pub fn scattered_component(
    pos_r: &PolarPosition,
    pos_a: &PolarPosition,
    scenario: &Scenario,
) -> Result<Complex64, ChannelError> {
    let (xr, yr) = pos_r.to_cartesian();
    let (xa, ya) = pos_a.to_cartesian();
    let (dx, dy) = (xr - xa, yr - ya);
    let d_ar = dx.hypot(dy);
    if d_ar < 1e-12 {
        return Err(ChannelError::CoincidentPositions);
    }
    let kappa = scenario.resolved_scatter_coefficient()?;
    if kappa == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let d_ta = pos_a.rho_m();
    let lambda = scenario.wavelength_m();

    let cos_beta = (xa * dx + ya * dy) / (d_ta * d_ar);
    let lobe = cos_beta.max(0.0).powi(2);
    let h = scenario.effective_scatter_height_m();
    let sigma = 2.0 * PI * scenario.obstacle_radius_m * h * h / lambda * lobe;

    let gain = db_to_linear(array_gain_dbi(pos_a.theta_deg(), scenario)?);
    let power = gain * lambda * lambda * sigma / ((4.0 * PI).powi(3) * d_ta * d_ta * d_ar * d_ar);
    let amplitude = (power * kappa).sqrt();
    Ok(propagation_phase(d_ta + d_ar, lambda) * amplitude)
}
