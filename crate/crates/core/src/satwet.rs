//! Satellite-to-ground wireless energy transfer.
//!
//! A LEO satellite beams RF power to a ground device, which rectifies it and
//! banks the energy until it can afford to transmit a payload. Harvested
//! power comes either from the zenith Friis budget or from its time average
//! over an overhead pass; the charging time is then `E_b * B / P`.

use serde::{Deserialize, Serialize};

use crate::channel::{dbm_to_watts, friis_gain, from_db};
use crate::error::{Error, Result};

pub const EARTH_RADIUS_M: f64 = 6.371e6;

/// Trapezoid panels over the half pass; the convergence tests double this.
pub const DEFAULT_PASS_STEPS: usize = 2000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SatWetParams {
    pub frequency_hz: f64,
    pub sat_tx_power_w: f64,
    /// Linear.
    pub sat_tx_gain: f64,
    /// Linear.
    pub ground_rx_gain: f64,
    /// RF-to-DC conversion efficiency in (0, 1].
    pub rf_to_dc_efficiency: f64,
    pub altitude_m: f64,
    pub earth_radius_m: f64,
    /// Lowest elevation of the averaged pass, degrees.
    pub min_elevation_deg: f64,
}

impl Default for SatWetParams {
    fn default() -> Self {
        Self {
            frequency_hz: 868e6,
            sat_tx_power_w: dbm_to_watts(50.0),
            sat_tx_gain: from_db(50.0),
            ground_rx_gain: 1.0,
            rf_to_dc_efficiency: 1.0,
            altitude_m: 200e3,
            earth_radius_m: EARTH_RADIUS_M,
            min_elevation_deg: 0.0,
        }
    }
}

impl SatWetParams {
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("satwet.frequency_hz", self.frequency_hz),
            ("satwet.sat_tx_power_w", self.sat_tx_power_w),
            ("satwet.sat_tx_gain", self.sat_tx_gain),
            ("satwet.ground_rx_gain", self.ground_rx_gain),
            ("satwet.altitude_m", self.altitude_m),
            ("satwet.earth_radius_m", self.earth_radius_m),
        ];
        for (field, v) in positive {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::config(field, "must be a finite value > 0"));
            }
        }
        if !(self.rf_to_dc_efficiency > 0.0 && self.rf_to_dc_efficiency <= 1.0) {
            return Err(Error::config("satwet.rf_to_dc_efficiency", "must lie in (0, 1]"));
        }
        if !(0.0..=90.0).contains(&self.min_elevation_deg) {
            return Err(Error::config("satwet.min_elevation_deg", "must lie in [0, 90]"));
        }
        Ok(())
    }

    fn power_scale(&self) -> f64 {
        self.rf_to_dc_efficiency * self.sat_tx_power_w * self.sat_tx_gain * self.ground_rx_gain
    }
}

/// Ground-to-satellite distance at a given elevation angle.
pub fn slant_distance(altitude_m: f64, elevation_deg: f64, earth_radius_m: f64) -> f64 {
    let r = earth_radius_m;
    let s = elevation_deg.to_radians().sin();
    -r * s + (r * r * s * s + altitude_m * altitude_m + 2.0 * r * altitude_m).sqrt()
}

/// Earth-central angle between the ground point and a satellite seen at
/// `elevation_deg`.
pub fn central_angle(altitude_m: f64, elevation_deg: f64, earth_radius_m: f64) -> f64 {
    let e = elevation_deg.to_radians();
    let ratio = earth_radius_m / (earth_radius_m + altitude_m);
    ((ratio * e.cos()).acos() - e).max(0.0)
}

/// Rectified power with the satellite straight overhead.
pub fn zenith_harvested_power(p: &SatWetParams) -> Result<f64> {
    Ok(p.power_scale() * friis_gain(p.altitude_m, p.frequency_hz)?)
}

/// Time-averaged rectified power over an overhead pass from
/// `min_elevation_deg` up to zenith and back down.
///
/// On a circular orbit the central angle advances uniformly in time, so the
/// average is taken over angle with the trapezoid rule.
pub fn pass_average_power(p: &SatWetParams) -> Result<f64> {
    pass_average_power_with_steps(p, DEFAULT_PASS_STEPS)
}

pub fn pass_average_power_with_steps(p: &SatWetParams, steps: usize) -> Result<f64> {
    p.validate()?;
    let steps = steps.max(1);
    let theta_max = central_angle(p.altitude_m, p.min_elevation_deg, p.earth_radius_m);
    if theta_max == 0.0 {
        return zenith_harvested_power(p);
    }
    let r = p.earth_radius_m;
    let orbit = r + p.altitude_m;
    let gain_at = |theta: f64| {
        let d = (r * r + orbit * orbit - 2.0 * r * orbit * theta.cos()).sqrt();
        friis_gain(d, p.frequency_hz)
    };
    // The pass is symmetric about zenith; average the rising half.
    let h = theta_max / steps as f64;
    let mut sum = 0.5 * (gain_at(0.0)? + gain_at(theta_max)?);
    for k in 1..steps {
        sum += gain_at(k as f64 * h)?;
    }
    let mean_gain = sum * h / theta_max;
    Ok(p.power_scale() * mean_gain)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChargingModel {
    /// Energy spent per transmitted bit, J/bit.
    pub energy_per_bit_j: f64,
    pub payload_bits: f64,
}

/// Energy per bit matching 400 bits after 6 s at 3 nW.
pub const DEFAULT_ENERGY_PER_BIT_J: f64 = 3e-9 * 6.0 / 400.0;

impl Default for ChargingModel {
    fn default() -> Self {
        Self {
            energy_per_bit_j: DEFAULT_ENERGY_PER_BIT_J,
            payload_bits: 400.0,
        }
    }
}

/// Seconds of harvesting needed to pay for `model.payload_bits`.
pub fn charging_time(model: &ChargingModel, harvested_power_w: f64) -> Result<f64> {
    if !(harvested_power_w > 0.0) {
        return Err(Error::domain(format!(
            "charging needs positive harvested power, got {harvested_power_w}"
        )));
    }
    if !(model.energy_per_bit_j > 0.0) || !(model.payload_bits >= 0.0) {
        return Err(Error::domain("energy per bit must be > 0 and payload >= 0"));
    }
    Ok(model.energy_per_bit_j * model.payload_bits / harvested_power_w)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PowerMode {
    Zenith,
    PassAverage,
}

impl PowerMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            PowerMode::Zenith => "zenith",
            PowerMode::PassAverage => "pass-average",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChargeRow {
    pub height_m: f64,
    pub payload_bits: f64,
    pub mode: PowerMode,
    pub harvested_w: f64,
    pub charging_s: f64,
}

pub fn harvested_power(p: &SatWetParams, mode: PowerMode) -> Result<f64> {
    match mode {
        PowerMode::Zenith => zenith_harvested_power(p),
        PowerMode::PassAverage => pass_average_power(p),
    }
}

/// Charging time over the cross product of heights and payloads, heights
/// varying slowest.
pub fn charge_curve(
    heights_m: &[f64],
    payloads_bits: &[f64],
    p: &SatWetParams,
    model: &ChargingModel,
    mode: PowerMode,
) -> Result<Vec<ChargeRow>> {
    if heights_m.is_empty() || payloads_bits.is_empty() {
        return Err(Error::domain("charge curve needs at least one height and one payload"));
    }
    let mut rows = Vec::with_capacity(heights_m.len() * payloads_bits.len());
    for &h in heights_m {
        let params = SatWetParams { altitude_m: h, ..*p };
        params.validate()?;
        let power = harvested_power(&params, mode)?;
        for &b in payloads_bits {
            let m = ChargingModel { payload_bits: b, ..*model };
            rows.push(ChargeRow {
                height_m: h,
                payload_bits: b,
                mode,
                harvested_w: power,
                charging_s: charging_time(&m, power)?,
            });
        }
    }
    Ok(rows)
}
