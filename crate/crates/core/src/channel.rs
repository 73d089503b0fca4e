//! Radio propagation: dB conversions, power-law and free-space gains,
//! Rayleigh power fading, and SINR.

use std::f64::consts::PI;

use rand::Rng;
use rand_distr::{Distribution, Exp1};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Speed of light used for free-space wavelength, m/s.
pub const SPEED_OF_LIGHT: f64 = 2.998e8;

/// Linear power ratio to dB. Fails on non-positive input.
pub fn to_db(linear: f64) -> Result<f64> {
    if !(linear > 0.0) || !linear.is_finite() {
        return Err(Error::domain(format!("cannot express {linear} in dB")));
    }
    Ok(10.0 * linear.log10())
}

pub fn from_db(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// dBm to watts (0 dBm = 1 mW).
pub fn dbm_to_watts(dbm: f64) -> f64 {
    from_db(dbm) * 1e-3
}

pub fn watts_to_dbm(watts: f64) -> Result<f64> {
    Ok(to_db(watts)? + 30.0)
}

/// Propagation and detection parameters shared by every terrestrial link.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChannelParams {
    pub path_loss_exponent: f64,
    /// Linear gain at the 1 m reference distance.
    pub reference_gain_at_1m: f64,
    pub noise_power_w: f64,
    /// Linear SINR threshold.
    pub sinr_threshold: f64,
    /// Distances below this are clamped before evaluating the power law.
    pub min_distance_m: f64,
}

impl Default for ChannelParams {
    fn default() -> Self {
        Self {
            path_loss_exponent: 4.0,
            reference_gain_at_1m: 1.0,
            noise_power_w: 0.0,
            sinr_threshold: from_db(-10.0),
            min_distance_m: 1.0,
        }
    }
}

impl ChannelParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.path_loss_exponent > 2.0) || !self.path_loss_exponent.is_finite() {
            return Err(Error::config(
                "channel.path_loss_exponent",
                "must be a finite value > 2",
            ));
        }
        if !(self.reference_gain_at_1m > 0.0) || !self.reference_gain_at_1m.is_finite() {
            return Err(Error::config("channel.reference_gain_at_1m", "must be > 0"));
        }
        if !(self.noise_power_w >= 0.0) || !self.noise_power_w.is_finite() {
            return Err(Error::config("channel.noise_power_w", "must be >= 0"));
        }
        if !(self.sinr_threshold > 0.0) || !self.sinr_threshold.is_finite() {
            return Err(Error::config("channel.sinr_threshold", "must be > 0"));
        }
        if !(self.min_distance_m > 0.0) || !self.min_distance_m.is_finite() {
            return Err(Error::config("channel.min_distance_m", "must be > 0"));
        }
        Ok(())
    }

    /// Power-law gain with the minimum-distance clamp applied.
    ///
    /// Link budgets in the simulator go through this; `path_gain` is the
    /// strict form that rejects non-positive distances.
    pub fn clamped_gain(&self, distance: f64) -> f64 {
        let d = distance.max(self.min_distance_m);
        let alpha = self.path_loss_exponent;
        let attenuation = if alpha == 4.0 {
            let d2 = d * d;
            d2 * d2
        } else {
            d.powf(alpha)
        };
        self.reference_gain_at_1m / attenuation
    }
}

/// `reference_gain_at_1m * d^-alpha`.
pub fn path_gain(distance: f64, params: &ChannelParams) -> Result<f64> {
    if !(distance > 0.0) {
        return Err(Error::domain(format!("path gain at distance {distance}")));
    }
    Ok(params.reference_gain_at_1m * distance.powf(-params.path_loss_exponent))
}

pub fn wavelength(frequency_hz: f64) -> f64 {
    SPEED_OF_LIGHT / frequency_hz
}

/// Free-space gain `(lambda / (4 pi d))^2`.
pub fn friis_gain(distance: f64, frequency_hz: f64) -> Result<f64> {
    if !(distance > 0.0) || !(frequency_hz > 0.0) {
        return Err(Error::domain(format!(
            "Friis gain needs positive distance and frequency, got d={distance}, f={frequency_hz}"
        )));
    }
    let ratio = wavelength(frequency_hz) / (4.0 * PI * distance);
    Ok(ratio * ratio)
}

/// Rayleigh power fading: one Exp(1) draw.
pub fn sample_fading<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    Exp1.sample(rng)
}

/// Received powers at one receiver, in watts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkSample {
    pub signal_power: f64,
    pub interference_power: f64,
    pub noise_power: f64,
}

/// `S / (I + N)`. Returns `+inf` when `I = N = 0 < S`.
pub fn compute_sinr(link: &LinkSample) -> Result<f64> {
    let LinkSample {
        signal_power: s,
        interference_power: i,
        noise_power: n,
    } = *link;
    if s < 0.0 || i < 0.0 || n < 0.0 || s.is_nan() || i.is_nan() || n.is_nan() {
        return Err(Error::domain(format!("negative or NaN power in {link:?}")));
    }
    let denom = i + n;
    if denom == 0.0 {
        if s == 0.0 {
            return Err(Error::UndefinedSinr);
        }
        return Ok(f64::INFINITY);
    }
    Ok(s / denom)
}
