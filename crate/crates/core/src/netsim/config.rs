use serde::{Deserialize, Serialize};

use crate::channel::{dbm_to_watts, ChannelParams};
use crate::error::{Error, Result};

/// Optional tier of aerial base stations hovering over the disaster disk.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AerialTier {
    pub density_per_m2: f64,
    pub altitude_m: f64,
    pub tx_power_w: f64,
}

/// Full description of a silencing experiment.
///
/// Zones, by distance `r` from the disaster centre:
///
/// ```text
/// disaster    r <  disaster_radius
/// active ring r <  disaster_radius + active_ring_width
/// silencing   r <  silencing_radius
/// outer       r <= sim_radius
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub disaster_radius_m: f64,
    pub active_ring_width_m: f64,
    pub silencing_radius_m: f64,
    pub sim_radius_m: f64,
    pub bs_density_per_m2: f64,
    pub bs_survival_prob: f64,
    pub device_tx_power_w: f64,
    pub bs_tx_power_w: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub aerial_tier: Option<AerialTier>,
    pub channel: ChannelParams,
    pub n_trials: u64,
    pub master_seed: u64,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            disaster_radius_m: 2000.0,
            active_ring_width_m: 600.0,
            silencing_radius_m: 5000.0,
            sim_radius_m: 20_000.0,
            bs_density_per_m2: 1e-6,
            bs_survival_prob: 0.3,
            device_tx_power_w: dbm_to_watts(23.0),
            bs_tx_power_w: dbm_to_watts(46.0),
            aerial_tier: None,
            channel: ChannelParams::default(),
            n_trials: 10_000,
            master_seed: 1,
        }
    }
}

fn check(ok: bool, field: &str, reason: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::config(field, reason))
    }
}

fn non_negative(x: f64) -> bool {
    x.is_finite() && x >= 0.0
}

impl ScenarioConfig {
    pub fn active_ring_outer_m(&self) -> f64 {
        self.disaster_radius_m + self.active_ring_width_m
    }

    pub fn validate(&self) -> Result<()> {
        check(
            self.disaster_radius_m.is_finite() && self.disaster_radius_m > 0.0,
            "disaster_radius_m",
            "must be > 0",
        )?;
        check(
            self.active_ring_width_m.is_finite() && self.active_ring_width_m > 0.0,
            "active_ring_width_m",
            "must be > 0",
        )?;
        check(
            self.silencing_radius_m.is_finite() && self.silencing_radius_m >= self.active_ring_outer_m(),
            "silencing_radius_m",
            "must be >= disaster_radius_m + active_ring_width_m",
        )?;
        check(
            self.sim_radius_m.is_finite() && self.sim_radius_m >= self.silencing_radius_m,
            "sim_radius_m",
            "must be >= silencing_radius_m",
        )?;
        check(non_negative(self.bs_density_per_m2), "bs_density_per_m2", "must be >= 0")?;
        check(
            (0.0..=1.0).contains(&self.bs_survival_prob),
            "bs_survival_prob",
            "must lie in [0, 1]",
        )?;
        check(non_negative(self.device_tx_power_w), "device_tx_power_w", "must be >= 0")?;
        check(non_negative(self.bs_tx_power_w), "bs_tx_power_w", "must be >= 0")?;
        if let Some(a) = &self.aerial_tier {
            check(non_negative(a.density_per_m2), "aerial_tier.density_per_m2", "must be >= 0")?;
            check(non_negative(a.altitude_m), "aerial_tier.altitude_m", "must be >= 0")?;
            check(non_negative(a.tx_power_w), "aerial_tier.tx_power_w", "must be >= 0")?;
        }
        self.channel.validate()?;
        check(self.n_trials >= 1, "n_trials", "must be >= 1")?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field_of(cfg: &ScenarioConfig) -> String {
        match cfg.validate() {
            Err(Error::InvalidConfig { field, .. }) => field,
            other => panic!("expected invalid config, got {other:?}"),
        }
    }

    #[test]
    fn default_is_valid() {
        ScenarioConfig::default().validate().unwrap();
    }

    #[test]
    fn each_violation_names_its_field() {
        let base = ScenarioConfig::default();

        let mut c = base.clone();
        c.silencing_radius_m = 1500.0;
        assert_eq!(field_of(&c), "silencing_radius_m");

        let mut c = base.clone();
        c.sim_radius_m = 4000.0;
        assert_eq!(field_of(&c), "sim_radius_m");

        let mut c = base.clone();
        c.bs_survival_prob = 1.5;
        assert_eq!(field_of(&c), "bs_survival_prob");

        let mut c = base.clone();
        c.bs_density_per_m2 = -1.0;
        assert_eq!(field_of(&c), "bs_density_per_m2");

        let mut c = base.clone();
        c.n_trials = 0;
        assert_eq!(field_of(&c), "n_trials");

        let mut c = base.clone();
        c.channel.path_loss_exponent = 2.0;
        assert_eq!(field_of(&c), "channel.path_loss_exponent");

        let mut c = base.clone();
        c.active_ring_width_m = 0.0;
        assert_eq!(field_of(&c), "active_ring_width_m");

        let mut c = base;
        c.aerial_tier = Some(AerialTier {
            density_per_m2: 1e-6,
            altitude_m: -5.0,
            tx_power_w: 1.0,
        });
        assert_eq!(field_of(&c), "aerial_tier.altitude_m");
    }
}
