//! Scenario file schema.
//!
//! Scenario files are TOML. Every section is optional and every key has a
//! default; a subcommand only reads the sections it needs. Powers and gains
//! are written in dBm / dB and densities per km², then converted to the SI
//! values the library works in. See `docs/scenario_schema.md`.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::acb::{AcdcProfile, AppClass};
use crate::channel::{dbm_to_watts, from_db, ChannelParams};
use crate::error::Error;
use crate::netsim::{AerialTier, ScenarioConfig, SilencingPolicy};
use crate::planner::{SweepGrid, TradeoffWeights};
use crate::satwet::{ChargingModel, PowerMode, SatWetParams, DEFAULT_ENERGY_PER_BIT_J, EARTH_RADIUS_M};

use super::CliError;

const PER_KM2: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ScenarioFile {
    pub network: NetworkSection,
    pub silencing: SilencingSection,
    pub sweep: SweepSection,
    pub satwet: SatWetSection,
    pub acb: AcbSection,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct NetworkSection {
    pub disaster_radius_m: f64,
    pub active_ring_width_m: f64,
    pub silencing_radius_m: f64,
    pub sim_radius_m: f64,
    pub bs_density_per_km2: f64,
    pub bs_survival_prob: f64,
    pub device_tx_power_dbm: f64,
    pub bs_tx_power_dbm: f64,
    pub n_trials: u64,
    pub seed: u64,
    pub channel: ChannelSection,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub aerial_tier: Option<AerialSection>,
}

impl Default for NetworkSection {
    fn default() -> Self {
        let d = ScenarioConfig::default();
        Self {
            disaster_radius_m: d.disaster_radius_m,
            active_ring_width_m: d.active_ring_width_m,
            silencing_radius_m: d.silencing_radius_m,
            sim_radius_m: d.sim_radius_m,
            bs_density_per_km2: d.bs_density_per_m2 / PER_KM2,
            bs_survival_prob: d.bs_survival_prob,
            device_tx_power_dbm: 23.0,
            bs_tx_power_dbm: 46.0,
            n_trials: d.n_trials,
            seed: d.master_seed,
            channel: ChannelSection::default(),
            aerial_tier: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ChannelSection {
    pub path_loss_exponent: f64,
    pub reference_gain_db: f64,
    pub sinr_threshold_db: f64,
    /// Thermal noise; absent means interference-limited (zero noise).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub noise_dbm: Option<f64>,
    pub min_distance_m: f64,
}

impl Default for ChannelSection {
    fn default() -> Self {
        Self {
            path_loss_exponent: 4.0,
            reference_gain_db: 0.0,
            sinr_threshold_db: -10.0,
            noise_dbm: None,
            min_distance_m: 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AerialSection {
    pub density_per_km2: f64,
    pub altitude_m: f64,
    pub tx_power_dbm: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SilencingSection {
    pub policies: Vec<SilencingPolicy>,
}

impl Default for SilencingSection {
    fn default() -> Self {
        Self {
            policies: vec![
                SilencingPolicy::None,
                SilencingPolicy::Complete,
                SilencingPolicy::SpectrumSplit,
            ],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SweepSection {
    pub rho_values: Vec<f64>,
    pub silencing_radii_m: Vec<f64>,
    pub weights: TradeoffWeights,
}

impl Default for SweepSection {
    fn default() -> Self {
        Self {
            rho_values: vec![0.0, 0.25, 0.5, 0.75, 1.0],
            silencing_radii_m: vec![3000.0, 4000.0, 5000.0, 6000.0],
            weights: TradeoffWeights::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SatWetSection {
    pub frequency_hz: f64,
    pub sat_tx_power_dbm: f64,
    pub sat_tx_gain_db: f64,
    pub ground_rx_gain_db: f64,
    pub rf_to_dc_efficiency: f64,
    pub earth_radius_m: f64,
    pub min_elevation_deg: f64,
    pub mode: PowerMode,
    pub heights_m: Vec<f64>,
    pub payloads_bits: Vec<f64>,
    pub energy_per_bit_j: f64,
}

impl Default for SatWetSection {
    fn default() -> Self {
        Self {
            frequency_hz: 868e6,
            sat_tx_power_dbm: 50.0,
            sat_tx_gain_db: 50.0,
            ground_rx_gain_db: 0.0,
            rf_to_dc_efficiency: 1.0,
            earth_radius_m: EARTH_RADIUS_M,
            min_elevation_deg: 0.0,
            mode: PowerMode::Zenith,
            heights_m: vec![200e3, 400e3],
            payloads_bits: vec![400.0, 1000.0, 1e4, 1e5, 1e6],
            energy_per_bit_j: DEFAULT_ENERGY_PER_BIT_J,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct AcbSection {
    pub capacity_per_s: f64,
    pub horizon_s: f64,
    pub seed: u64,
    pub enforce_monotone: bool,
    pub classes: Vec<AppClass>,
}

impl Default for AcbSection {
    fn default() -> Self {
        Self {
            capacity_per_s: 10.0,
            horizon_s: 3600.0,
            seed: 1,
            enforce_monotone: true,
            classes: Vec::new(),
        }
    }
}

/// Scenario-file key for a validated library field.
fn file_key(field: &str) -> &str {
    match field {
        "bs_density_per_m2" => "bs_density_per_km2",
        "device_tx_power_w" => "device_tx_power_dbm",
        "bs_tx_power_w" => "bs_tx_power_dbm",
        "master_seed" => "seed",
        "aerial_tier.density_per_m2" => "aerial_tier.density_per_km2",
        "aerial_tier.tx_power_w" => "aerial_tier.tx_power_dbm",
        "channel.reference_gain_at_1m" => "channel.reference_gain_db",
        "channel.noise_power_w" => "channel.noise_dbm",
        "channel.sinr_threshold" => "channel.sinr_threshold_db",
        other => other,
    }
}

fn input_err(e: Error) -> CliError {
    CliError::Input(e.to_string())
}

impl ScenarioFile {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read scenario {}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| match e {
            CliError::Input(msg) => CliError::Input(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    /// Parses scenario text; syntax and schema errors carry line numbers.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Input(e.to_string().trim_end().to_string()))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("scenario serializes")
    }

    pub fn network_config(&self) -> Result<ScenarioConfig, CliError> {
        let n = &self.network;
        let c = &n.channel;
        let cfg = ScenarioConfig {
            disaster_radius_m: n.disaster_radius_m,
            active_ring_width_m: n.active_ring_width_m,
            silencing_radius_m: n.silencing_radius_m,
            sim_radius_m: n.sim_radius_m,
            bs_density_per_m2: n.bs_density_per_km2 * PER_KM2,
            bs_survival_prob: n.bs_survival_prob,
            device_tx_power_w: dbm_to_watts(n.device_tx_power_dbm),
            bs_tx_power_w: dbm_to_watts(n.bs_tx_power_dbm),
            aerial_tier: n.aerial_tier.as_ref().map(|a| AerialTier {
                density_per_m2: a.density_per_km2 * PER_KM2,
                altitude_m: a.altitude_m,
                tx_power_w: dbm_to_watts(a.tx_power_dbm),
            }),
            channel: ChannelParams {
                path_loss_exponent: c.path_loss_exponent,
                reference_gain_at_1m: from_db(c.reference_gain_db),
                noise_power_w: c.noise_dbm.map_or(0.0, dbm_to_watts),
                sinr_threshold: from_db(c.sinr_threshold_db),
                min_distance_m: c.min_distance_m,
            },
            n_trials: n.n_trials,
            master_seed: n.seed,
        };
        cfg.validate().map_err(|e| match e {
            Error::InvalidConfig { field, reason } => CliError::Input(format!(
                "invalid value for `network.{}`: {reason}",
                file_key(&field)
            )),
            other => input_err(other),
        })?;
        Ok(cfg)
    }

    pub fn sweep_grid(&self, cfg: &ScenarioConfig) -> Result<(SweepGrid, TradeoffWeights), CliError> {
        let grid = SweepGrid {
            rho_values: self.sweep.rho_values.clone(),
            silencing_radii_m: self.sweep.silencing_radii_m.clone(),
        };
        grid.validate(cfg).map_err(input_err)?;
        self.sweep.weights.validate().map_err(input_err)?;
        Ok((grid, self.sweep.weights))
    }

    pub fn satwet(&self) -> Result<(SatWetParams, ChargingModel), CliError> {
        let s = &self.satwet;
        let p = SatWetParams {
            frequency_hz: s.frequency_hz,
            sat_tx_power_w: dbm_to_watts(s.sat_tx_power_dbm),
            sat_tx_gain: from_db(s.sat_tx_gain_db),
            ground_rx_gain: from_db(s.ground_rx_gain_db),
            rf_to_dc_efficiency: s.rf_to_dc_efficiency,
            altitude_m: s.heights_m.first().copied().unwrap_or(200e3),
            earth_radius_m: s.earth_radius_m,
            min_elevation_deg: s.min_elevation_deg,
        };
        p.validate().map_err(input_err)?;
        if s.heights_m.is_empty() || s.heights_m.iter().any(|h| !(*h > 0.0)) {
            return Err(CliError::Input(
                "invalid value for `satwet.heights_m`: needs at least one height > 0".into(),
            ));
        }
        if s.payloads_bits.is_empty() || s.payloads_bits.iter().any(|b| !(*b >= 0.0)) {
            return Err(CliError::Input(
                "invalid value for `satwet.payloads_bits`: needs at least one payload >= 0".into(),
            ));
        }
        if !(s.energy_per_bit_j > 0.0) {
            return Err(CliError::Input("invalid value for `satwet.energy_per_bit_j`: must be > 0".into()));
        }
        Ok((
            p,
            ChargingModel {
                energy_per_bit_j: s.energy_per_bit_j,
                payload_bits: s.payloads_bits[0],
            },
        ))
    }

    pub fn acb_profile(&self) -> Result<AcdcProfile, CliError> {
        let a = &self.acb;
        if a.classes.is_empty() {
            return Err(CliError::Input("invalid value for `acb.classes`: at least one class required".into()));
        }
        if !(a.capacity_per_s > 0.0) {
            return Err(CliError::Input("invalid value for `acb.capacity_per_s`: must be > 0".into()));
        }
        if !(a.horizon_s > 0.0) {
            return Err(CliError::Input("invalid value for `acb.horizon_s`: must be > 0".into()));
        }
        let profile = AcdcProfile {
            classes: a.classes.clone(),
            enforce_monotone: a.enforce_monotone,
        };
        profile.validate().map_err(input_err)?;
        Ok(profile)
    }
}
