//! Network realizations and policy application.

use crate::geometry::{sample_ppp, Annulus, Point2D};
use crate::rng::{trial_rng, Purpose};

use super::config::ScenarioConfig;
use super::policy::SilencingPolicy;

use rand::Rng;

/// Width of the concentric shells the outer PPP is sampled in.
///
/// Each shell draws from its own stream and points beyond `sim_radius_m` are
/// discarded, so growing the simulation radius only appends stations.
pub const SHELL_WIDTH_M: f64 = 1000.0;

const DISASTER_SUBSTREAM: u32 = 0;
const AERIAL_SUBSTREAM: u32 = 1;
const FIRST_SHELL_SUBSTREAM: u32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Zone {
    Disaster,
    ActiveRing,
    Silencing,
    Outer,
}

impl Zone {
    /// Zone of a point at planar distance `r` from the disaster centre.
    pub fn classify(r: f64, cfg: &ScenarioConfig) -> Zone {
        if r < cfg.disaster_radius_m {
            Zone::Disaster
        } else if r < cfg.active_ring_outer_m() {
            Zone::ActiveRing
        } else if r < cfg.silencing_radius_m {
            Zone::Silencing
        } else {
            Zone::Outer
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Band {
    Disaster,
    Alternate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Tier {
    Terrestrial,
    Aerial,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BaseStation {
    pub position: Point2D,
    pub altitude_m: f64,
    pub tier: Tier,
    pub zone: Zone,
    pub tx_power_w: f64,
    pub power_factor: f64,
    pub band: Band,
    pub alive: bool,
}

impl BaseStation {
    pub fn terrestrial(position: Point2D, zone: Zone, tx_power_w: f64) -> Self {
        Self {
            position,
            altitude_m: 0.0,
            tier: Tier::Terrestrial,
            zone,
            tx_power_w,
            power_factor: 1.0,
            band: Band::Disaster,
            alive: true,
        }
    }

    /// Transmitting at all on `band`.
    pub fn radiates_on(&self, band: Band) -> bool {
        self.alive && self.power_factor > 0.0 && self.band == band
    }

    pub fn effective_power_w(&self) -> f64 {
        self.power_factor * self.tx_power_w
    }

    /// 3D distance to a ground point.
    pub fn distance_to_ground(&self, p: &Point2D) -> f64 {
        self.position.distance(p).hypot(self.altitude_m)
    }

    pub fn distance_to(&self, other: &BaseStation) -> f64 {
        self.position
            .distance(&other.position)
            .hypot(self.altitude_m - other.altitude_m)
    }
}

/// One sampled realization of the network around a disaster.
#[derive(Debug, Clone, PartialEq)]
pub struct NetworkSnapshot {
    /// Ordered: disaster-disk stations, aerial stations, then outward shells.
    pub stations: Vec<BaseStation>,
    /// Typical transmitting device, uniform in the disaster disk.
    pub typical_device: Point2D,
    /// Band silencing-area users are served on.
    pub silencing_user_band: Band,
}

impl NetworkSnapshot {
    pub fn count_in(&self, zone: Zone) -> usize {
        self.stations.iter().filter(|b| b.zone == zone).count()
    }
}

/// Samples the realization for `trial_index`; a pure function of
/// `(cfg, trial_index)`.
pub fn build_network(cfg: &ScenarioConfig, trial_index: u64) -> NetworkSnapshot {
    let seed = cfg.master_seed;
    let mut stations = Vec::new();

    let disaster = Annulus::disk(Point2D::ORIGIN, cfg.disaster_radius_m).expect("validated radius");
    let mut rng = trial_rng(seed, Purpose::Geometry, DISASTER_SUBSTREAM, trial_index);
    for p in &sample_ppp(&disaster, cfg.bs_density_per_m2, &mut rng) {
        let mut bs = BaseStation::terrestrial(*p, Zone::Disaster, cfg.bs_tx_power_w);
        bs.alive = rng.random::<f64>() < cfg.bs_survival_prob;
        stations.push(bs);
    }
    let typical_device = disaster.sample_uniform(&mut rng);

    if let Some(tier) = &cfg.aerial_tier {
        let mut rng = trial_rng(seed, Purpose::Geometry, AERIAL_SUBSTREAM, trial_index);
        for p in &sample_ppp(&disaster, tier.density_per_m2, &mut rng) {
            stations.push(BaseStation {
                altitude_m: tier.altitude_m,
                tier: Tier::Aerial,
                ..BaseStation::terrestrial(*p, Zone::Disaster, tier.tx_power_w)
            });
        }
    }

    let mut inner = cfg.disaster_radius_m;
    let mut shell = 0u32;
    while inner < cfg.sim_radius_m {
        let outer = inner + SHELL_WIDTH_M;
        let region = Annulus::new(Point2D::ORIGIN, inner, outer).expect("positive shell width");
        let mut rng = trial_rng(seed, Purpose::Geometry, FIRST_SHELL_SUBSTREAM + shell, trial_index);
        for p in &sample_ppp(&region, cfg.bs_density_per_m2, &mut rng) {
            let r = p.norm();
            if r <= cfg.sim_radius_m {
                stations.push(BaseStation::terrestrial(*p, Zone::classify(r, cfg), cfg.bs_tx_power_w));
            }
        }
        inner = outer;
        shell += 1;
    }

    NetworkSnapshot {
        stations,
        typical_device,
        silencing_user_band: Band::Disaster,
    }
}

/// Applies `policy` to the silencing-zone stations; other zones are untouched.
pub fn apply_policy(net: &NetworkSnapshot, policy: SilencingPolicy) -> NetworkSnapshot {
    let mut out = net.clone();
    for bs in out.stations.iter_mut().filter(|b| b.zone == Zone::Silencing) {
        match policy {
            SilencingPolicy::SpectrumSplit => {
                bs.band = Band::Alternate;
                bs.power_factor = 1.0;
            }
            other => {
                bs.band = Band::Disaster;
                bs.power_factor = other.disaster_band_factor();
            }
        }
    }
    out.silencing_user_band = match policy {
        SilencingPolicy::SpectrumSplit => Band::Alternate,
        _ => Band::Disaster,
    };
    out
}
