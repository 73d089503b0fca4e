//! Single-realization link evaluation for the uplink from the disaster
//! disk and the downlink inside the silencing annulus.

use rand::RngCore;

use crate::channel::{compute_sinr, sample_fading, LinkSample};
use crate::error::{Error, Result};
use crate::geometry::Point2D;

use super::config::ScenarioConfig;
use super::snapshot::{Band, NetworkSnapshot, Zone};

/// Source of small-scale power fading gains.
pub trait FadingSource {
    fn next_gain(&mut self) -> f64;
}

impl<R: RngCore + ?Sized> FadingSource for R {
    fn next_gain(&mut self) -> f64 {
        sample_fading(self)
    }
}

/// Deterministic fading, used for hand-checked layouts.
#[derive(Debug, Clone, Copy)]
pub struct FixedFading(pub f64);

impl FadingSource for FixedFading {
    fn next_gain(&mut self) -> f64 {
        self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrialOutcome {
    Success,
    Outage,
    /// No station was eligible to serve; counted as a failure.
    CoverageHole,
}

impl TrialOutcome {
    pub fn is_success(self) -> bool {
        self == TrialOutcome::Success
    }
}

/// Uplink SINR of the typical device at its serving station.
///
/// The device associates with the nearest live disaster-band station in the
/// disaster disk or the active ring. Interference is the downlink power of
/// every other station radiating on the disaster band, measured at the
/// serving station.
///
/// Fading is drawn in a fixed order regardless of policy: the device link
/// first, then one gain per station in snapshot order. Comparing policies on
/// the same snapshot and seed therefore reuses every draw.
pub fn uplink_sinr<F: FadingSource + ?Sized>(
    net: &NetworkSnapshot,
    cfg: &ScenarioConfig,
    fading: &mut F,
) -> Result<f64> {
    let device = net.typical_device;
    let serving = net
        .stations
        .iter()
        .enumerate()
        .filter(|(_, b)| b.radiates_on(Band::Disaster) && matches!(b.zone, Zone::Disaster | Zone::ActiveRing))
        .map(|(i, b)| (i, b.distance_to_ground(&device)))
        .fold(None, |best: Option<(usize, f64)>, (i, d)| match best {
            Some((_, bd)) if bd <= d => best,
            _ => Some((i, d)),
        });

    let signal_gain = fading.next_gain();
    let mut interference = 0.0;
    let serving_bs = serving.map(|(i, _)| (i, net.stations[i]));
    for (j, bs) in net.stations.iter().enumerate() {
        let h = fading.next_gain();
        if let Some((s, rx)) = serving_bs {
            if j != s && bs.radiates_on(Band::Disaster) {
                interference += bs.effective_power_w() * h * cfg.channel.clamped_gain(bs.distance_to(&rx));
            }
        }
    }

    let (_, d0) = serving.ok_or(Error::NoServingStation)?;
    compute_sinr(&LinkSample {
        signal_power: cfg.device_tx_power_w * signal_gain * cfg.channel.clamped_gain(d0),
        interference_power: interference,
        noise_power: cfg.channel.noise_power_w,
    })
}

pub fn uplink_trial<F: FadingSource + ?Sized>(
    net: &NetworkSnapshot,
    cfg: &ScenarioConfig,
    fading: &mut F,
) -> TrialOutcome {
    classify(uplink_sinr(net, cfg, fading), cfg)
}

/// Downlink SINR of a user at `user` in the silencing annulus.
///
/// The user is served on `net.silencing_user_band` by the nearest station
/// radiating on that band; co-band stations interfere. One fading gain is
/// drawn per station in snapshot order, the serving link using its own.
pub fn silencing_user_sinr<F: FadingSource + ?Sized>(
    net: &NetworkSnapshot,
    cfg: &ScenarioConfig,
    user: &Point2D,
    fading: &mut F,
) -> Result<f64> {
    let band = net.silencing_user_band;
    let serving = net
        .stations
        .iter()
        .enumerate()
        .filter(|(_, b)| b.radiates_on(band))
        .map(|(i, b)| (i, b.distance_to_ground(user)))
        .fold(None, |best: Option<(usize, f64)>, (i, d)| match best {
            Some((_, bd)) if bd <= d => best,
            _ => Some((i, d)),
        })
        .map(|(i, _)| i);

    let mut signal = 0.0;
    let mut interference = 0.0;
    for (j, bs) in net.stations.iter().enumerate() {
        let h = fading.next_gain();
        if !bs.radiates_on(band) {
            continue;
        }
        let rx = bs.effective_power_w() * h * cfg.channel.clamped_gain(bs.distance_to_ground(user));
        if Some(j) == serving {
            signal = rx;
        } else {
            interference += rx;
        }
    }

    serving.ok_or(Error::NoServingStation)?;
    compute_sinr(&LinkSample {
        signal_power: signal,
        interference_power: interference,
        noise_power: cfg.channel.noise_power_w,
    })
}

pub fn silencing_user_trial<F: FadingSource + ?Sized>(
    net: &NetworkSnapshot,
    cfg: &ScenarioConfig,
    user: &Point2D,
    fading: &mut F,
) -> TrialOutcome {
    classify(silencing_user_sinr(net, cfg, user, fading), cfg)
}

fn classify(sinr: Result<f64>, cfg: &ScenarioConfig) -> TrialOutcome {
    match sinr {
        Ok(v) if v >= cfg.channel.sinr_threshold => TrialOutcome::Success,
        Ok(_) | Err(Error::UndefinedSinr) => TrialOutcome::Outage,
        Err(_) => TrialOutcome::CoverageHole,
    }
}
