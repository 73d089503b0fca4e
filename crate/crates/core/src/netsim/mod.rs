//! Base-station silencing around a disaster zone.
//!
//! A realization places base stations as a Poisson process over a disk of
//! radius `sim_radius_m`. Stations inside the disaster disk survive
//! independently; stations in the silencing annulus are muted, attenuated,
//! or moved to another band according to a [`SilencingPolicy`]. A typical
//! device in the disaster disk transmits uplink to the nearest live station
//! in the disaster disk or active ring, while every co-band station's
//! downlink interferes at that receiver.
//!
//! Monte Carlo estimates use common random numbers: geometry and fading
//! depend only on `(master_seed, trial_index)`, never on the policy or on
//! the silencing radius, so policy comparisons are exact per trial.

mod config;
mod estimate;
mod policy;
mod snapshot;
mod trial;

pub use config::{AerialTier, ScenarioConfig};
pub use estimate::{
    estimate_silencing_area_coverage, estimate_silencing_area_coverage_with, estimate_success,
    estimate_success_with, Estimate, Workers, Z_95,
};
pub use policy::SilencingPolicy;
pub use snapshot::{apply_policy, build_network, Band, BaseStation, NetworkSnapshot, Tier, Zone, SHELL_WIDTH_M};
pub use trial::{
    silencing_user_sinr, silencing_user_trial, uplink_sinr, uplink_trial, FadingSource, FixedFading,
    TrialOutcome,
};
