//! Post-disaster cellular resilience simulator.
//!
//! * [`netsim`] samples networks around a disaster zone and estimates how
//!   base-station silencing policies change uplink success from inside it.
//! * [`planner`] sweeps silencing radius and factor and picks the best
//!   trade-off against coverage in the silenced annulus.
//! * [`satwet`] sizes satellite-to-ground wireless charging: harvested
//!   power and the time needed to afford a payload.
//! * [`acb`] models application-category access barring in a congested cell.

pub mod acb;
pub mod channel;
pub mod cli;
pub mod error;
pub mod geometry;
pub mod netsim;
pub mod planner;
pub mod rng;
pub mod satwet;

pub use error::{Error, Result};
