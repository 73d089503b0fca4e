//! Application-category access barring in a congested cell.
//!
//! Each application class carries a category (1 is the highest priority)
//! and an admission probability. Requests that pass barring compete for the
//! cell's capacity, and the lowest-priority categories are dropped first.

use rand::Rng;
use rand_distr::{Distribution, Poisson};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AppClass {
    pub name: String,
    /// 1 is the highest priority.
    pub acdc_category: u32,
    /// Requests per second.
    pub arrival_rate: f64,
    /// Probability a request passes barring.
    pub barring_prob: f64,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AcdcProfile {
    pub classes: Vec<AppClass>,
    /// Require admission probability to be non-increasing in category.
    #[serde(default)]
    pub enforce_monotone: bool,
}

impl AcdcProfile {
    pub fn validate(&self) -> Result<()> {
        for (i, c) in self.classes.iter().enumerate() {
            if c.acdc_category < 1 {
                return Err(Error::config(format!("acb.classes[{i}].acdc_category"), "must be >= 1"));
            }
            if !(c.arrival_rate >= 0.0) || !c.arrival_rate.is_finite() {
                return Err(Error::config(format!("acb.classes[{i}].arrival_rate"), "must be >= 0"));
            }
            if !(0.0..=1.0).contains(&c.barring_prob) {
                return Err(Error::config(format!("acb.classes[{i}].barring_prob"), "must lie in [0, 1]"));
            }
        }
        if self.enforce_monotone {
            for (i, a) in self.classes.iter().enumerate() {
                for b in &self.classes {
                    if a.acdc_category < b.acdc_category && a.barring_prob < b.barring_prob {
                        return Err(Error::config(
                            format!("acb.classes[{i}].barring_prob"),
                            format!(
                                "category {} admits less than lower-priority category {}",
                                a.acdc_category, b.acdc_category
                            ),
                        ));
                    }
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ClassMetrics {
    pub name: String,
    pub acdc_category: u32,
    pub arrival_rate: f64,
    /// Requests per second that pass barring (and, when simulated, capacity).
    pub admitted_rate: f64,
    /// Fraction of arrivals not served. Zero when nothing arrived.
    pub blocking_prob: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct AccessMetrics {
    pub classes: Vec<ClassMetrics>,
    pub total_admitted: f64,
    /// Load offered after barring over capacity; `None` when no capacity
    /// applies.
    pub overload_ratio: Option<f64>,
}

/// Mean admitted rate per class: `barring_prob * arrival_rate`.
pub fn admitted_load(profile: &AcdcProfile) -> AccessMetrics {
    let classes: Vec<ClassMetrics> = profile
        .classes
        .iter()
        .map(|c| ClassMetrics {
            name: c.name.clone(),
            acdc_category: c.acdc_category,
            arrival_rate: c.arrival_rate,
            admitted_rate: c.barring_prob * c.arrival_rate,
            blocking_prob: if c.arrival_rate > 0.0 { 1.0 - c.barring_prob } else { 0.0 },
        })
        .collect();
    let total_admitted = classes.iter().map(|c| c.admitted_rate).sum();
    AccessMetrics {
        classes,
        total_admitted,
        overload_ratio: None,
    }
}

/// One stochastic realization over `horizon_s`.
///
/// Arrivals are Poisson per class and pass barring independently. The
/// cell then serves at most `floor(capacity * horizon)` requests, filling
/// categories in ascending order (ties by class order); the rest are
/// dropped.
pub fn simulate_access<R: Rng + ?Sized>(
    profile: &AcdcProfile,
    capacity_per_s: f64,
    horizon_s: f64,
    rng: &mut R,
) -> Result<AccessMetrics> {
    if !(capacity_per_s > 0.0) || !(horizon_s > 0.0) {
        return Err(Error::domain("capacity and horizon must be > 0"));
    }
    let mut arrivals = Vec::with_capacity(profile.classes.len());
    let mut passed = Vec::with_capacity(profile.classes.len());
    for c in &profile.classes {
        let mean = c.arrival_rate * horizon_s;
        let n = if mean > 0.0 {
            Poisson::new(mean).expect("finite positive mean").sample(rng) as u64
        } else {
            0
        };
        let admitted = (0..n).filter(|_| rng.random::<f64>() < c.barring_prob).count() as u64;
        arrivals.push(n);
        passed.push(admitted);
    }

    let mut order: Vec<usize> = (0..profile.classes.len()).collect();
    order.sort_by_key(|&i| profile.classes[i].acdc_category);
    let slots = (capacity_per_s * horizon_s).floor() as u64;
    let mut remaining = slots;
    let mut served = vec![0u64; profile.classes.len()];
    for i in order {
        let take = passed[i].min(remaining);
        served[i] = take;
        remaining -= take;
    }

    let classes: Vec<ClassMetrics> = profile
        .classes
        .iter()
        .enumerate()
        .map(|(i, c)| ClassMetrics {
            name: c.name.clone(),
            acdc_category: c.acdc_category,
            arrival_rate: c.arrival_rate,
            admitted_rate: served[i] as f64 / horizon_s,
            blocking_prob: if arrivals[i] > 0 {
                1.0 - served[i] as f64 / arrivals[i] as f64
            } else {
                0.0
            },
        })
        .collect();
    let total_admitted = classes.iter().map(|c| c.admitted_rate).sum();
    let offered: u64 = passed.iter().sum();
    Ok(AccessMetrics {
        classes,
        total_admitted,
        overload_ratio: Some(offered as f64 / (capacity_per_s * horizon_s)),
    })
}
