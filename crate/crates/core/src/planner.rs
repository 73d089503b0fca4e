//! Grid search over silencing radius and factor.
//!
//! Every grid point reuses the same master seed, so under common random
//! numbers the disaster-zone success probability is exactly non-increasing
//! in the factor and non-decreasing in the radius across the table.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::netsim::{
    estimate_silencing_area_coverage_with, estimate_success_with, Estimate, ScenarioConfig, SilencingPolicy,
    Workers,
};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepGrid {
    pub rho_values: Vec<f64>,
    pub silencing_radii_m: Vec<f64>,
}

fn strictly_ascending(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[0] < w[1])
}

impl SweepGrid {
    pub fn validate(&self, cfg: &ScenarioConfig) -> Result<()> {
        if self.rho_values.is_empty() {
            return Err(Error::config("sweep.rho_values", "must not be empty"));
        }
        if self.silencing_radii_m.is_empty() {
            return Err(Error::config("sweep.silencing_radii_m", "must not be empty"));
        }
        if !strictly_ascending(&self.rho_values) {
            return Err(Error::config("sweep.rho_values", "must be sorted ascending without duplicates"));
        }
        if !strictly_ascending(&self.silencing_radii_m) {
            return Err(Error::config(
                "sweep.silencing_radii_m",
                "must be sorted ascending without duplicates",
            ));
        }
        if self.rho_values.iter().any(|r| !(0.0..=1.0).contains(r)) {
            return Err(Error::config("sweep.rho_values", "factors must lie in [0, 1]"));
        }
        if self.silencing_radii_m[0] < cfg.active_ring_outer_m() {
            return Err(Error::config(
                "sweep.silencing_radii_m",
                "radii must be >= disaster_radius_m + active_ring_width_m",
            ));
        }
        if self.silencing_radii_m.iter().any(|r| !r.is_finite()) {
            return Err(Error::config("sweep.silencing_radii_m", "must be finite"));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.rho_values.len() * self.silencing_radii_m.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TradeoffWeights {
    pub w_disaster: f64,
    pub w_silencing_area: f64,
}

impl Default for TradeoffWeights {
    fn default() -> Self {
        Self {
            w_disaster: 1.0,
            w_silencing_area: 1.0,
        }
    }
}

impl TradeoffWeights {
    pub fn validate(&self) -> Result<()> {
        if !(self.w_disaster >= 0.0) || !(self.w_silencing_area >= 0.0) {
            return Err(Error::config("sweep.weights", "weights must be >= 0"));
        }
        if !(self.w_disaster + self.w_silencing_area > 0.0) {
            return Err(Error::config("sweep.weights", "weights must not both be zero"));
        }
        Ok(())
    }
}

/// Linear scalarization of the two success probabilities.
pub fn utility(p_disaster: f64, p_silencing_area: f64, w: &TradeoffWeights) -> f64 {
    w.w_disaster * p_disaster + w.w_silencing_area * p_silencing_area
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub rho: f64,
    pub silencing_radius_m: f64,
    pub p_disaster: Estimate,
    pub p_silencing: Estimate,
    pub utility: f64,
}

/// Produces the two probabilities for one grid point.
pub trait GridEvaluator: Sync {
    fn evaluate(&self, rho: f64, silencing_radius_m: f64) -> Result<(Estimate, Estimate)>;
}

/// Monte Carlo evaluation of a scenario.
///
/// The simulation radius is raised to the largest swept silencing radius
/// once, for the whole table, so every grid point sees the same stations.
pub struct MonteCarloEvaluator {
    cfg: ScenarioConfig,
    workers: Workers,
}

impl MonteCarloEvaluator {
    pub fn new(cfg: &ScenarioConfig, grid: &SweepGrid, workers: Workers) -> Result<Self> {
        grid.validate(cfg)?;
        let max_radius = grid.silencing_radii_m.iter().copied().fold(f64::MIN, f64::max);
        let mut cfg = cfg.clone();
        cfg.sim_radius_m = cfg.sim_radius_m.max(max_radius);
        cfg.validate()?;
        Ok(Self { cfg, workers })
    }
}

impl GridEvaluator for MonteCarloEvaluator {
    fn evaluate(&self, rho: f64, silencing_radius_m: f64) -> Result<(Estimate, Estimate)> {
        let cfg = ScenarioConfig {
            silencing_radius_m,
            ..self.cfg.clone()
        };
        cfg.validate()?;
        let policy = SilencingPolicy::partial(rho)?;
        Ok((
            estimate_success_with(&cfg, policy, self.workers),
            estimate_silencing_area_coverage_with(&cfg, policy, self.workers),
        ))
    }
}

/// One row per grid point: radii outermost, factors innermost.
pub fn sweep_with<E: GridEvaluator>(eval: &E, grid: &SweepGrid, w: &TradeoffWeights) -> Result<Vec<SweepRow>> {
    w.validate()?;
    let mut rows = Vec::with_capacity(grid.len());
    for &radius in &grid.silencing_radii_m {
        for &rho in &grid.rho_values {
            let (p_disaster, p_silencing) = eval.evaluate(rho, radius)?;
            rows.push(SweepRow {
                rho,
                silencing_radius_m: radius,
                p_disaster,
                p_silencing,
                utility: utility(p_disaster.value, p_silencing.value, w),
            });
        }
    }
    Ok(rows)
}

pub fn sweep(cfg: &ScenarioConfig, grid: &SweepGrid, w: &TradeoffWeights, workers: Workers) -> Result<Vec<SweepRow>> {
    sweep_with(&MonteCarloEvaluator::new(cfg, grid, workers)?, grid, w)
}

/// Best row by utility; ties go to larger disaster success, then smaller
/// radius, then smaller factor.
pub fn best_row(rows: &[SweepRow]) -> Option<SweepRow> {
    rows.iter().copied().reduce(|best, r| {
        let better = r.utility > best.utility
            || (r.utility == best.utility
                && (r.p_disaster.value > best.p_disaster.value
                    || (r.p_disaster.value == best.p_disaster.value
                        && (r.silencing_radius_m < best.silencing_radius_m
                            || (r.silencing_radius_m == best.silencing_radius_m && r.rho < best.rho)))));
        if better {
            r
        } else {
            best
        }
    })
}

pub fn optimize_tradeoff_with<E: GridEvaluator>(
    eval: &E,
    grid: &SweepGrid,
    w: &TradeoffWeights,
) -> Result<SweepRow> {
    let rows = sweep_with(eval, grid, w)?;
    Ok(best_row(&rows).expect("validated grid is non-empty"))
}

pub fn optimize_tradeoff(
    cfg: &ScenarioConfig,
    grid: &SweepGrid,
    w: &TradeoffWeights,
    workers: Workers,
) -> Result<SweepRow> {
    optimize_tradeoff_with(&MonteCarloEvaluator::new(cfg, grid, workers)?, grid, w)
}
