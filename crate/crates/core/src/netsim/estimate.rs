//! Monte Carlo estimators over independent trials.

use rayon::prelude::*;

use crate::geometry::Annulus;
use crate::geometry::Point2D;
use crate::rng::{trial_rng, Purpose};

use super::config::ScenarioConfig;
use super::policy::SilencingPolicy;
use super::snapshot::{apply_policy, build_network};
use super::trial::{silencing_user_trial, uplink_trial, TrialOutcome};

/// Two-sided 95% normal quantile.
pub const Z_95: f64 = 1.96;

/// Monte Carlo probability estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    /// 95% normal-approximation half-width.
    pub ci_halfwidth: f64,
    pub n_trials: u64,
    pub master_seed: u64,
    /// Trials in which no station could serve (counted as failures).
    pub coverage_holes: u64,
}

impl Estimate {
    pub fn from_counts(successes: u64, coverage_holes: u64, n_trials: u64, master_seed: u64) -> Self {
        let value = successes as f64 / n_trials as f64;
        Self {
            value,
            ci_halfwidth: Z_95 * (value * (1.0 - value) / n_trials as f64).sqrt(),
            n_trials,
            master_seed,
            coverage_holes,
        }
    }
}

/// Thread count for the trial loop. `0` means rayon's default.
///
/// Outcome counts are reduced as integers, so any worker count gives a
/// bit-identical estimate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Workers(pub usize);

#[derive(Default, Clone, Copy)]
struct Tally {
    successes: u64,
    holes: u64,
}

impl Tally {
    fn record(mut self, o: TrialOutcome) -> Self {
        match o {
            TrialOutcome::Success => self.successes += 1,
            TrialOutcome::CoverageHole => self.holes += 1,
            TrialOutcome::Outage => {}
        }
        self
    }

    fn merge(self, other: Tally) -> Tally {
        Tally {
            successes: self.successes + other.successes,
            holes: self.holes + other.holes,
        }
    }
}

pub(crate) fn run_trials<F>(n_trials: u64, workers: Workers, trial: F) -> (u64, u64)
where
    F: Fn(u64) -> TrialOutcome + Sync + Send,
{
    let work = || {
        (0..n_trials)
            .into_par_iter()
            .fold(Tally::default, |acc, i| acc.record(trial(i)))
            .reduce(Tally::default, Tally::merge)
    };
    let tally = if workers.0 == 0 {
        work()
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(workers.0)
            .build()
            .expect("thread pool")
            .install(work)
    };
    (tally.successes, tally.holes)
}

/// Uplink success probability of a typical device in the disaster disk.
pub fn estimate_success(cfg: &ScenarioConfig, policy: SilencingPolicy) -> Estimate {
    estimate_success_with(cfg, policy, Workers::default())
}

pub fn estimate_success_with(cfg: &ScenarioConfig, policy: SilencingPolicy, workers: Workers) -> Estimate {
    let (s, h) = run_trials(cfg.n_trials, workers, |i| {
        let net = apply_policy(&build_network(cfg, i), policy);
        let mut rng = trial_rng(cfg.master_seed, Purpose::Uplink, 0, i);
        uplink_trial(&net, cfg, &mut rng)
    });
    Estimate::from_counts(s, h, cfg.n_trials, cfg.master_seed)
}

/// Downlink coverage probability of a typical user uniform in the
/// silencing annulus. An empty annulus (silencing radius equal to the
/// active-ring edge) has no users to lose and reports full coverage.
pub fn estimate_silencing_area_coverage(cfg: &ScenarioConfig, policy: SilencingPolicy) -> Estimate {
    estimate_silencing_area_coverage_with(cfg, policy, Workers::default())
}

pub fn estimate_silencing_area_coverage_with(
    cfg: &ScenarioConfig,
    policy: SilencingPolicy,
    workers: Workers,
) -> Estimate {
    let Ok(area) = Annulus::new(Point2D::ORIGIN, cfg.active_ring_outer_m(), cfg.silencing_radius_m) else {
        return Estimate::from_counts(cfg.n_trials, 0, cfg.n_trials, cfg.master_seed);
    };
    let (s, h) = run_trials(cfg.n_trials, workers, |i| {
        let net = apply_policy(&build_network(cfg, i), policy);
        let mut rng = trial_rng(cfg.master_seed, Purpose::Coverage, 0, i);
        let user = area.sample_uniform(&mut rng);
        silencing_user_trial(&net, cfg, &user, &mut rng)
    });
    Estimate::from_counts(s, h, cfg.n_trials, cfg.master_seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> ScenarioConfig {
        ScenarioConfig {
            bs_density_per_m2: 1e-6,
            sim_radius_m: 10_000.0,
            n_trials: 2000,
            master_seed: 77,
            ..ScenarioConfig::default()
        }
    }

    #[test]
    fn ci_formula() {
        let e = Estimate::from_counts(58, 3, 100, 5);
        assert_eq!(e.value, 0.58);
        assert!((e.ci_halfwidth - 1.96 * (0.58f64 * 0.42 / 100.0).sqrt()).abs() < 1e-15);
        assert_eq!(e.coverage_holes, 3);
        assert_eq!(Estimate::from_counts(10, 0, 10, 0).ci_halfwidth, 0.0);
    }

    #[test]
    fn silent_network_always_succeeds() {
        let c = ScenarioConfig {
            bs_tx_power_w: 0.0,
            bs_survival_prob: 1.0,
            bs_density_per_m2: 5e-6,
            ..small()
        };
        let e = estimate_success(&c, SilencingPolicy::None);
        // A trial can still land without any live server in the disk or ring.
        assert_eq!(e.value + e.coverage_holes as f64 / e.n_trials as f64, 1.0);
    }

    #[test]
    fn worker_count_does_not_change_estimates() {
        let c = small();
        let a = estimate_success_with(&c, SilencingPolicy::Partial(0.4), Workers(1));
        let b = estimate_success_with(&c, SilencingPolicy::Partial(0.4), Workers(7));
        assert_eq!(a, b);
        let a = estimate_silencing_area_coverage_with(&c, SilencingPolicy::None, Workers(1));
        let b = estimate_silencing_area_coverage_with(&c, SilencingPolicy::None, Workers(3));
        assert_eq!(a, b);
    }

    #[test]
    fn empty_silencing_area_is_fully_covered() {
        let c = ScenarioConfig {
            silencing_radius_m: 2600.0,
            ..small()
        };
        assert_eq!(estimate_silencing_area_coverage(&c, SilencingPolicy::Complete).value, 1.0);
    }
}
