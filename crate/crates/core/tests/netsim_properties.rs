use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use resilnet::geometry::{nearest_point, sample_ppp, thin, Annulus, Point2D, PointSet};
use resilnet::netsim::{
    apply_policy, build_network, estimate_success, estimate_success_with, uplink_sinr, uplink_trial, Band,
    BaseStation, NetworkSnapshot, ScenarioConfig, SilencingPolicy, Workers, Zone,
};
use resilnet::rng::{trial_rng, Purpose};

fn small_cfg() -> ScenarioConfig {
    ScenarioConfig {
        silencing_radius_m: 6000.0,
        sim_radius_m: 12_000.0,
        n_trials: 3000,
        master_seed: 11,
        ..ScenarioConfig::default()
    }
}

#[test]
fn success_is_monotone_in_rho_per_trial_and_in_aggregate() {
    let cfg = small_cfg();
    let rhos = [0.0, 0.1, 0.25, 0.5, 0.75, 1.0];
    for i in 0..300 {
        let net = build_network(&cfg, i);
        let mut prev = f64::INFINITY;
        for &rho in &rhos {
            let n = apply_policy(&net, SilencingPolicy::Partial(rho));
            let Ok(sinr) = uplink_sinr(&n, &cfg, &mut trial_rng(cfg.master_seed, Purpose::Uplink, 0, i)) else {
                continue;
            };
            assert!(sinr <= prev, "trial {i}: rho {rho} raised SINR {prev} -> {sinr}");
            prev = sinr;
        }
    }
    let est: Vec<f64> = rhos
        .iter()
        .map(|&r| estimate_success(&cfg, SilencingPolicy::Partial(r)).value)
        .collect();
    for w in est.windows(2) {
        assert!(w[0] >= w[1], "{est:?}");
    }
}

#[test]
fn success_is_monotone_in_silencing_radius() {
    let base = small_cfg();
    for policy in [SilencingPolicy::Complete, SilencingPolicy::Partial(0.3), SilencingPolicy::SpectrumSplit] {
        let mut prev = 0.0;
        for radius in [2600.0, 3500.0, 5000.0, 8000.0, 12_000.0] {
            let cfg = ScenarioConfig {
                silencing_radius_m: radius,
                ..base.clone()
            };
            let p = estimate_success(&cfg, policy).value;
            assert!(p >= prev, "{policy}: R_s {radius} dropped {prev} -> {p}");
            prev = p;
        }
    }
}

#[test]
fn policy_identities_are_bit_exact() {
    let cfg = small_cfg();
    let none = estimate_success(&cfg, SilencingPolicy::None);
    let complete = estimate_success(&cfg, SilencingPolicy::Complete);
    assert_eq!(estimate_success(&cfg, SilencingPolicy::Partial(1.0)), none);
    assert_eq!(estimate_success(&cfg, SilencingPolicy::Partial(0.0)), complete);
    assert_eq!(estimate_success(&cfg, SilencingPolicy::SpectrumSplit), complete);
    assert!(none.value <= complete.value);
}

#[test]
fn estimates_do_not_depend_on_worker_count() {
    let cfg = ScenarioConfig {
        n_trials: 1500,
        ..small_cfg()
    };
    let policy = SilencingPolicy::Partial(0.4);
    let one = estimate_success_with(&cfg, policy, Workers(1));
    for w in [2, 3, 8] {
        assert_eq!(estimate_success_with(&cfg, policy, Workers(w)), one);
    }
}

#[test]
fn ppp_counts_are_poisson() {
    let region = Annulus::disk(Point2D::ORIGIN, 2000.0).unwrap();
    let density = 2e-6;
    let mean_oracle = density * std::f64::consts::PI * 2000.0f64.powi(2);
    let n = 10_000;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let counts: Vec<f64> = (0..n)
        .map(|_| sample_ppp(&region, density, &mut rng).len() as f64)
        .collect();
    let mean = counts.iter().sum::<f64>() / n as f64;
    let var = counts.iter().map(|c| (c - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    let sigma = (mean_oracle / n as f64).sqrt();
    assert!((mean - mean_oracle).abs() < 3.0 * sigma, "mean {mean} vs {mean_oracle}");
    assert!((var / mean_oracle - 1.0).abs() < 0.10, "variance {var} vs {mean_oracle}");
}

#[test]
fn ppp_points_are_uniform_in_area() {
    let region = Annulus::new(Point2D::ORIGIN, 1000.0, 3000.0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let pts = sample_ppp(&region, 1e-3, &mut rng);
    assert!(pts.iter().all(|p| region.contains(p)));
    // Fraction inside radius 2000: (4 - 1) / (9 - 1) of the area.
    let inner = pts.iter().filter(|p| p.norm() <= 2000.0).count() as f64 / pts.len() as f64;
    let oracle = 3.0 / 8.0;
    let sigma = (oracle * (1.0 - oracle) / pts.len() as f64).sqrt();
    assert!((inner - oracle).abs() < 3.0 * sigma, "{inner}");
}

#[test]
fn thinning_composes() {
    let region = Annulus::disk(Point2D::ORIGIN, 1000.0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let (a, b) = (0.6, 0.5);
    let n = 4000;
    let (mut twice, mut once) = (0.0, 0.0);
    for _ in 0..n {
        let pts = sample_ppp(&region, 2e-5, &mut rng);
        twice += thin(&thin(&pts, a, &mut rng), b, &mut rng).len() as f64;
        once += thin(&pts, a * b, &mut rng).len() as f64;
    }
    // Both are Poisson with mean a b lambda |A|.
    let mean = a * b * 2e-5 * std::f64::consts::PI * 1e6;
    let sigma = (mean / n as f64).sqrt();
    assert!((twice / n as f64 - mean).abs() < 3.0 * sigma);
    assert!((once / n as f64 - mean).abs() < 3.0 * sigma);
}

proptest! {
    #[test]
    fn nearest_point_follows_permutation(
        coords in prop::collection::vec((-1e4f64..1e4, -1e4f64..1e4), 1..40),
        qx in -1e4f64..1e4,
        qy in -1e4f64..1e4,
        rot in 0usize..40,
    ) {
        let q = Point2D::new(qx, qy).unwrap();
        let pts: Vec<Point2D> = coords.iter().map(|&(x, y)| Point2D::new(x, y).unwrap()).collect();
        let (i, d) = nearest_point(&q, &PointSet::from(pts.clone())).unwrap();
        prop_assert_eq!(d, pts[i].distance(&q));
        prop_assert!(pts.iter().all(|p| p.distance(&q) >= d));

        let k = rot % pts.len();
        let mut rotated = pts.clone();
        rotated.rotate_left(k);
        let (j, d2) = nearest_point(&q, &PointSet::from(rotated.clone())).unwrap();
        prop_assert_eq!(d2, d);
        prop_assert_eq!(rotated[j].distance(&q), d);
        // Without ties the same point is chosen.
        if pts.iter().filter(|p| p.distance(&q) == d).count() == 1 {
            prop_assert_eq!(rotated[j], pts[i]);
        }
    }
}

/// One serving station at `d0` from the device, nothing else, noise `noise`.
fn lone_link(d0: f64, noise: f64, device_power: f64, alpha: f64) -> (NetworkSnapshot, ScenarioConfig) {
    let mut cfg = ScenarioConfig {
        device_tx_power_w: device_power,
        ..ScenarioConfig::default()
    };
    cfg.channel.noise_power_w = noise;
    cfg.channel.path_loss_exponent = alpha;
    let bs = BaseStation::terrestrial(Point2D::new(d0, 0.0).unwrap(), Zone::Disaster, 1.0);
    let net = NetworkSnapshot {
        stations: vec![bs],
        typical_device: Point2D::ORIGIN,
        silencing_user_band: Band::Disaster,
    };
    (net, cfg)
}

#[test]
fn noise_limited_success_matches_rayleigh_closed_form() {
    // (d0, N, P_d, alpha); exponent tau N d0^alpha / P_d = 0.1, 0.5, 2.
    let cases = [(10.0, 1e-4, 1.0, 4.0), (10.0, 5e-4, 1.0, 4.0), (100.0, 2e-6, 10.0, 3.5)];
    for (d0, noise, p, alpha) in cases {
        let (net, cfg) = lone_link(d0, noise, p, alpha);
        let oracle = (-cfg.channel.sinr_threshold * noise * f64::powf(d0, alpha) / p).exp();
        let n = 100_000;
        let hits = (0..n)
            .filter(|&i| uplink_trial(&net, &cfg, &mut trial_rng(3, Purpose::Uplink, 0, i)).is_success())
            .count();
        let est = hits as f64 / n as f64;
        assert!((est - oracle).abs() < 0.01, "d0={d0} N={noise}: {est} vs {oracle}");
    }
}

#[test]
fn doubling_the_simulation_radius_stays_within_the_interval() {
    let base = ScenarioConfig {
        n_trials: 20_000,
        ..ScenarioConfig::default()
    };
    let wide = ScenarioConfig {
        sim_radius_m: 2.0 * base.sim_radius_m,
        ..base.clone()
    };
    for policy in [SilencingPolicy::None, SilencingPolicy::Complete] {
        let a = estimate_success(&base, policy);
        let b = estimate_success(&wide, policy);
        assert!(b.value <= a.value, "extra interferers cannot help under common random numbers");
        assert!((a.value - b.value).abs() < a.ci_halfwidth, "{policy}: {} vs {}", a.value, b.value);
    }
}
