//! Python bindings: scenario configuration, the uplink/coverage estimators,
//! the silencing planner, satellite charging, and access barring.

use std::path::PathBuf;

use pyo3::exceptions::{PyOSError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use ::resilnet::acb::{self, AcdcProfile, AppClass};
use ::resilnet::channel;
use ::resilnet::cli::{CliError, ScenarioFile};
use ::resilnet::netsim::{self, Estimate, ScenarioConfig, SilencingPolicy, Workers};
use ::resilnet::planner::{self, SweepGrid, SweepRow, TradeoffWeights};
use ::resilnet::rng::{trial_rng, Purpose};
use ::resilnet::satwet::{self, ChargingModel, PowerMode, SatWetParams};

fn value_err(e: ::resilnet::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn cli_err(e: CliError) -> PyErr {
    match e {
        CliError::Input(m) => PyValueError::new_err(m),
        CliError::Io(m) => PyOSError::new_err(m),
    }
}

fn parse_policy(s: &str) -> PyResult<SilencingPolicy> {
    s.parse().map_err(value_err)
}

/// Network geometry, powers, channel and Monte Carlo settings (SI units).
#[pyclass(name = "ScenarioConfig", module = "resilnet", from_py_object)]
#[derive(Clone)]
struct PyScenarioConfig {
    inner: ScenarioConfig,
}

macro_rules! config_fields {
    ($($name:ident : $ty:ty => $($path:ident).+;)*) => {
        #[pymethods]
        impl PyScenarioConfig {
            #[new]
            #[pyo3(signature = ($($name = None),*))]
            fn new($($name: Option<$ty>),*) -> PyResult<Self> {
                let mut inner = ScenarioConfig::default();
                $(if let Some(v) = $name { inner.$($path).+ = v; })*
                inner.validate().map_err(value_err)?;
                Ok(Self { inner })
            }

            $(
                #[getter]
                fn $name(&self) -> $ty {
                    self.inner.$($path).+
                }
            )*

            /// Network section of a scenario file, as the CLI would resolve it.
            #[staticmethod]
            fn from_scenario_file(path: PathBuf) -> PyResult<Self> {
                let file = ScenarioFile::load(&path).map_err(cli_err)?;
                Ok(Self { inner: file.network_config().map_err(cli_err)? })
            }

            /// Copy with the given fields replaced; validated like the constructor.
            #[pyo3(signature = (**changes))]
            fn replace(&self, changes: Option<&Bound<'_, PyDict>>) -> PyResult<Self> {
                let mut inner = self.inner.clone();
                if let Some(changes) = changes {
                    for (k, v) in changes.iter() {
                        let key: String = k.extract()?;
                        match key.as_str() {
                            $(stringify!($name) => inner.$($path).+ = v.extract()?,)*
                            other => {
                                return Err(PyValueError::new_err(format!("unknown field `{other}`")))
                            }
                        }
                    }
                }
                inner.validate().map_err(value_err)?;
                Ok(Self { inner })
            }

            fn __repr__(&self) -> String {
                format!("{:?}", self.inner)
            }
        }
    };
}

config_fields! {
    disaster_radius_m: f64 => disaster_radius_m;
    active_ring_width_m: f64 => active_ring_width_m;
    silencing_radius_m: f64 => silencing_radius_m;
    sim_radius_m: f64 => sim_radius_m;
    bs_density_per_m2: f64 => bs_density_per_m2;
    bs_survival_prob: f64 => bs_survival_prob;
    device_tx_power_w: f64 => device_tx_power_w;
    bs_tx_power_w: f64 => bs_tx_power_w;
    path_loss_exponent: f64 => channel.path_loss_exponent;
    noise_power_w: f64 => channel.noise_power_w;
    sinr_threshold: f64 => channel.sinr_threshold;
    min_distance_m: f64 => channel.min_distance_m;
    n_trials: u64 => n_trials;
    master_seed: u64 => master_seed;
}

/// Monte Carlo probability with its 95% normal-approximation half-width.
#[pyclass(name = "Estimate", module = "resilnet", frozen, get_all, skip_from_py_object)]
#[derive(Clone)]
struct PyEstimate {
    value: f64,
    ci_halfwidth: f64,
    n_trials: u64,
    master_seed: u64,
    coverage_holes: u64,
}

impl From<Estimate> for PyEstimate {
    fn from(e: Estimate) -> Self {
        Self {
            value: e.value,
            ci_halfwidth: e.ci_halfwidth,
            n_trials: e.n_trials,
            master_seed: e.master_seed,
            coverage_holes: e.coverage_holes,
        }
    }
}

#[pymethods]
impl PyEstimate {
    fn __repr__(&self) -> String {
        format!(
            "Estimate(value={}, ci_halfwidth={}, n_trials={}, coverage_holes={})",
            self.value, self.ci_halfwidth, self.n_trials, self.coverage_holes
        )
    }
}

/// Uplink success probability for devices in the disaster area.
#[pyfunction]
#[pyo3(signature = (cfg, policy, workers = 0))]
fn estimate_success(py: Python<'_>, cfg: &PyScenarioConfig, policy: &str, workers: usize) -> PyResult<PyEstimate> {
    let policy = parse_policy(policy)?;
    let cfg = cfg.inner.clone();
    Ok(py.detach(|| netsim::estimate_success_with(&cfg, policy, Workers(workers))).into())
}

/// Downlink coverage for users inside the silencing annulus.
#[pyfunction]
#[pyo3(signature = (cfg, policy, workers = 0))]
fn estimate_silencing_area_coverage(
    py: Python<'_>,
    cfg: &PyScenarioConfig,
    policy: &str,
    workers: usize,
) -> PyResult<PyEstimate> {
    let policy = parse_policy(policy)?;
    let cfg = cfg.inner.clone();
    Ok(py
        .detach(|| netsim::estimate_silencing_area_coverage_with(&cfg, policy, Workers(workers)))
        .into())
}

fn row_dict<'py>(py: Python<'py>, r: &SweepRow) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("rho", r.rho)?;
    d.set_item("silencing_radius_m", r.silencing_radius_m)?;
    d.set_item("p_disaster", r.p_disaster.value)?;
    d.set_item("p_disaster_ci", r.p_disaster.ci_halfwidth)?;
    d.set_item("p_silencing", r.p_silencing.value)?;
    d.set_item("p_silencing_ci", r.p_silencing.ci_halfwidth)?;
    d.set_item("utility", r.utility)?;
    Ok(d)
}

fn grid_and_weights(
    cfg: &ScenarioConfig,
    rho_values: Vec<f64>,
    silencing_radii_m: Vec<f64>,
    w_disaster: f64,
    w_silencing_area: f64,
) -> PyResult<(SweepGrid, TradeoffWeights)> {
    let grid = SweepGrid {
        rho_values,
        silencing_radii_m,
    };
    grid.validate(cfg).map_err(value_err)?;
    let w = TradeoffWeights {
        w_disaster,
        w_silencing_area,
    };
    w.validate().map_err(value_err)?;
    Ok((grid, w))
}

/// Every (radius, rho) grid point as a list of dicts, radius-major.
#[pyfunction]
#[pyo3(signature = (cfg, rho_values, silencing_radii_m, w_disaster = 1.0, w_silencing_area = 1.0, workers = 0))]
fn sweep<'py>(
    py: Python<'py>,
    cfg: &PyScenarioConfig,
    rho_values: Vec<f64>,
    silencing_radii_m: Vec<f64>,
    w_disaster: f64,
    w_silencing_area: f64,
    workers: usize,
) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let cfg = cfg.inner.clone();
    let (grid, w) = grid_and_weights(&cfg, rho_values, silencing_radii_m, w_disaster, w_silencing_area)?;
    let rows = py
        .detach(|| planner::sweep(&cfg, &grid, &w, Workers(workers)))
        .map_err(value_err)?;
    rows.iter().map(|r| row_dict(py, r)).collect()
}

/// The grid point with the highest weighted utility.
#[pyfunction]
#[pyo3(signature = (cfg, rho_values, silencing_radii_m, w_disaster = 1.0, w_silencing_area = 1.0, workers = 0))]
fn optimize_tradeoff<'py>(
    py: Python<'py>,
    cfg: &PyScenarioConfig,
    rho_values: Vec<f64>,
    silencing_radii_m: Vec<f64>,
    w_disaster: f64,
    w_silencing_area: f64,
    workers: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let cfg = cfg.inner.clone();
    let (grid, w) = grid_and_weights(&cfg, rho_values, silencing_radii_m, w_disaster, w_silencing_area)?;
    let best = py
        .detach(|| planner::optimize_tradeoff(&cfg, &grid, &w, Workers(workers)))
        .map_err(value_err)?;
    row_dict(py, &best)
}

#[pyfunction]
fn utility(p_disaster: f64, p_silencing_area: f64, w_disaster: f64, w_silencing_area: f64) -> f64 {
    planner::utility(
        p_disaster,
        p_silencing_area,
        &TradeoffWeights {
            w_disaster,
            w_silencing_area,
        },
    )
}

#[pyfunction]
fn friis_gain(distance_m: f64, frequency_hz: f64) -> PyResult<f64> {
    channel::friis_gain(distance_m, frequency_hz).map_err(value_err)
}

#[pyfunction]
fn dbm_to_watts(dbm: f64) -> f64 {
    channel::dbm_to_watts(dbm)
}

#[allow(clippy::too_many_arguments)]
fn satwet_params(
    altitude_m: f64,
    sat_tx_power_dbm: f64,
    sat_tx_gain_db: f64,
    ground_rx_gain_db: f64,
    rf_to_dc_efficiency: f64,
    frequency_hz: f64,
    min_elevation_deg: f64,
) -> PyResult<SatWetParams> {
    let p = SatWetParams {
        frequency_hz,
        sat_tx_power_w: channel::dbm_to_watts(sat_tx_power_dbm),
        sat_tx_gain: channel::from_db(sat_tx_gain_db),
        ground_rx_gain: channel::from_db(ground_rx_gain_db),
        rf_to_dc_efficiency,
        altitude_m,
        min_elevation_deg,
        ..SatWetParams::default()
    };
    p.validate().map_err(value_err)?;
    Ok(p)
}

/// Harvested DC power in watts, at zenith or averaged over a pass.
#[pyfunction]
#[pyo3(signature = (
    altitude_m = 200e3,
    mode = "zenith",
    sat_tx_power_dbm = 50.0,
    sat_tx_gain_db = 50.0,
    ground_rx_gain_db = 0.0,
    rf_to_dc_efficiency = 1.0,
    frequency_hz = 868e6,
    min_elevation_deg = 0.0,
))]
#[allow(clippy::too_many_arguments)]
fn harvested_power(
    altitude_m: f64,
    mode: &str,
    sat_tx_power_dbm: f64,
    sat_tx_gain_db: f64,
    ground_rx_gain_db: f64,
    rf_to_dc_efficiency: f64,
    frequency_hz: f64,
    min_elevation_deg: f64,
) -> PyResult<f64> {
    let mode = match mode {
        "zenith" => PowerMode::Zenith,
        "pass-average" => PowerMode::PassAverage,
        other => return Err(PyValueError::new_err(format!("unknown power mode `{other}`"))),
    };
    let p = satwet_params(
        altitude_m,
        sat_tx_power_dbm,
        sat_tx_gain_db,
        ground_rx_gain_db,
        rf_to_dc_efficiency,
        frequency_hz,
        min_elevation_deg,
    )?;
    satwet::harvested_power(&p, mode).map_err(value_err)
}

/// Seconds needed to harvest the energy for `payload_bits`.
#[pyfunction]
#[pyo3(signature = (payload_bits, harvested_power_w, energy_per_bit_j = satwet::DEFAULT_ENERGY_PER_BIT_J))]
fn charging_time(payload_bits: f64, harvested_power_w: f64, energy_per_bit_j: f64) -> PyResult<f64> {
    satwet::charging_time(
        &ChargingModel {
            energy_per_bit_j,
            payload_bits,
        },
        harvested_power_w,
    )
    .map_err(value_err)
}

#[pyfunction]
#[pyo3(signature = (altitude_m, elevation_deg, earth_radius_m = satwet::EARTH_RADIUS_M))]
fn slant_distance(altitude_m: f64, elevation_deg: f64, earth_radius_m: f64) -> f64 {
    satwet::slant_distance(altitude_m, elevation_deg, earth_radius_m)
}

fn profile(classes: Vec<(String, u32, f64, f64)>, enforce_monotone: bool) -> PyResult<AcdcProfile> {
    let profile = AcdcProfile {
        classes: classes
            .into_iter()
            .map(|(name, acdc_category, arrival_rate, barring_prob)| AppClass {
                name,
                acdc_category,
                arrival_rate,
                barring_prob,
            })
            .collect(),
        enforce_monotone,
    };
    profile.validate().map_err(value_err)?;
    Ok(profile)
}

fn metrics_dicts<'py>(py: Python<'py>, m: &acb::AccessMetrics) -> PyResult<Vec<Bound<'py, PyDict>>> {
    m.classes
        .iter()
        .map(|c| {
            let d = PyDict::new(py);
            d.set_item("name", &c.name)?;
            d.set_item("acdc_category", c.acdc_category)?;
            d.set_item("arrival_rate", c.arrival_rate)?;
            d.set_item("admitted_rate", c.admitted_rate)?;
            d.set_item("blocking_prob", c.blocking_prob)?;
            Ok(d)
        })
        .collect()
}

/// Expected admitted rate per class. `classes` holds
/// `(name, acdc_category, arrival_rate, barring_prob)` tuples.
#[pyfunction]
#[pyo3(signature = (classes, enforce_monotone = false))]
fn admitted_load<'py>(
    py: Python<'py>,
    classes: Vec<(String, u32, f64, f64)>,
    enforce_monotone: bool,
) -> PyResult<Vec<Bound<'py, PyDict>>> {
    metrics_dicts(py, &acb::admitted_load(&profile(classes, enforce_monotone)?))
}

/// Simulated admission with a finite capacity, seeded like the CLI.
#[pyfunction]
#[pyo3(signature = (classes, capacity_per_s, horizon_s, seed = 1, enforce_monotone = false))]
fn simulate_access<'py>(
    py: Python<'py>,
    classes: Vec<(String, u32, f64, f64)>,
    capacity_per_s: f64,
    horizon_s: f64,
    seed: u64,
    enforce_monotone: bool,
) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let profile = profile(classes, enforce_monotone)?;
    let mut rng = trial_rng(seed, Purpose::Access, 0, 0);
    let m = acb::simulate_access(&profile, capacity_per_s, horizon_s, &mut rng).map_err(value_err)?;
    metrics_dicts(py, &m)
}

#[pymodule]
fn resilnet(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<PyScenarioConfig>()?;
    m.add_class::<PyEstimate>()?;
    m.add_function(wrap_pyfunction!(estimate_success, m)?)?;
    m.add_function(wrap_pyfunction!(estimate_silencing_area_coverage, m)?)?;
    m.add_function(wrap_pyfunction!(sweep, m)?)?;
    m.add_function(wrap_pyfunction!(optimize_tradeoff, m)?)?;
    m.add_function(wrap_pyfunction!(utility, m)?)?;
    m.add_function(wrap_pyfunction!(friis_gain, m)?)?;
    m.add_function(wrap_pyfunction!(dbm_to_watts, m)?)?;
    m.add_function(wrap_pyfunction!(harvested_power, m)?)?;
    m.add_function(wrap_pyfunction!(charging_time, m)?)?;
    m.add_function(wrap_pyfunction!(slant_distance, m)?)?;
    m.add_function(wrap_pyfunction!(admitted_load, m)?)?;
    m.add_function(wrap_pyfunction!(simulate_access, m)?)?;
    Ok(())
}
