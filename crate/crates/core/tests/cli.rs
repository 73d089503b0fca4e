use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const SMALL_NETWORK: &str = r#"
[network]
bs_density_per_km2 = 1.0
sim_radius_m = 10000.0
n_trials = 400
seed = 9
"#;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_resilnet"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn invoke(sub: &str, scenario: &Path, out: &Path, extra: &[&str]) -> Output {
    let mut args = vec![
        sub,
        "--scenario",
        scenario.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ];
    args.extend_from_slice(extra);
    run(&args)
}

fn manifest(out: &Path) -> PathBuf {
    PathBuf::from(format!("{}.manifest", out.display()))
}

/// Minimal CSV reader for the simple tables the tool writes.
fn parse_csv(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(str::to_string).collect();
    let rows = lines.map(|l| l.split(',').map(str::to_string).collect()).collect();
    (header, rows)
}

#[test]
fn reruns_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    let sc = write(&dir, "s.toml", SMALL_NETWORK);
    let (a, b) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
    assert!(invoke("silencing-run", &sc, &a, &[]).status.success());
    assert!(invoke("silencing-run", &sc, &b, &[]).status.success());
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert_eq!(fs::read(manifest(&a)).unwrap(), fs::read(manifest(&b)).unwrap());
}

#[test]
fn missing_scenario_is_an_input_error_and_writes_nothing() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("out.csv");
    let o = invoke("silencing-run", &dir.path().join("nope.toml"), &out, &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!out.exists());
    assert!(!manifest(&out).exists());
}

#[test]
fn schema_violation_names_the_field() {
    let dir = TempDir::new().unwrap();
    let sc = write(&dir, "bad.toml", "[network]\nbs_survival_prob = 1.5\n");
    let out = dir.path().join("out.csv");
    let o = invoke("silencing-run", &sc, &out, &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("bs_survival_prob"));
    assert!(!out.exists());

    let sc = write(&dir, "typo.toml", "[network]\nbs_densty_per_km2 = 1.0\n");
    let o = invoke("silencing-run", &sc, &out, &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("bs_densty_per_km2"));
}

#[test]
fn unwritable_output_is_an_io_error() {
    let dir = TempDir::new().unwrap();
    let sc = write(&dir, "s.toml", SMALL_NETWORK);
    let out = dir.path().join("missing-dir").join("out.csv");
    let o = invoke("satwet-curve", &sc, &out, &[]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn sweep_has_one_row_per_grid_point_and_ignores_workers() {
    let dir = TempDir::new().unwrap();
    let text = format!(
        "{SMALL_NETWORK}\n[sweep]\nrho_values = [0.0, 0.5, 1.0]\nsilencing_radii_m = [3000.0, 4000.0, 5000.0, 6000.0]\n"
    );
    let sc = write(&dir, "sweep.toml", &text);
    let (a, b) = (dir.path().join("w1.csv"), dir.path().join("w8.csv"));
    assert!(invoke("silencing-sweep", &sc, &a, &["--workers", "1"]).status.success());
    assert!(invoke("silencing-sweep", &sc, &b, &["--workers", "8"]).status.success());
    let csv = fs::read_to_string(&a).unwrap();
    assert_eq!(csv, fs::read_to_string(&b).unwrap());
    assert_eq!(fs::read(manifest(&a)).unwrap(), fs::read(manifest(&b)).unwrap());

    let (header, rows) = parse_csv(&csv);
    assert_eq!(header, resilnet::cli::SWEEP_HEADER);
    assert_eq!(rows.len(), 12);
    assert!(!csv.contains('\r'));
    let m = fs::read_to_string(manifest(&a)).unwrap();
    assert!(m.contains("rows = 12"));
    assert!(m.contains("best_rho"));
}

#[test]
fn seed_and_trial_overrides_apply() {
    let dir = TempDir::new().unwrap();
    let sc = write(&dir, "s.toml", SMALL_NETWORK);
    let out = dir.path().join("o.csv");
    assert!(invoke("silencing-run", &sc, &out, &["--seed", "77", "--trials", "150"]).status.success());
    let (header, rows) = parse_csv(&fs::read_to_string(&out).unwrap());
    let col = |name: &str| header.iter().position(|h| h == name).unwrap();
    assert!(rows.iter().all(|r| r[col("seed")] == "77" && r[col("n_trials")] == "150"));
    let m = fs::read_to_string(manifest(&out)).unwrap();
    assert!(m.contains("seed = 77") && m.contains("n_trials = 150"));
}

#[test]
fn satwet_csv_parses_back_to_the_library_values() {
    let dir = TempDir::new().unwrap();
    let sc = write(&dir, "sat.toml", "[satwet]\nmode = \"zenith\"\n");
    let out = dir.path().join("sat.csv");
    assert!(invoke("satwet-curve", &sc, &out, &[]).status.success());
    let (header, rows) = parse_csv(&fs::read_to_string(&out).unwrap());
    assert_eq!(header, resilnet::cli::SATWET_HEADER);
    assert_eq!(rows.len(), 10);

    let file = resilnet::cli::ScenarioFile::load(&sc).unwrap();
    let (params, model) = file.satwet().unwrap();
    let lib = resilnet::satwet::charge_curve(
        &file.satwet.heights_m,
        &file.satwet.payloads_bits,
        &params,
        &model,
        file.satwet.mode,
    )
    .unwrap();
    for (row, r) in rows.iter().zip(&lib) {
        let h: f64 = row[0].parse().unwrap();
        let t: f64 = row[4].parse().unwrap();
        assert_eq!(h, r.height_m);
        assert_eq!(row[2], "zenith");
        assert!(((t - r.charging_s) / r.charging_s).abs() <= 5e-6);
        assert_eq!(row[4], resilnet::cli::format_sig6(r.charging_s));
    }
}

#[test]
fn acb_run_reports_every_class() {
    let dir = TempDir::new().unwrap();
    let text = r#"
[acb]
capacity_per_s = 5.0
horizon_s = 100.0
seed = 4

[[acb.classes]]
name = "emergency"
acdc_category = 1
arrival_rate = 2.0
barring_prob = 1.0

[[acb.classes]]
name = "telemetry"
acdc_category = 2
arrival_rate = 10.0
barring_prob = 0.5
"#;
    let sc = write(&dir, "acb.toml", text);
    let out = dir.path().join("acb.csv");
    let o = invoke("acb-run", &sc, &out, &[]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let (header, rows) = parse_csv(&fs::read_to_string(&out).unwrap());
    assert_eq!(header, resilnet::cli::ACB_HEADER);
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0][0], "emergency");
    assert_eq!(rows[1][4], "5");
}

#[test]
fn bad_flags_exit_with_input_error() {
    assert_eq!(run(&["silencing-run"]).status.code(), Some(2));
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
}

#[test]
fn shipped_scenarios_parse() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../scenarios");
    let mut n = 0;
    for entry in fs::read_dir(dir).unwrap() {
        let p = entry.unwrap().path();
        if p.extension().is_some_and(|e| e == "toml") {
            let f = resilnet::cli::ScenarioFile::load(&p).unwrap_or_else(|e| panic!("{}: {e}", p.display()));
            f.network_config().unwrap();
            n += 1;
        }
    }
    assert!(n >= 3);
}
