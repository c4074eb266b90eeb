use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn run(args: &[&str], threads: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_rotoshift"));
    cmd.args(args).env("RUST_LOG", "error");
    match threads {
        Some(t) => cmd.env("ROTOSHIFT_THREADS", t),
        None => cmd.env_remove("ROTOSHIFT_THREADS"),
    };
    cmd.output().unwrap()
}

fn run_config(command: &str, config: &str, extra: &[&str]) -> (Output, TempDir) {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "config.json", config);
    let mut args = vec![command, "--config", path.to_str().unwrap()];
    args.extend_from_slice(extra);
    (run(&args, None), dir)
}

fn csv(out: &Output) -> (Vec<String>, Vec<Vec<String>>) {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    assert!(!text.contains('\r'));
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(str::to_owned).collect();
    let rows = lines.map(|l| l.split(',').map(str::to_owned).collect()).collect();
    (header, rows)
}

fn column(header: &[String], rows: &[Vec<String>], name: &str) -> Vec<f64> {
    let i = header
        .iter()
        .position(|h| h == name)
        .unwrap_or_else(|| panic!("no column {name}"));
    rows.iter().map(|r| r[i].parse().unwrap()).collect()
}

const COULOMB_SWEEP: &str = r#"{
    "model": "coulomb",
    "rotor": {"omega_rad_s": 1e12, "radius_m": 1e-10, "Z": 1},
    "transition": {"upper": [3, 2], "lower": [2, 1]},
    "sweep": {"axis": "omega", "from": 1e10, "to": 1e12, "points": 21, "scale": "log"}
}"#;

#[test]
fn harmonic_drfs_columns_are_zero() {
    let config = r#"{
        "model": "harmonic",
        "rotor": {"omega_rad_s": 3e14, "radius_m": 2e-10, "omega0_rad_s": 1e15},
        "transition": {"upper": [3, 1], "lower": [2, 0]},
        "sweep": {"axis": "omega", "from": 1e13, "to": 9e14, "points": 9}
    }"#;
    let (out, _dir) = run_config("sweep", config, &[]);
    let (header, rows) = csv(&out);
    assert_eq!(rows.len(), 9);
    for name in [
        "drfs_exact_rad_s",
        "drfs_series_rad_s",
        "dynamic_part_rad_s",
        "kinematic_part_rad_s",
    ] {
        assert!(column(&header, &rows, name).iter().all(|&v| v == 0.0), "{name}");
    }
}

#[test]
fn compare_stark_force_ratio() {
    let config = r#"{
        "model": "coulomb",
        "rotor": {"omega_over_2pi_hz": 8e7, "radius_m": 5e-11},
        "drive": {"E_V_per_m": 3e4, "orientation": "parallel"}
    }"#;
    let (out, _dir) = run_config("compare-stark", config, &[]);
    let (header, rows) = csv(&out);
    let ratio = column(&header, &rows, "force_ratio")[0];
    assert!((ratio / 2.4e-9 - 1.0).abs() < 0.05, "{ratio}");
    let orientations: Vec<&str> = rows.iter().map(|r| r[0].as_str()).collect();
    for o in ["none", "parallel", "antiparallel"] {
        assert!(orientations.contains(&o));
    }
}

#[test]
fn repeated_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let config = write(dir.path(), "c.json", COULOMB_SWEEP);
    let outputs: Vec<Vec<u8>> = ["1", "3", "0", "1"]
        .iter()
        .map(|t| {
            let out = run(&["sweep", "--config", config.to_str().unwrap()], Some(t));
            assert!(out.status.success());
            out.stdout
        })
        .collect();
    assert!(outputs.windows(2).all(|w| w[0] == w[1]));
}

#[test]
fn omega_sweep_slope_is_three() {
    let (out, _dir) = run_config("sweep", COULOMB_SWEEP, &[]);
    let (header, rows) = csv(&out);
    let x: Vec<f64> = column(&header, &rows, "axis_value").iter().map(|v| v.ln()).collect();
    let y: Vec<f64> = column(&header, &rows, "drfs_exact_rad_s")
        .iter()
        .map(|v| v.abs().ln())
        .collect();
    let n = x.len() as f64;
    let (mx, my) = (x.iter().sum::<f64>() / n, y.iter().sum::<f64>() / n);
    let num: f64 = x.iter().zip(&y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let den: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    assert!((num / den - 3.0).abs() < 0.05);
}

#[test]
fn radius_sweep_series_scales_quadratically() {
    let config = COULOMB_SWEEP.replace(
        r#""axis": "omega", "from": 1e10, "to": 1e12, "points": 21, "scale": "log""#,
        r#""axis": "radius", "from": 1e-11, "to": 1e-9, "points": 11, "scale": "log""#,
    );
    let (out, _dir) = run_config("sweep", &config, &[]);
    let (header, rows) = csv(&out);
    let r = column(&header, &rows, "axis_value");
    let s = column(&header, &rows, "drfs_series_rad_s");
    let k0 = s[0] / (r[0] * r[0]);
    for (ri, si) in r.iter().zip(&s) {
        assert!((si / (ri * ri) / k0 - 1.0).abs() < 1e-10);
    }
}

#[test]
fn drive_sweep_passes_through_cancellation() {
    // eE = mΩ²R at E = m Ω² R / e; a 3-point grid puts it at the midpoint
    let (m, e) = (9.1093837015e-31, 1.602176634e-19);
    let cancel = m * 1e13f64.powi(2) * 1e-10 / e;
    let config = format!(
        r#"{{
        "model": "coulomb",
        "rotor": {{"omega_rad_s": 1e13, "radius_m": 1e-10}},
        "transition": {{"upper": [2, 1], "lower": [1, 0]}},
        "drive": {{"orientation": "antiparallel"}},
        "sweep": {{"axis": "drive", "from": 0, "to": {}, "points": 3}}
    }}"#,
        2.0 * cancel
    );
    let (out, _dir) = run_config("sweep", &config, &[]);
    let (header, rows) = csv(&out);
    let roots = column(&header, &rows, "root_factor_upper");
    assert_eq!(roots[1], 1.0);
    assert!(roots[0] > 1.0 && roots[2] > 1.0);
    assert!((roots[0] - roots[2]).abs() < 1e-9);
}

#[test]
fn rows_decompose_into_kinematic_and_dynamic() {
    let (out, _dir) = run_config("sweep", COULOMB_SWEEP, &["--M", "-1"]);
    let (header, rows) = csv(&out);
    let total = column(&header, &rows, "drfs_exact_rad_s");
    let kin = column(&header, &rows, "kinematic_part_rad_s");
    let dynamic = column(&header, &rows, "dynamic_part_rad_s");
    for ((t, k), d) in total.iter().zip(&kin).zip(&dynamic) {
        // each field carries 12 significant digits
        let rounding = 5e-12 * (t.abs() + k.abs() + d.abs());
        assert!((t - (k + d)).abs() <= 1e-12 * t.abs() + rounding);
    }
    assert!(column(&header, &rows, "M").iter().all(|&m| m == -1.0));
}

#[test]
fn auto_photon_m_is_reported() {
    let config = COULOMB_SWEEP.replace("[2, 1]}", "[2, 1], \"M\": 4}");
    let (out, _dir) = run_config("drfs", &config, &["--M", "auto"]);
    let (header, rows) = csv(&out);
    assert_eq!(column(&header, &rows, "M"), vec![1.0]);
    assert_eq!(column(&header, &rows, "kinematic_part_rad_s"), vec![0.0]);
}

#[test]
fn harmonic_spectrum_matches_closed_form() {
    let config = r#"{
        "model": "harmonic",
        "rotor": {"omega_rad_s": 5e13, "radius_m": 1e-11, "omega0_rad_s": 1e15},
        "basis": {"n_max": 10}
    }"#;
    let (out, _dir) = run_config("spectrum", config, &[]);
    let (header, rows) = csv(&out);
    let diff = column(&header, &rows, "relative_difference");
    let trusted = column(&header, &rows, "trusted");
    assert_eq!(rows.len(), 286);
    for (d, t) in diff.iter().zip(&trusted) {
        if *t == 1.0 {
            assert!(*d < 1e-8, "{d}");
        }
    }
}

#[test]
fn coulomb_spectrum_matches_closed_form() {
    let config = r#"{
        "model": "coulomb",
        "rotor": {"omega_rad_s": 1e12, "radius_m": 1e-10},
        "basis": {"n_max": 4}
    }"#;
    let (out, _dir) = run_config("spectrum", config, &["--format", "json"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 1 + 4 + 9 + 16);
    assert!(rows.iter().all(|r| r["relative_difference"].as_f64().unwrap() < 1e-12));
}

#[test]
fn doppler_at_rest_is_bohr_frequency() {
    let config = r#"{"doppler": {"delta_e_J": 1.0e-19, "v_m_per_s": [0, 0, 0], "direction": [0, 0, 1]}}"#;
    let (out, _dir) = run_config("doppler", config, &[]);
    let (header, rows) = csv(&out);
    let rest = column(&header, &rows, "omega_rest_rad_s")[0];
    assert_eq!(column(&header, &rows, "omega_doppler_rad_s")[0], rest);
    assert!((rest / (1.0e-19 / 1.054571817e-34) - 1.0).abs() < 1e-10);
}

#[test]
fn exit_codes() {
    let fast = r#"{"doppler": {"delta_e_J": 1.0e-19, "v_m_per_s": [1e7, 0, 0], "direction": [1, 0, 0]}}"#;
    assert_eq!(run_config("doppler", fast, &[]).0.status.code(), Some(3));

    let resonant = r#"{
        "model": "harmonic",
        "rotor": {"omega_rad_s": 1e15, "radius_m": 1e-10, "omega0_rad_s": 1e15},
        "transition": {"upper": [1, 1], "lower": [0, 0]}
    }"#;
    assert_eq!(run_config("drfs", resonant, &[]).0.status.code(), Some(3));

    let degenerate = COULOMB_SWEEP.replace(r#""to": 1e12"#, r#""to": 1e10"#);
    assert_eq!(run_config("sweep", &degenerate, &[]).0.status.code(), Some(2));

    let unknown = COULOMB_SWEEP.replace(r#""Z": 1"#, r#""Z": 1, "mass_kg": 1"#);
    let (out, _dir) = run_config("drfs", &unknown, &[]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("mass_kg") && err.contains("line 3"), "{err}");

    assert_eq!(run(&["explode", "--config", "x.json"], None).status.code(), Some(2));
    assert_eq!(
        run(&["drfs", "--config", "/nonexistent/config.json"], None)
            .status
            .code(),
        Some(2)
    );

    let dir = tempfile::tempdir().unwrap();
    let config = write(dir.path(), "c.json", COULOMB_SWEEP);
    let bad = run(&["sweep", "--config", config.to_str().unwrap()], Some("many"));
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn failed_runs_leave_no_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("out.csv");
    let degenerate = COULOMB_SWEEP.replace(r#""to": 1e12"#, r#""to": 1e10"#);
    let config = write(dir.path(), "c.json", &degenerate);
    let out = run(
        &[
            "sweep",
            "--config",
            config.to_str().unwrap(),
            "--out",
            out_path.to_str().unwrap(),
        ],
        None,
    );
    assert_eq!(out.status.code(), Some(2));
    assert!(!out_path.exists());
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);

    let good = write(dir.path(), "g.json", COULOMB_SWEEP);
    let out = run(
        &[
            "sweep",
            "--config",
            good.to_str().unwrap(),
            "--out",
            out_path.to_str().unwrap(),
        ],
        None,
    );
    assert!(out.status.success());
    assert!(std::fs::read_to_string(&out_path).unwrap().starts_with("axis_value,"));
}
