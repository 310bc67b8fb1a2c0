use std::f64::consts::PI;
use std::fs;
use std::path::Path;
use std::process::Command;

use clap::Parser;
use serde_json::Value;
use superosc::analysis::range_f;
use superosc::signal::modulus_sq_f;
use superosc::SignalParams;
use superosc_cli::{run, Cli};
use tempfile::TempDir;

fn invoke(args: &[&str]) -> anyhow::Result<Vec<std::path::PathBuf>> {
    let cli = Cli::try_parse_from(std::iter::once("superosc").chain(args.iter().copied()))?;
    run(&cli)
}

fn path_arg(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_string()
}

fn read_csv(path: &Path) -> (Vec<String>, Vec<Vec<f64>>) {
    let text = fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines.map(|l| l.split(',').map(|v| v.parse().unwrap()).collect()).collect();
    (header, rows)
}

fn column(header: &[String], rows: &[Vec<f64>], name: &str) -> Vec<f64> {
    let j = header.iter().position(|h| h == name).unwrap();
    rows.iter().map(|r| r[j]).collect()
}

fn sidecar(path: &str) -> Value {
    serde_json::from_str(&fs::read_to_string(format!("{path}.meta.json")).unwrap()).unwrap()
}

#[test]
fn signal_columns_match_the_library() {
    let dir = TempDir::new().unwrap();
    let out = path_arg(&dir, "signal.csv");
    invoke(&["signal", "--n", "16", "--out", &out]).unwrap();
    let (header, rows) = read_csv(Path::new(&out));
    assert_eq!(header, superosc_cli::commands::SIGNAL_COLUMNS);
    assert_eq!(rows.len(), 2001);
    assert_eq!((rows[0][0], rows[2000][0]), (-40.0, 40.0));
    let params = SignalParams::with_ratio(16, 2.0, 1.0).unwrap();
    for row in &rows {
        let expected = modulus_sq_f(&params, row[0]).unwrap();
        assert!((row[1] - expected).abs() <= 1e-15 * expected.max(1e-300));
        assert!((row[2].hypot(row[3]).powi(2) - row[1]).abs() < 1e-12 * row[1].max(1e-300));
    }
    let meta = sidecar(&out);
    assert_eq!(meta["command"], "signal");
    assert_eq!(meta["parameters"]["n"], 16);
    assert_eq!(meta["columns"].as_array().unwrap().len(), header.len());
    assert_eq!(meta["diagnostics"]["overflowed_rows"], 0);
}

#[test]
fn real_part_oscillates_at_the_target_frequency() {
    let dir = TempDir::new().unwrap();
    let out = path_arg(&dir, "re.csv");
    let edge = range_f(&SignalParams::with_ratio(128, 2.0, 1.0).unwrap(), 0.1).unwrap();
    invoke(&[
        "signal",
        "--n",
        "128",
        "--grid-min",
        &(-edge).to_string(),
        "--grid-max",
        &edge.to_string(),
        "--grid-count",
        "20001",
        "--out",
        &out,
    ])
    .unwrap();
    let (header, rows) = read_csv(Path::new(&out));
    let t = column(&header, &rows, "omega0_t");
    let re = column(&header, &rows, "re_f");
    let crossings: Vec<f64> = (1..t.len())
        .filter(|&i| re[i - 1].signum() != re[i].signum())
        .map(|i| t[i - 1] - re[i - 1] * (t[i] - t[i - 1]) / (re[i] - re[i - 1]))
        .collect();
    assert!(crossings.len() > 10);
    for w in crossings.windows(2) {
        let spacing = w[1] - w[0];
        assert!((spacing / (PI / 2.0) - 1.0).abs() < 0.05, "spacing {spacing}");
    }
}

#[test]
fn overflow_is_flagged_not_fatal() {
    let dir = TempDir::new().unwrap();
    let out = path_arg(&dir, "undamped.csv");
    invoke(&[
        "signal", "--n", "1024", "--alpha", "0", "--grid-min", "1600", "--grid-max", "1620",
        "--grid-count", "3", "--out", &out,
    ])
    .unwrap();
    // |g|^2 = 4^1024 at w0 t = 512 pi
    assert_eq!(sidecar(&out)["diagnostics"]["overflowed_rows"], 3);
    let text = fs::read_to_string(&out).unwrap();
    assert!(text.lines().skip(1).all(|l| l.contains("inf")), "{text}");
}

#[test]
fn spectrum_routes_agree_in_the_output_file() {
    let dir = TempDir::new().unwrap();
    let out = path_arg(&dir, "spectrum.csv");
    invoke(&["spectrum", "--n", "16", "--grid-count", "141", "--band", "-1", "1", "--out", &out]).unwrap();
    let (header, rows) = read_csv(Path::new(&out));
    assert_eq!(header, ["omega_over_omega0", "quadrature", "discrete", "gaussian_sum", "airy"]);
    let q = column(&header, &rows, "quadrature");
    let scale = q.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    for name in ["discrete", "gaussian_sum"] {
        for (a, b) in q.iter().zip(column(&header, &rows, name)) {
            assert!((a - b).abs() < 1e-6 * scale, "{name}");
        }
    }
    let meta = sidecar(&out);
    assert_eq!(meta["precision_policy"]["required_bits"], 282);
    let fraction = meta["diagnostics"]["band"]["energy_fraction"]["quadrature"].as_f64().unwrap();
    assert!(fraction > 0.0 && fraction < 0.05, "{fraction}");
    let scale = meta["diagnostics"]["airy_fitted_scale"].as_f64().unwrap();
    assert!(scale.is_finite() && scale > 0.0);
    assert_eq!(meta["convention"], superosc::spectrum::CONVENTION);
}

#[test]
fn high_order_peak_sits_just_below_the_target() {
    let dir = TempDir::new().unwrap();
    let out = path_arg(&dir, "peak.json");
    invoke(&[
        "spectrum", "--n", "1024", "--method", "quadrature", "--grid-min", "0", "--grid-max", "3",
        "--grid-count", "3001", "--format", "json", "--out", &out,
    ])
    .unwrap();
    let doc: Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(doc["columns"][1], "quadrature");
    assert_eq!(doc["rows"].as_array().unwrap().len(), 3001);
    let peak = sidecar(&out)["diagnostics"]["quadrature"]["peak_location"].as_f64().unwrap();
    assert!(peak > 1.9 && peak < 2.0, "{peak}");
}

#[test]
fn band_outside_the_grid_is_an_error() {
    let dir = TempDir::new().unwrap();
    let out = path_arg(&dir, "s.csv");
    let err = invoke(&["spectrum", "--method", "airy", "--band", "5", "6", "--out", &out]).unwrap_err();
    assert!(format!("{err:#}").contains("does not lie within the grid"), "{err:#}");
}

#[test]
fn yield_sweep_is_monotone_and_echoes_the_window() {
    let dir = TempDir::new().unwrap();
    let out = path_arg(&dir, "yield.json");
    invoke(&["yield", "--n", "16,128,1024", "--delta", "0.1", "--out", &out]).unwrap();
    let reports: Vec<Value> = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    let yields: Vec<f64> = reports.iter().map(|r| r["yield_value"].as_f64().unwrap()).collect();
    assert!(yields.windows(2).all(|w| w[1] > w[0]), "{yields:?}");
    let w0t = reports[0]["omega0_t_range"].as_f64().unwrap();
    assert!((w0t - (409.6f64 / 5.5).powf(0.25)).abs() < 1e-12);

    let csv = path_arg(&dir, "yield.csv");
    invoke(&["yield", "--delta", "0.05,0.1,0.5,0.999", "--format", "csv", "--out", &csv]).unwrap();
    let (header, rows) = read_csv(Path::new(&csv));
    let by_delta = column(&header, &rows, "yield_value");
    assert!(by_delta.windows(2).all(|w| w[1] > w[0]), "{by_delta:?}");
    // at delta = 0.999 about a tenth of the energy still sits in the slowly decaying tails
    assert!(by_delta[3] > 0.85 && by_delta[3] < 1.0, "{by_delta:?}");
    assert!(by_delta[3] > by_delta[1] + 0.25);
}

#[test]
fn undamped_yield_is_refused() {
    let dir = TempDir::new().unwrap();
    let err = invoke(&["yield", "--alpha", "0", "--out", &path_arg(&dir, "y.json")]).unwrap_err();
    assert!(format!("{err:#}").contains("not integrable"), "{err:#}");
}

#[test]
fn invalid_parameters_name_the_invariant() {
    let dir = TempDir::new().unwrap();
    let out = path_arg(&dir, "s.csv");
    let err = invoke(&["signal", "--ratio", "0.5", "--out", &out]).unwrap_err();
    assert!(format!("{err:#}").contains("omega1 must exceed omega0"), "{err:#}");
    let err = invoke(&["signal", "--n", "0", "--out", &out]).unwrap_err();
    assert!(format!("{err:#}").contains("order n must be positive"), "{err:#}");
    assert!(!Path::new(&out).exists());
}

#[test]
fn unwritable_destination_is_reported() {
    let dir = TempDir::new().unwrap();
    let out = path_arg(&dir, "missing/sub/s.csv");
    let err = invoke(&["signal", "--grid-count", "3", "--out", &out]).unwrap_err();
    assert!(format!("{err:#}").contains("cannot write"), "{err:#}");
}

#[test]
fn figure_one_is_deterministic_and_starts_at_one() {
    let (a, b) = (TempDir::new().unwrap(), TempDir::new().unwrap());
    let written = invoke(&["figures", "--figure", "1", "--out", a.path().to_str().unwrap()]).unwrap();
    invoke(&["figures", "--figure", "1", "--out", b.path().to_str().unwrap()]).unwrap();
    assert_eq!(written.len(), 4);
    for path in &written {
        let name = path.file_name().unwrap();
        assert_eq!(fs::read(path).unwrap(), fs::read(b.path().join(name)).unwrap());
        if path.extension().is_some_and(|e| e == "csv") {
            assert!(superosc_cli::output::sidecar_path(path).exists());
            let (_, rows) = read_csv(path);
            let centre = &rows[rows.len() / 2];
            assert_eq!(centre[0], 0.0);
            assert_eq!(centre[1], 1.0);
        }
    }
}

#[test]
fn unknown_figure_is_rejected() {
    let dir = TempDir::new().unwrap();
    let err = invoke(&["figures", "--figure", "4", "--out", dir.path().to_str().unwrap()]).unwrap_err();
    assert!(err.to_string().contains("unknown figure id"));
}

#[test]
fn binary_exits_non_zero_with_a_message() {
    let dir = TempDir::new().unwrap();
    let output = Command::new(env!("CARGO_BIN_EXE_superosc"))
        .args(["yield", "--alpha", "0", "--out", &path_arg(&dir, "y.json")])
        .output()
        .unwrap();
    assert!(!output.status.success());
    assert!(String::from_utf8_lossy(&output.stderr).starts_with("error:"));

    let out = path_arg(&dir, "ok.csv");
    let output = Command::new(env!("CARGO_BIN_EXE_superosc"))
        .args(["signal", "--grid-count", "5", "--out", &out])
        .output()
        .unwrap();
    assert!(output.status.success());
    assert!(String::from_utf8_lossy(&output.stdout).contains("ok.csv"));
}
