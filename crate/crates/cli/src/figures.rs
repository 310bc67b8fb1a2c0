use std::f64::consts::PI;
use std::fs;
use std::path::PathBuf;

use anyhow::{bail, Context};
use serde_json::{json, Value};
use superosc::analysis::range_f;
use superosc::spectrum::{compute_spectrum, fit_scale, linspace, Method, SpectrumOptions};
use superosc::SignalParams;

use crate::commands::{signal_table, spectrum_diagnostics};
use crate::output::{write_file, write_sidecar, write_table, Clock, Metadata, Table};
use crate::svg::{render, Panel, Series};
use crate::{FiguresArgs, Format};

pub const FIGURE_ORDERS: [u32; 3] = [16, 128, 1024];
pub const FIGURE_RATIO: f64 = 2.0;
/// Spectra are drawn on [-1, 3] omega0 with this many points.
pub const SPECTRUM_POINTS: usize = 2001;
/// The Airy scale is fitted where the model is meant to hold, |w - w1| <= this.
pub const AIRY_FIT_HALF_WIDTH: f64 = 0.5;

fn params(n: u32) -> anyhow::Result<SignalParams> {
    Ok(SignalParams::with_ratio(n, FIGURE_RATIO, 1.0)?)
}

/// Symmetric grid on `[-3 n^{3/4}, 3 n^{3/4}]` with `2 half + 1` points and an
/// exact zero in the middle.
pub fn time_grid(n: u32, half: usize) -> Vec<f64> {
    let extent = 3.0 * (n as f64).powf(0.75);
    (0..=2 * half)
        .map(|i| extent * (i as f64 - half as f64) / half as f64)
        .collect()
}

fn figure_path(dir: &std::path::Path, id: u32, n: u32) -> PathBuf {
    dir.join(format!("figure{id}_n{n}.csv"))
}

pub fn run(args: &FiguresArgs) -> anyhow::Result<Vec<PathBuf>> {
    if !(1..=3).contains(&args.figure) {
        bail!("unknown figure id {}; expected 1, 2 or 3", args.figure);
    }
    fs::create_dir_all(&args.out).with_context(|| format!("cannot create {}", args.out.display()))?;
    let mut written = Vec::new();
    let mut panels = Vec::new();
    for n in FIGURE_ORDERS {
        let clock = Clock::start();
        let p = params(n)?;
        let (table, diagnostics) = match args.figure {
            1 => modulus_table(&p)?,
            2 => real_part_table(&p)?,
            _ => spectrum_table(&p)?,
        };
        let path = figure_path(&args.out, args.figure, n);
        write_table(&path, &table, Format::Csv)?;
        let meta = Metadata {
            command: format!("figures --figure {}", args.figure),
            arguments: serde_json::to_value(args)?,
            parameters: serde_json::to_value(p)?,
            tolerances: json!({ "quadrature_rel_tol": SpectrumOptions::default().rel_tol }),
            precision_policy: Value::Null,
            columns: table.header.clone(),
            diagnostics,
        };
        write_sidecar(&path, &meta, &clock)?;
        panels.push(panel(n, &table));
        written.push(path);
    }
    let (title, x_label) = match args.figure {
        1 => ("|f_n(t)|^2, omega1/omega0 = 2", "omega0 t"),
        2 => ("Re f_n(t), omega1/omega0 = 2", "omega0 t"),
        _ => ("Fourier transform of f_n: quadrature (solid), fitted Airy (dashed)", "omega/omega0"),
    };
    let svg_path = args.out.join(format!("figure{}.svg", args.figure));
    write_file(&svg_path, &render(title, x_label, &panels))?;
    written.push(svg_path);
    Ok(written)
}

fn panel(n: u32, table: &Table) -> Panel {
    let xs = table.rows.iter().map(|r| r[0]).collect();
    let names: Vec<&str> = match table.header[1].as_str() {
        "quadrature" => vec!["quadrature", "airy_fitted"],
        "modulus_sq" => vec!["modulus_sq"],
        _ => vec!["re_f"],
    };
    let series = names
        .iter()
        .map(|name| Series {
            label: name.to_string(),
            ys: table.column(name).unwrap_or_default(),
            dashed: name.starts_with("airy"),
        })
        .collect();
    Panel {
        title: format!("n = {n}"),
        xs,
        series,
    }
}

fn flat_top_diagnostics(p: &SignalParams) -> anyhow::Result<Value> {
    Ok(json!({ "omega0_t_range_delta_0.1": range_f(p, 0.1)? * p.omega0() }))
}

fn modulus_table(p: &SignalParams) -> anyhow::Result<(Table, Value)> {
    let (full, _) = signal_table(p, &time_grid(p.n(), 1000));
    let table = Table::from_columns(
        vec!["omega0_t".into(), "modulus_sq".into()],
        &[full.column("omega0_t").unwrap(), full.column("modulus_sq").unwrap()],
    );
    Ok((table, flat_top_diagnostics(p)?))
}

fn real_part_table(p: &SignalParams) -> anyhow::Result<(Table, Value)> {
    // 20 samples per period of exp(i w1 t)
    let extent = 3.0 * (p.n() as f64).powf(0.75);
    let half = (extent / (PI / (10.0 * FIGURE_RATIO))).ceil() as usize;
    let (full, _) = signal_table(p, &time_grid(p.n(), half));
    let table = Table::from_columns(
        vec!["omega0_t".into(), "re_f".into(), "im_f".into()],
        &[
            full.column("omega0_t").unwrap(),
            full.column("re_f").unwrap(),
            full.column("im_f").unwrap(),
        ],
    );
    Ok((table, flat_top_diagnostics(p)?))
}

fn spectrum_table(p: &SignalParams) -> anyhow::Result<(Table, Value)> {
    let omegas = linspace(-1.0, 3.0, SPECTRUM_POINTS)?;
    let options = SpectrumOptions::default();
    let quad = compute_spectrum(p, &omegas, Method::Quadrature, &options)?;
    let airy = compute_spectrum(p, &omegas, Method::Airy, &options)?;
    let (low, high) = (FIGURE_RATIO - AIRY_FIT_HALF_WIDTH, FIGURE_RATIO + AIRY_FIT_HALF_WIDTH);
    let scale = fit_scale(&quad.window(low, high)?, &airy.window(low, high)?)?;
    let fitted: Vec<f64> = airy.values().iter().map(|v| scale * v).collect();
    let table = Table::from_columns(
        vec![
            "omega_over_omega0".into(),
            "quadrature".into(),
            "airy".into(),
            "airy_fitted".into(),
        ],
        &[omegas, quad.values().to_vec(), airy.values().to_vec(), fitted],
    );
    let mut diagnostics = spectrum_diagnostics(&[quad, airy])?;
    diagnostics["airy_fitted_scale"] = json!(scale);
    diagnostics["airy_fit_window"] = json!([low, high]);
    Ok((table, diagnostics))
}
