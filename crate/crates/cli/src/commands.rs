use std::path::PathBuf;

use anyhow::{bail, Context};
use serde_json::{json, Map, Value};
use superosc::analysis::{yield_delta, YieldReport, ENERGY_REL_TOL};
use superosc::signal::{eval_f, local_frequency, modulus_sq_f};
use superosc::spectrum::{
    band_energy_fraction, compute_spectrum, fit_scale, fwhm, linspace, peak_location, Method, SpectrumGrid,
    SpectrumOptions,
};
use superosc::{PrecisionPolicy, SignalParams};

use crate::output::{write_file, write_sidecar, write_table, Clock, Metadata, Table};
use crate::{Format, SignalArgs, SpectrumArgs, YieldArgs};

pub const SIGNAL_COLUMNS: [&str; 7] = [
    "omega0_t",
    "modulus_sq",
    "re_f",
    "im_f",
    "log_mag",
    "phase",
    "local_frequency",
];

/// Signal samples at `omega0_t` (units of `1/omega0`). Entries whose linear
/// value overflows f64 are written as `inf` / `NaN`; the second element counts them.
pub fn signal_table(params: &SignalParams, omega0_t: &[f64]) -> (Table, usize) {
    let mut table = Table::new(&SIGNAL_COLUMNS);
    let mut overflowed = 0;
    for &x in omega0_t {
        let t = x / params.omega0();
        let z = eval_f(params, t);
        let (modulus_sq, re, im) = match (modulus_sq_f(params, t), z.to_complex()) {
            (Ok(m), Ok(c)) => (m, c.re, c.im),
            (m, _) => {
                overflowed += 1;
                (m.unwrap_or(f64::INFINITY), f64::NAN, f64::NAN)
            }
        };
        table.push(vec![
            x,
            modulus_sq,
            re,
            im,
            z.log_mag,
            z.phase,
            local_frequency(params, t) / params.omega0(),
        ]);
    }
    (table, overflowed)
}

pub fn signal(args: &SignalArgs) -> anyhow::Result<Vec<PathBuf>> {
    let clock = Clock::start();
    let params = args.params.params()?;
    let (min, max, count) = args.grid.resolve(-40.0, 40.0, 2001);
    let xs = linspace(min, max, count)?;
    let (table, overflowed) = signal_table(&params, &xs);
    let format = args.output.format.unwrap_or(Format::Csv);
    write_table(&args.output.out, &table, format)?;
    let meta = Metadata {
        command: "signal".into(),
        arguments: serde_json::to_value(args)?,
        parameters: serde_json::to_value(params)?,
        tolerances: Value::Null,
        precision_policy: Value::Null,
        columns: table.header.clone(),
        diagnostics: json!({ "overflowed_rows": overflowed }),
    };
    write_sidecar(&args.output.out, &meta, &clock)?;
    Ok(vec![args.output.out.clone()])
}

/// Per-method peak position and width, plus the least-squares Airy scale
/// when both quadrature and Airy columns are present.
pub fn spectrum_diagnostics(grids: &[SpectrumGrid]) -> anyhow::Result<Value> {
    let mut out = Map::new();
    for g in grids {
        out.insert(
            g.method().name().to_string(),
            json!({
                "peak_location": peak_location(g),
                "fwhm": fwhm(g).ok(),
                "max_abs": g.max_abs(),
            }),
        );
    }
    let find = |m: Method| grids.iter().find(|g| g.method() == m);
    if let (Some(q), Some(a)) = (find(Method::Quadrature), find(Method::Airy)) {
        out.insert("airy_fitted_scale".into(), json!(fit_scale(q, a)?));
    }
    Ok(Value::Object(out))
}

pub fn spectrum(args: &SpectrumArgs) -> anyhow::Result<Vec<PathBuf>> {
    let clock = Clock::start();
    let params = args.params.params()?;
    let (min, max, count) = args.grid.resolve(-3.0, 4.0, 701);
    let omegas = linspace(min, max, count)?;
    let band = match args.band.as_deref() {
        None => None,
        Some([low, high]) => Some((*low, *high)),
        Some(_) => bail!("--band takes exactly two values"),
    };
    let options = SpectrumOptions {
        rel_tol: args.rel_tol,
        precision: args.precision_bits.map(PrecisionPolicy::new).transpose()?,
        ..SpectrumOptions::default()
    };
    let methods = args.method.methods();
    let grids = methods
        .iter()
        .map(|m| {
            compute_spectrum(&params, &omegas, *m, &options).with_context(|| format!("{} spectrum", m.name()))
        })
        .collect::<anyhow::Result<Vec<_>>>()?;

    let mut diagnostics = spectrum_diagnostics(&grids)?;
    if let Some((low, high)) = band {
        let mut fractions = Map::new();
        for g in &grids {
            let f = band_energy_fraction(g, low, high).context("band energy query")?;
            fractions.insert(g.method().name().into(), json!(f));
        }
        diagnostics["band"] = json!({ "low": low, "high": high, "energy_fraction": fractions });
    }

    let mut header = vec!["omega_over_omega0".to_string()];
    let mut columns = vec![omegas.clone()];
    for g in &grids {
        header.push(g.method().name().to_string());
        columns.push(g.values().to_vec());
    }
    let table = Table::from_columns(header, &columns);
    write_table(&args.output.out, &table, args.output.format.unwrap_or(Format::Csv))?;

    let policy = methods
        .contains(&Method::GaussianSum)
        .then(|| options.policy_for(&params))
        .map(|p| {
            json!({
                "mantissa_bits": p.mantissa_bits(),
                "required_bits": PrecisionPolicy::required_bits(params.n(), params.ratio()),
            })
        })
        .unwrap_or(Value::Null);
    let meta = Metadata {
        command: "spectrum".into(),
        arguments: serde_json::to_value(args)?,
        parameters: serde_json::to_value(params)?,
        tolerances: json!({ "quadrature_rel_tol": options.rel_tol }),
        precision_policy: policy,
        columns: table.header.clone(),
        diagnostics,
    };
    write_sidecar(&args.output.out, &meta, &clock)?;
    Ok(vec![args.output.out.clone()])
}

pub const YIELD_COLUMNS: [&str; 9] = [
    "n",
    "ratio",
    "alpha",
    "delta",
    "t_range",
    "omega0_t_range",
    "useful_energy",
    "total_energy",
    "yield_value",
];

pub fn yield_reports(args: &YieldArgs) -> anyhow::Result<Vec<YieldReport>> {
    let mut reports = Vec::new();
    for &n in &args.n {
        let params = SignalParams::new(n, args.omega0, args.ratio * args.omega0, args.alpha)?;
        for &delta in &args.delta {
            reports.push(yield_delta(&params, delta).with_context(|| format!("yield for n = {n}, delta = {delta}"))?);
        }
    }
    Ok(reports)
}

pub fn yield_sweep(args: &YieldArgs) -> anyhow::Result<Vec<PathBuf>> {
    let clock = Clock::start();
    let reports = yield_reports(args)?;
    let path = &args.output.out;
    match args.output.format.unwrap_or(Format::Json) {
        Format::Json => write_file(path, &(serde_json::to_string_pretty(&reports)? + "\n"))?,
        Format::Csv => {
            let mut table = Table::new(&YIELD_COLUMNS);
            for r in &reports {
                table.push(vec![
                    r.n as f64,
                    r.ratio,
                    r.alpha,
                    r.delta,
                    r.t_range,
                    r.omega0_t_range,
                    r.useful_energy,
                    r.total_energy,
                    r.yield_value,
                ]);
            }
            write_table(path, &table, Format::Csv)?;
        }
    }
    let meta = Metadata {
        command: "yield".into(),
        arguments: serde_json::to_value(args)?,
        parameters: json!({ "n": args.n, "ratio": args.ratio, "alpha": args.alpha, "omega0": args.omega0 }),
        tolerances: json!({ "energy_rel_tol": ENERGY_REL_TOL }),
        precision_policy: Value::Null,
        columns: YIELD_COLUMNS.iter().map(|s| s.to_string()).collect(),
        diagnostics: json!({ "reports": reports.len() }),
    };
    write_sidecar(path, &meta, &clock)?;
    Ok(vec![path.clone()])
}
