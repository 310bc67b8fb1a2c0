use std::f64::consts::PI;

use super::SpectrumGrid;
use crate::error::{Error, Result};

fn trapezoid(xs: &[f64], ys: &[f64]) -> f64 {
    xs.windows(2)
        .zip(ys.windows(2))
        .map(|(x, y)| 0.5 * (x[1] - x[0]) * (y[0] + y[1]))
        .sum()
}

/// Linear interpolation of `ys` at `x`, which must lie inside `xs`.
fn interpolate(xs: &[f64], ys: &[f64], x: f64) -> f64 {
    let i = xs.partition_point(|&v| v <= x).clamp(1, xs.len() - 1);
    let (x0, x1) = (xs[i - 1], xs[i]);
    let s = (x - x0) / (x1 - x0);
    ys[i - 1] + s * (ys[i] - ys[i - 1])
}

/// `int_low^high F^2 dw / int F^2 dw` by the trapezoid rule, with the squared
/// spectrum interpolated linearly at the band edges.
pub fn band_energy_fraction(grid: &SpectrumGrid, low: f64, high: f64) -> Result<f64> {
    let xs = grid.omegas();
    let (min, max) = (xs[0], xs[xs.len() - 1]);
    if !(low <= high) || low < min || high > max {
        return Err(Error::BandOutsideGrid { low, high, min, max });
    }
    if low == high {
        return Ok(0.0);
    }
    let power: Vec<f64> = grid.values().iter().map(|v| v * v).collect();
    let total = trapezoid(xs, &power);
    if total == 0.0 {
        return Err(Error::InvalidGrid("spectrum vanishes on the grid".into()));
    }
    let mut bx = vec![low];
    let mut by = vec![interpolate(xs, &power, low)];
    for (x, p) in xs.iter().zip(&power) {
        if *x > low && *x < high {
            bx.push(*x);
            by.push(*p);
        }
    }
    bx.push(high);
    by.push(interpolate(xs, &power, high));
    Ok((trapezoid(&bx, &by) / total).clamp(0.0, 1.0))
}

/// `2pi int F^2 dw` with `F` sampled on a grid in units of `omega0`; by
/// Parseval this equals `int |f|^2 dt`.
pub fn spectral_energy(grid: &SpectrumGrid, omega0: f64) -> f64 {
    let power: Vec<f64> = grid.values().iter().map(|v| v * v).collect();
    2.0 * PI * omega0 * trapezoid(grid.omegas(), &power)
}

/// Vertex of the parabola through three points, or the middle abscissa when
/// they are collinear.
fn parabola_vertex(x: [f64; 3], y: [f64; 3]) -> f64 {
    let d1 = (y[1] - y[0]) / (x[1] - x[0]);
    let d2 = (y[2] - y[1]) / (x[2] - x[1]);
    let curvature = (d2 - d1) / (x[2] - x[0]);
    if curvature == 0.0 {
        return x[1];
    }
    0.5 * (x[0] + x[1]) - d1 / (2.0 * curvature)
}

fn refine(grid: &SpectrumGrid, i: usize, magnitude: bool) -> f64 {
    let xs = grid.omegas();
    if i == 0 || i + 1 >= xs.len() {
        return xs[i];
    }
    let v = |j: usize| if magnitude { grid.values()[j].abs() } else { grid.values()[j] };
    parabola_vertex([xs[i - 1], xs[i], xs[i + 1]], [v(i - 1), v(i), v(i + 1)])
}

fn peak_index(grid: &SpectrumGrid) -> usize {
    grid.values()
        .iter()
        .enumerate()
        .fold(0, |best, (i, v)| if v.abs() > grid.values()[best].abs() { i } else { best })
}

/// Abscissa of the largest `|F|`, refined by a three-point parabola.
pub fn peak_location(grid: &SpectrumGrid) -> f64 {
    refine(grid, peak_index(grid), true)
}

/// Full width at half of the peak `|F|`, with linear interpolation at both
/// crossings.
pub fn fwhm(grid: &SpectrumGrid) -> Result<f64> {
    let xs = grid.omegas();
    let ys: Vec<f64> = grid.values().iter().map(|v| v.abs()).collect();
    let p = peak_index(grid);
    let half = 0.5 * ys[p];
    let crossing = |i: usize, j: usize| xs[i] + (half - ys[i]) * (xs[j] - xs[i]) / (ys[j] - ys[i]);
    let left = (0..p)
        .rev()
        .find(|&i| ys[i] < half)
        .map(|i| crossing(i, i + 1));
    let right = (p + 1..ys.len()).find(|&i| ys[i] < half).map(|i| crossing(i - 1, i));
    match (left, right) {
        (Some(l), Some(r)) => Ok(r - l),
        _ => Err(Error::InvalidGrid("peak does not fall to half height inside the grid".into())),
    }
}

/// Number of sign changes of `F` strictly inside `(low, high)`; exact zeros are skipped.
pub fn sign_changes(grid: &SpectrumGrid, low: f64, high: f64) -> usize {
    let mut last = 0.0f64;
    let mut count = 0;
    for (w, v) in grid.omegas().iter().zip(grid.values()) {
        if *w <= low || *w >= high || *v == 0.0 {
            continue;
        }
        if last != 0.0 && last.signum() != v.signum() {
            count += 1;
        }
        last = *v;
    }
    count
}

/// Position of the first local extremum met when walking down in frequency
/// from the main peak, refined by a three-point parabola.
pub fn first_extremum_below_peak(grid: &SpectrumGrid) -> Result<f64> {
    let ys = grid.values();
    let p = peak_index(grid);
    (1..p)
        .rev()
        .find(|&i| (ys[i] - ys[i - 1]) * (ys[i + 1] - ys[i]) <= 0.0)
        .map(|i| refine(grid, i, false))
        .ok_or_else(|| Error::InvalidGrid("no extremum below the peak inside the grid".into()))
}
