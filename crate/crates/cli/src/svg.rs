//! Minimal stacked line plots. The CSV files are the data contract; these
//! renderings are for a quick look only.

use std::fmt::Write;

const WIDTH: f64 = 800.0;
const PANEL_HEIGHT: f64 = 240.0;
const MARGIN: f64 = 50.0;
const COLOURS: [&str; 4] = ["#1f4e9c", "#c0392b", "#2e8b57", "#7d3c98"];

pub struct Series {
    pub label: String,
    pub ys: Vec<f64>,
    pub dashed: bool,
}

pub struct Panel {
    pub title: String,
    pub xs: Vec<f64>,
    pub series: Vec<Series>,
}

fn extent<'a>(values: impl Iterator<Item = &'a f64>) -> (f64, f64) {
    let (lo, hi) = values
        .filter(|v| v.is_finite())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(*v), hi.max(*v)));
    if !(lo < hi) {
        let mid = if lo.is_finite() { lo } else { 0.0 };
        return (mid - 1.0, mid + 1.0);
    }
    (lo, hi)
}

pub fn render(title: &str, x_label: &str, panels: &[Panel]) -> String {
    let height = MARGIN + panels.len() as f64 * (PANEL_HEIGHT + MARGIN);
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{height}" viewBox="0 0 {WIDTH} {height}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(s, r#"<text x="{}" y="24" text-anchor="middle" font-size="15">{title}</text>"#, WIDTH / 2.0);

    for (k, panel) in panels.iter().enumerate() {
        let top = MARGIN + k as f64 * (PANEL_HEIGHT + MARGIN);
        let (x0, x1) = extent(panel.xs.iter());
        let (y0, y1) = extent(panel.series.iter().flat_map(|sr| sr.ys.iter()));
        let plot_w = WIDTH - 2.0 * MARGIN;
        let px = |x: f64| MARGIN + (x - x0) / (x1 - x0) * plot_w;
        let py = |y: f64| top + PANEL_HEIGHT - (y - y0) / (y1 - y0) * PANEL_HEIGHT;

        let _ = writeln!(
            s,
            r#"<rect x="{MARGIN}" y="{top}" width="{plot_w}" height="{PANEL_HEIGHT}" fill="none" stroke="black"/>"#
        );
        let _ = writeln!(s, r#"<text x="{}" y="{}">{}</text>"#, MARGIN + 6.0, top + 16.0, panel.title);
        let _ = writeln!(
            s,
            r#"<text x="{MARGIN}" y="{:.2}" >{x0:.3}</text><text x="{:.2}" y="{:.2}" text-anchor="end">{x1:.3} ({x_label})</text>"#,
            top + PANEL_HEIGHT + 16.0,
            WIDTH - MARGIN,
            top + PANEL_HEIGHT + 16.0
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{y1:.3e}</text><text x="{:.2}" y="{:.2}" text-anchor="end">{y0:.3e}</text>"#,
            MARGIN - 4.0,
            top + 10.0,
            MARGIN - 4.0,
            top + PANEL_HEIGHT
        );
        if y0 < 0.0 && y1 > 0.0 {
            let _ = writeln!(
                s,
                r##"<line x1="{MARGIN}" x2="{:.2}" y1="{:.2}" y2="{:.2}" stroke="#999" stroke-width="0.5"/>"##,
                WIDTH - MARGIN,
                py(0.0),
                py(0.0)
            );
        }
        for (j, series) in panel.series.iter().enumerate() {
            let colour = COLOURS[j % COLOURS.len()];
            let dash = if series.dashed { r#" stroke-dasharray="6 4""# } else { "" };
            let mut points = String::new();
            for (x, y) in panel.xs.iter().zip(&series.ys) {
                if y.is_finite() {
                    let _ = write!(points, "{:.2},{:.2} ", px(*x), py(*y));
                }
            }
            let _ = writeln!(
                s,
                r#"<polyline fill="none" stroke="{colour}" stroke-width="1"{dash} points="{}"/>"#,
                points.trim_end()
            );
            let _ = writeln!(
                s,
                r#"<text x="{:.2}" y="{:.2}" fill="{colour}" text-anchor="end">{}</text>"#,
                WIDTH - MARGIN - 6.0,
                top + 16.0 + 14.0 * j as f64,
                series.label
            );
        }
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_every_series_once() {
        let panel = Panel {
            title: "p".into(),
            xs: vec![0.0, 1.0, 2.0],
            series: vec![
                Series { label: "a".into(), ys: vec![0.0, 1.0, 0.5], dashed: false },
                Series { label: "b".into(), ys: vec![f64::NAN, -1.0, 0.5], dashed: true },
            ],
        };
        let svg = render("t", "x", &[panel]);
        assert!(svg.starts_with("<svg"));
        assert!(svg.trim_end().ends_with("</svg>"));
        assert_eq!(svg.matches("<polyline").count(), 2);
        assert_eq!(svg.matches("stroke-dasharray").count(), 1);
        assert!(!svg.contains("NaN"));
    }
}
