use std::fs;
use std::path::{Path, PathBuf};
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use anyhow::Context;
use serde::Serialize;
use serde_json::{json, Value};

use crate::Format;

/// Bumped whenever a column set or sidecar field changes meaning.
pub const SCHEMA_VERSION: u32 = 1;

/// Column-oriented numeric table with a header row.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn from_columns(header: Vec<String>, columns: &[Vec<f64>]) -> Self {
        let len = columns.first().map_or(0, |c| c.len());
        let rows = (0..len).map(|i| columns.iter().map(|c| c[i]).collect()).collect();
        Table { header, rows }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let j = self.header.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|r| r[j]).collect())
    }

    /// 17 significant digits in scientific notation.
    pub fn to_csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:.16e}")).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    /// `{"columns": [...], "rows": [[...], ...]}`; non-finite entries become null.
    pub fn to_json(&self) -> Value {
        json!({ "columns": self.header, "rows": self.rows })
    }
}

pub fn write_table(path: &Path, table: &Table, format: Format) -> anyhow::Result<()> {
    let body = match format {
        Format::Csv => table.to_csv(),
        Format::Json => serde_json::to_string_pretty(&table.to_json())? + "\n",
    };
    write_file(path, &body)
}

pub fn write_file(path: &Path, body: &str) -> anyhow::Result<()> {
    fs::write(path, body).with_context(|| format!("cannot write {}", path.display()))
}

pub fn sidecar_path(path: &Path) -> PathBuf {
    let mut name = path.as_os_str().to_owned();
    name.push(".meta.json");
    PathBuf::from(name)
}

/// Wall-clock bookkeeping for the sidecar.
pub struct Clock {
    started: SystemTime,
    timer: Instant,
}

impl Clock {
    pub fn start() -> Self {
        Clock {
            started: SystemTime::now(),
            timer: Instant::now(),
        }
    }

    fn to_json(&self) -> Value {
        let since_epoch = self.started.duration_since(UNIX_EPOCH).map_or(0.0, |d| d.as_secs_f64());
        json!({
            "started_unix_seconds": since_epoch,
            "elapsed_seconds": self.timer.elapsed().as_secs_f64(),
        })
    }
}

/// Everything needed to reproduce one output file.
#[derive(Debug, Clone, Serialize)]
pub struct Metadata {
    pub command: String,
    pub arguments: Value,
    pub parameters: Value,
    pub tolerances: Value,
    pub precision_policy: Value,
    pub columns: Vec<String>,
    pub diagnostics: Value,
}

pub fn write_sidecar(data_path: &Path, meta: &Metadata, clock: &Clock) -> anyhow::Result<()> {
    let doc = json!({
        "tool": "superosc",
        "version": env!("CARGO_PKG_VERSION"),
        "schema_version": SCHEMA_VERSION,
        "output": data_path.file_name().map(|s| s.to_string_lossy().into_owned()),
        "command": meta.command,
        "arguments": meta.arguments,
        "parameters": meta.parameters,
        "tolerances": meta.tolerances,
        "precision_policy": meta.precision_policy,
        "convention": superosc::spectrum::CONVENTION,
        "units": { "time": "1/omega0", "frequency": "omega0" },
        "columns": meta.columns,
        "diagnostics": meta.diagnostics,
        "wall_clock": clock.to_json(),
    });
    write_file(&sidecar_path(data_path), &(serde_json::to_string_pretty(&doc)? + "\n"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_has_header_and_seventeen_digits() {
        let mut t = Table::new(&["a", "b"]);
        t.push(vec![1.0 / 3.0, -2.0]);
        let csv = t.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("a,b"));
        let row = lines.next().unwrap();
        assert_eq!(row, "3.3333333333333331e-1,-2.0000000000000000e0");
        let back: f64 = row.split(',').next().unwrap().parse().unwrap();
        assert_eq!(back, 1.0 / 3.0);
    }

    #[test]
    fn sidecar_name_appends_suffix() {
        assert_eq!(sidecar_path(Path::new("/x/out.csv")), PathBuf::from("/x/out.csv.meta.json"));
    }

    #[test]
    fn columns_round_trip() {
        let t = Table::from_columns(vec!["x".into(), "y".into()], &[vec![1.0, 2.0], vec![3.0, 4.0]]);
        assert_eq!(t.rows, vec![vec![1.0, 3.0], vec![2.0, 4.0]]);
        assert_eq!(t.column("y"), Some(vec![3.0, 4.0]));
        assert_eq!(t.column("z"), None);
    }
}
