//! Tabular results and their CSV / JSON encodings.

use serde_json::{json, Map, Value};

use crate::config::RunConfig;
use crate::error::CliError;

/// First line of every CSV file this tool writes.
pub const CSV_MAGIC: &str = "# wavebound-csv v1";

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Bool(bool),
    Text(String),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(v) => format_float(*v),
            Cell::Int(v) => v.to_string(),
            Cell::Bool(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(v) => json!(v),
            Cell::Int(v) => json!(v),
            Cell::Bool(v) => json!(v),
            Cell::Text(s) => json!(s),
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

/// Shortest round-trip representation; scientific outside `[1e-4, 1e15)`.
pub fn format_float(v: f64) -> String {
    let a = v.abs();
    if v == 0.0 || (1e-4..1e15).contains(&a) || !v.is_finite() {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: &'static str,
    /// Scalar results, written as `# key: value` lines in CSV.
    pub summary: Vec<(String, Cell)>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Report {
    pub fn new(command: &'static str, columns: Vec<&'static str>) -> Self {
        Self {
            command,
            summary: Vec::new(),
            columns,
            rows: Vec::new(),
        }
    }

    pub fn note(&mut self, key: impl Into<String>, value: impl Into<Cell>) {
        self.summary.push((key.into(), value.into()));
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(CSV_MAGIC);
        out.push('\n');
        out.push_str(&format!("# command: {}\n", self.command));
        out.push_str(&format!("# version: {}\n", env!("CARGO_PKG_VERSION")));
        for (k, v) in &self.summary {
            out.push_str(&format!("# {k}: {}\n", v.csv()));
        }
        if !self.columns.is_empty() {
            out.push_str(&self.columns.join(","));
            out.push('\n');
        }
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::csv).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    /// `{config, results, provenance}`; no timestamps, so identical runs give
    /// identical bytes.
    pub fn to_json(&self, config: &RunConfig) -> String {
        let summary: Map<String, Value> = self.summary.iter().map(|(k, v)| (k.clone(), v.json())).collect();
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                Value::Object(
                    self.columns
                        .iter()
                        .zip(r)
                        .map(|(c, v)| (c.to_string(), v.json()))
                        .collect(),
                )
            })
            .collect();
        let doc = json!({
            "config": config,
            "results": { "summary": summary, "rows": rows },
            "provenance": { "tool": "wavebound", "command": self.command, "version": env!("CARGO_PKG_VERSION") },
        });
        let mut s = serde_json::to_string_pretty(&doc).expect("JSON values always serialize");
        s.push('\n');
        s
    }
}

/// A parsed CSV file written by [`Report::to_csv`].
#[derive(Debug, Clone, PartialEq)]
pub struct CsvTable {
    /// `# key: value` comment lines, in order.
    pub meta: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl CsvTable {
    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    pub fn meta(&self, key: &str) -> Option<&str> {
        self.meta.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    /// One column parsed as numbers.
    pub fn numbers(&self, name: &str) -> Result<Vec<f64>, CliError> {
        let i = self
            .column(name)
            .ok_or_else(|| CliError::Config(format!("no column '{name}'")))?;
        self.rows
            .iter()
            .map(|r| {
                r[i].parse()
                    .map_err(|_| CliError::Config(format!("column {name}: '{}' is not a number", r[i])))
            })
            .collect()
    }
}

pub fn read_csv(text: &str) -> Result<CsvTable, CliError> {
    let bad = |msg: String| CliError::Config(format!("csv: {msg}"));
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, l)) if l.trim_end() == CSV_MAGIC => {}
        _ => return Err(bad(format!("first line must be '{CSV_MAGIC}'"))),
    }
    let mut meta = Vec::new();
    let mut columns = None;
    let mut rows = Vec::new();
    for (n, raw) in lines {
        let line = raw.trim_end_matches('\r');
        if columns.is_none() {
            if let Some(rest) = line.strip_prefix('#') {
                let (k, v) = rest
                    .split_once(':')
                    .ok_or_else(|| bad(format!("line {}: comment without 'key: value'", n + 1)))?;
                meta.push((k.trim().to_string(), v.trim().to_string()));
                continue;
            }
            let cols: Vec<String> = line.split(',').map(|c| c.trim().to_string()).collect();
            if cols.iter().any(|c| c.is_empty()) {
                return Err(bad(format!("line {}: empty column name", n + 1)));
            }
            columns = Some(cols);
            continue;
        }
        if line.is_empty() {
            continue;
        }
        let width = columns.as_ref().map_or(0, Vec::len);
        let cells: Vec<String> = line.split(',').map(|c| c.trim().to_string()).collect();
        if cells.len() != width {
            return Err(bad(format!("line {}: {} fields, expected {width}", n + 1, cells.len())));
        }
        rows.push(cells);
    }
    // Summary-only reports carry no header line.
    Ok(CsvTable {
        meta,
        columns: columns.unwrap_or_default(),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let mut r = Report::new("spectrum", vec!["index", "eigenvalue_over_mu", "stable"]);
        r.note("lambda", 0.5);
        r.push(vec![1usize.into(), 0.8399068421936627.into(), true.into()]);
        r.push(vec![2usize.into(), 3.5e-7.into(), false.into()]);
        r
    }

    #[test]
    fn csv_round_trip() {
        let text = sample().to_csv();
        assert!(text.starts_with("# wavebound-csv v1\n"));
        let t = read_csv(&text).unwrap();
        assert_eq!(t.meta("command"), Some("spectrum"));
        assert_eq!(t.meta("lambda"), Some("0.5"));
        assert_eq!(t.numbers("eigenvalue_over_mu").unwrap(), vec![0.8399068421936627, 3.5e-7]);
        assert_eq!(t.rows[1][2], "false");
    }

    #[test]
    fn reader_rejects_bad_input() {
        assert!(read_csv("a,b\n1,2\n").is_err());
        assert!(read_csv("# wavebound-csv v1\n").unwrap().columns.is_empty());
        assert!(read_csv("# wavebound-csv v1\na,b\n1,2,3\n").is_err());
        assert!(read_csv("# wavebound-csv v1\n# no separator\na\n").is_err());
        assert!(read_csv("# wavebound-csv v1\na,,b\n").is_err());
    }

    #[test]
    fn float_formatting() {
        assert_eq!(format_float(0.25), "0.25");
        assert_eq!(format_float(0.0), "0");
        assert_eq!(format_float(1.5e-11), "1.5e-11");
        assert_eq!(format_float(-2e20), "-2e20");
    }

    #[test]
    fn json_layout() {
        let mut cfg = RunConfig::default();
        cfg.lambda = Some(0.5);
        let v: Value = serde_json::from_str(&sample().to_json(&cfg)).unwrap();
        assert_eq!(v["config"]["model"], "A");
        assert_eq!(v["results"]["rows"][0]["index"], 1);
        assert_eq!(v["results"]["summary"]["lambda"], 0.5);
        assert!(v["provenance"]["version"].is_string());
    }
}
