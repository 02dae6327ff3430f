//! Rendering of command results as JSON, CSV or an aligned text table.

use std::fmt::Write as _;
use std::io::{self, Write};
use std::path::Path;

use clap::ValueEnum;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

/// One table cell. Fidelity-like numbers print to 3 decimals in pretty mode;
/// CSV always carries the shortest round-trip representation.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Text(String),
    Num(f64),
    Sci(f64),
    Int(u64),
    Missing,
}

impl Cell {
    pub fn opt(x: Option<f64>) -> Cell {
        x.map_or(Cell::Missing, Cell::Num)
    }

    fn csv(&self) -> String {
        match self {
            Cell::Text(s) => s.clone(),
            Cell::Num(x) | Cell::Sci(x) => format!("{x}"),
            Cell::Int(n) => n.to_string(),
            Cell::Missing => String::new(),
        }
    }

    fn pretty(&self) -> String {
        match self {
            Cell::Text(s) => s.clone(),
            Cell::Num(x) => format!("{x:.3}"),
            Cell::Sci(x) => format!("{x:e}"),
            Cell::Int(n) => n.to_string(),
            Cell::Missing => "-".to_owned(),
        }
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_owned())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

#[derive(Debug, Clone, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Table { header: header.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }
}

/// A command result: the JSON document, plus a table used for CSV and
/// pretty output and optional summary lines shown above it in pretty mode.
#[derive(Debug, Clone)]
pub struct Output {
    pub json: Value,
    pub summary: Vec<(String, Cell)>,
    pub table: Table,
}

impl Output {
    pub fn render(&self, format: Format) -> io::Result<String> {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).map_err(io::Error::other)?;
                s.push('\n');
                Ok(s)
            }
            Format::Csv => self.csv(),
            Format::Pretty => Ok(self.pretty()),
        }
    }

    fn csv(&self) -> io::Result<String> {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::CRLF).from_writer(Vec::new());
        w.write_record(&self.table.header)?;
        for row in &self.table.rows {
            w.write_record(row.iter().map(Cell::csv))?;
        }
        let bytes = w.into_inner().map_err(|e| io::Error::other(e.to_string()))?;
        String::from_utf8(bytes).map_err(io::Error::other)
    }

    fn pretty(&self) -> String {
        let mut out = String::new();
        let key_width = self.summary.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        for (k, v) in &self.summary {
            let _ = writeln!(out, "{k:<key_width$}  {}", v.pretty());
        }
        if self.table.rows.is_empty() {
            return out;
        }
        if !self.summary.is_empty() {
            out.push('\n');
        }
        let cells: Vec<Vec<String>> = self.table.rows.iter().map(|r| r.iter().map(Cell::pretty).collect()).collect();
        let widths: Vec<usize> = (0..self.table.header.len())
            .map(|c| cells.iter().map(|r| r[c].len()).chain([self.table.header[c].len()]).max().unwrap_or(0))
            .collect();
        let line = |fields: &[String]| {
            let padded: Vec<String> = fields
                .iter()
                .zip(&widths)
                .enumerate()
                .map(|(i, (f, &w))| if i == 0 { format!("{f:<w$}") } else { format!("{f:>w$}") })
                .collect();
            padded.join("  ").trim_end().to_owned()
        };
        let _ = writeln!(out, "{}", line(&self.table.header));
        for r in &cells {
            let _ = writeln!(out, "{}", line(r));
        }
        out
    }
}

/// Writes to `path` if given, else to stdout.
pub fn emit(text: &str, path: Option<&Path>) -> io::Result<()> {
    match path {
        Some(p) => std::fs::write(p, text),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Output {
        let mut table = Table::new(["noise", "fidelity"]);
        table.push(vec!["BF0.7".into(), Cell::Num(0.30000000000000004)]);
        table.push(vec!["white, 0.5".into(), Cell::Missing]);
        Output { json: serde_json::json!({"a": 1}), summary: vec![("ratio".into(), Cell::Sci(1e9))], table }
    }

    #[test]
    fn csv_quotes_and_keeps_precision() {
        let s = sample().render(Format::Csv).unwrap();
        assert_eq!(s, "noise,fidelity\r\nBF0.7,0.30000000000000004\r\n\"white, 0.5\",\r\n");
    }

    #[test]
    fn pretty_rounds_to_three_decimals() {
        let s = sample().render(Format::Pretty).unwrap();
        assert!(s.contains("ratio  1e9"));
        let lines: Vec<&str> = s.lines().skip(2).collect();
        assert_eq!(lines[0], "noise       fidelity");
        assert_eq!(lines[1].split_whitespace().collect::<Vec<_>>(), ["BF0.7", "0.300"]);
        assert!(lines[2].ends_with(" -"));
        assert_eq!(lines[1].len(), lines[0].len());
    }
}
