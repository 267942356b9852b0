//! Report rendering. Floats are written with 17 significant digits in both
//! formats so every double survives a round trip.

use std::io::{self, Write};

use serde_json::ser::Formatter;
use serde_json::Value;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
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

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Text(v.to_string())
    }
}

/// CSV view of a result: a header and one record per point.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

pub struct Report {
    pub inputs: Value,
    pub result: Value,
    pub diagnostics: Value,
    pub table: Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

pub fn format_f64(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        v.to_string()
    }
}

struct Precise;

impl Formatter for Precise {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        writer.write_all(format_f64(value).as_bytes())
    }
}

pub fn render(report: &Report, format: Format) -> io::Result<Vec<u8>> {
    match format {
        Format::Json => {
            let doc = serde_json::json!({
                "inputs": report.inputs,
                "result": report.result,
                "diagnostics": report.diagnostics,
            });
            let mut buf = Vec::new();
            let mut ser = serde_json::Serializer::with_formatter(&mut buf, Precise);
            serde::Serialize::serialize(&doc, &mut ser).map_err(io::Error::other)?;
            buf.push(b'\n');
            Ok(buf)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&report.table.columns)?;
            for row in &report.table.rows {
                w.write_record(row.iter().map(|c| match c {
                    Cell::Num(v) => format_f64(*v),
                    Cell::Int(v) => v.to_string(),
                    Cell::Text(s) => s.clone(),
                }))?;
            }
            w.into_inner().map_err(|e| io::Error::other(e.to_string()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_round_trip() {
        for v in [0.1, 1.0 / 3.0, -2.5e-300, 6.02e23, 0.0] {
            assert_eq!(format_f64(v).parse::<f64>().unwrap(), v);
        }
    }

    #[test]
    fn json_uses_precise_floats() {
        let r = Report {
            inputs: serde_json::json!({"x": 0.1}),
            result: serde_json::json!([0.5, 3]),
            diagnostics: Value::Null,
            table: Table::default(),
        };
        let s = String::from_utf8(render(&r, Format::Json).unwrap()).unwrap();
        assert_eq!(
            s,
            "{\"diagnostics\":null,\"inputs\":{\"x\":1.0000000000000001e-1},\"result\":[5.0000000000000000e-1,3]}\n"
        );
    }
}
