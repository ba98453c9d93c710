//! Output records: one JSON document and one flat table built from the same data.

use std::io::Write;

use serde_json::{json, Map, Value};
use smhs_core::BigInt;

use crate::config::Format;

pub const SCHEMA: u32 = 1;

/// Flat rows for CSV and the aligned text table.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(headers: &[&str]) -> Self {
        Table { headers: headers.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub json: Value,
    pub table: Table,
    /// Lines appended to the text table only.
    pub notes: Vec<String>,
}

/// Exact JSON number for a big integer.
pub fn big(x: &BigInt) -> Value {
    serde_json::from_str(&x.to_string()).expect("integers are valid JSON numbers")
}

pub fn bigs(xs: &[BigInt]) -> Value {
    Value::Array(xs.iter().map(big).collect())
}

/// A JSON object that starts with `"schema": 1`.
pub fn record(kind: &str, fields: Value) -> Value {
    let mut m = Map::new();
    m.insert("schema".into(), json!(SCHEMA));
    m.insert("kind".into(), json!(kind));
    if let Value::Object(rest) = fields {
        m.extend(rest);
    }
    Value::Object(m)
}

/// Cell text shared by CSV and table output: JSON rendering, empty for null.
pub fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

pub fn opt_cell<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(String::new, |x| x.to_string())
}

pub fn write_report(report: &Report, format: Format, out: &mut dyn Write) -> std::io::Result<()> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, &report.json)?;
            writeln!(out)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(&report.table.headers)?;
            for row in &report.table.rows {
                w.write_record(row)?;
            }
            w.flush()
        }
        Format::Table => {
            let t = &report.table;
            let mut widths: Vec<usize> = t.headers.iter().map(|h| h.len()).collect();
            for row in &t.rows {
                for (w, c) in widths.iter_mut().zip(row) {
                    *w = (*w).max(c.len());
                }
            }
            let line = |cells: &[String]| {
                cells.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect::<Vec<_>>().join("  ")
            };
            writeln!(out, "{}", line(&t.headers))?;
            for row in &t.rows {
                writeln!(out, "{}", line(row))?;
            }
            for n in &report.notes {
                writeln!(out, "{n}")?;
            }
            Ok(())
        }
    }
}
