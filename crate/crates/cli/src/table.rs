//! Numeric tables and their CSV / JSON encodings.

use std::io::Write;

use clap::ValueEnum;
use serde_json::{Map, Value};

use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// Shortest round-trip decimal; `NaN` is an empty cell, infinities `inf`/`-inf`.
pub fn format_number(v: f64) -> String {
    if v.is_nan() {
        String::new()
    } else if v.is_infinite() {
        if v > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        }
    } else {
        format!("{v}")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Self {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    /// Values of one column, in row order.
    pub fn values(&self, name: &str) -> Vec<f64> {
        let k = self
            .column(name)
            .unwrap_or_else(|| panic!("no column {name}"));
        self.rows.iter().map(|r| r[k]).collect()
    }

    pub fn write<W: Write>(&self, format: Format, out: W) -> Result<()> {
        let mut w = TableWriter::new(out, format, &self.columns)?;
        w.rows(&self.rows)?;
        w.finish()
    }
}

/// Streams rows as they are produced.
pub struct TableWriter<W: Write> {
    out: W,
    format: Format,
    columns: Vec<String>,
    written: usize,
}

impl<W: Write> TableWriter<W> {
    pub fn new(mut out: W, format: Format, columns: &[String]) -> Result<Self> {
        match format {
            Format::Csv => writeln!(out, "{}", columns.join(","))?,
            Format::Json => write!(out, "[")?,
        }
        Ok(Self {
            out,
            format,
            columns: columns.to_vec(),
            written: 0,
        })
    }

    pub fn rows(&mut self, rows: &[Vec<f64>]) -> Result<()> {
        for row in rows {
            match self.format {
                Format::Csv => {
                    let cells: Vec<String> = row.iter().map(|&v| format_number(v)).collect();
                    writeln!(self.out, "{}", cells.join(","))?;
                }
                Format::Json => {
                    let obj: Map<String, Value> = self
                        .columns
                        .iter()
                        .zip(row)
                        .map(|(c, &v)| (c.clone(), Value::from(v)))
                        .collect();
                    let sep = if self.written == 0 { "\n" } else { ",\n" };
                    write!(self.out, "{sep}{}", serde_json::to_string(&obj)?)?;
                }
            }
            self.written += 1;
        }
        Ok(())
    }

    pub fn finish(mut self) -> Result<()> {
        if self.format == Format::Json {
            writeln!(self.out, "\n]")?;
        }
        self.out.flush()?;
        Ok(())
    }
}
