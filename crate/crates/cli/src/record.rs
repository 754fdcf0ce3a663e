//! Tabular output shared by every command, rendered as CSV or as a JSON
//! `OutputRecord`.

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use zetakit::ComplexVal;

use crate::literal::format_real;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Text(String),
    Int(i64),
    /// None renders as an empty CSV field / JSON null.
    Real(Option<f64>),
    Complex(ComplexVal),
}

impl Cell {
    pub fn real(x: f64) -> Self {
        Cell::Real(Some(x))
    }

    fn csv_fields(&self, out: &mut Vec<String>) {
        match self {
            Cell::Text(t) => out.push(t.clone()),
            Cell::Int(k) => out.push(k.to_string()),
            Cell::Real(None) => out.push(String::new()),
            Cell::Real(Some(x)) => out.push(format_real(*x)),
            Cell::Complex(z) => {
                out.push(format_real(z.re));
                out.push(format_real(z.im));
            }
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Text(t) => Value::String(t.clone()),
            Cell::Int(k) => Value::from(*k),
            Cell::Real(x) => x.map_or(Value::Null, json_real),
            Cell::Complex(z) => {
                let mut m = Map::new();
                m.insert("re".into(), json_real(z.re));
                m.insert("im".into(), json_real(z.im));
                Value::Object(m)
            }
        }
    }

    fn is_complex(&self) -> bool {
        matches!(self, Cell::Complex(_))
    }
}

// serde_json writes the shortest string that parses back to the same double
fn json_real(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub schema_version: String,
    pub command: String,
    pub inputs: Map<String, Value>,
    pub rows: Vec<Map<String, Value>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub summary: Option<Map<String, Value>>,
}

/// One named table plus the inputs that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: String,
    pub inputs: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    pub summary: Vec<(String, Cell)>,
}

impl Report {
    pub fn new(command: &str, columns: &[&str]) -> Self {
        Report {
            command: command.into(),
            inputs: Vec::new(),
            columns: columns.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
            summary: Vec::new(),
        }
    }

    pub fn input(mut self, name: &str, value: impl Into<String>) -> Self {
        self.inputs.push((name.into(), value.into()));
        self
    }

    pub fn push_row(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_record(&self) -> OutputRecord {
        let inputs = self.inputs.iter().map(|(k, v)| (k.clone(), Value::String(v.clone()))).collect();
        let rows = self
            .rows
            .iter()
            .map(|row| self.columns.iter().cloned().zip(row.iter().map(Cell::json)).collect())
            .collect();
        let summary = (!self.summary.is_empty())
            .then(|| self.summary.iter().map(|(k, v)| (k.clone(), v.json())).collect());
        OutputRecord {
            schema_version: SCHEMA_VERSION.into(),
            command: self.command.clone(),
            inputs,
            rows,
            summary,
        }
    }

    /// Header plus rows; complex columns split into `name_re,name_im`.
    pub fn rows_csv(&self) -> Result<String, csv::Error> {
        let complex: Vec<bool> = (0..self.columns.len())
            .map(|j| self.rows.first().is_some_and(|r| r[j].is_complex()))
            .collect();
        let header = split_header(self.columns.iter().map(String::as_str), &complex);
        let body = self.rows.iter().map(|row| {
            let mut f = Vec::new();
            row.iter().for_each(|cell| cell.csv_fields(&mut f));
            f
        });
        write_csv(header, body)
    }

    /// The summary as a one-row table.
    pub fn summary_csv(&self) -> Result<String, csv::Error> {
        let complex: Vec<bool> = self.summary.iter().map(|(_, v)| v.is_complex()).collect();
        let header = split_header(self.summary.iter().map(|(k, _)| k.as_str()), &complex);
        let mut f = Vec::new();
        self.summary.iter().for_each(|(_, cell)| cell.csv_fields(&mut f));
        write_csv(header, std::iter::once(f))
    }
}

fn split_header<'a>(names: impl Iterator<Item = &'a str>, complex: &[bool]) -> Vec<String> {
    let mut out = Vec::new();
    for (name, &cx) in names.zip(complex) {
        if cx {
            out.push(format!("{name}_re"));
            out.push(format!("{name}_im"));
        } else {
            out.push(name.to_string());
        }
    }
    out
}

fn write_csv(header: Vec<String>, rows: impl Iterator<Item = Vec<String>>) -> Result<String, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&header)?;
    for r in rows {
        w.write_record(&r)?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}
