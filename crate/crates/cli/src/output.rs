use std::fs::File;
use std::io::{self, Write};

use anyhow::{Context, Result};
use serde_json::{json, Map, Value};

use crate::args::{Format, OutputArgs};

pub const SCHEMA: u32 = 1;

/// A table plus run metadata. `csv_constants` names meta entries that are
/// repeated as trailing columns when writing CSV, which has no header object.
pub struct Report {
    pub meta: Map<String, Value>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Value>>,
    pub csv_constants: Vec<&'static str>,
}

impl Report {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Self { meta: Map::new(), columns, rows: Vec::new(), csv_constants: Vec::new() }
    }

    pub fn meta(&mut self, key: &str, value: impl Into<Value>) {
        self.meta.insert(key.to_string(), value.into());
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> =
                    self.columns.iter().zip(row).map(|(c, v)| (c.to_string(), v.clone())).collect();
                Value::Object(obj)
            })
            .collect();
        json!({ "schema": SCHEMA, "meta": self.meta, "rows": rows })
    }

    pub fn write_csv(&self, out: impl Write) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let constants: Vec<String> = self
            .csv_constants
            .iter()
            .map(|k| self.meta.get(*k).map(cell).unwrap_or_default())
            .collect();
        w.write_record(self.columns.iter().chain(&self.csv_constants))?;
        if self.rows.is_empty() && !constants.is_empty() {
            let blanks = self.columns.iter().map(|_| String::new());
            w.write_record(blanks.chain(constants.iter().cloned()))?;
        }
        for row in &self.rows {
            w.write_record(row.iter().map(cell).chain(constants.iter().cloned()))?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn render(&self, format: Format) -> Result<Vec<u8>> {
        let mut buf = Vec::new();
        match format {
            Format::Json => {
                serde_json::to_writer_pretty(&mut buf, &self.to_json())?;
                buf.push(b'\n');
            }
            Format::Csv => self.write_csv(&mut buf)?,
        }
        Ok(buf)
    }

    pub fn emit(&self, args: &OutputArgs) -> Result<()> {
        let bytes = self.render(args.format)?;
        match &args.out {
            Some(path) => {
                let mut f = File::create(path).with_context(|| format!("creating {}", path.display()))?;
                f.write_all(&bytes)?;
            }
            None => {
                let mut out = io::stdout().lock();
                out.write_all(&bytes)?;
                out.flush()?;
            }
        }
        Ok(())
    }
}

/// Finite floats become JSON numbers; NaN and infinities become null.
pub fn num(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
}

pub fn opt(x: Option<f64>) -> Value {
    x.map_or(Value::Null, num)
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
