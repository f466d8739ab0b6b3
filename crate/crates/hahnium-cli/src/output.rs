//! JSON-lines and CSV emission of result records.

use std::io::Write;

use serde_json::{Map, Value};

use crate::config::OutputFormat;
use crate::error::CliError;

pub const SCHEMA_VERSION: u32 = 1;

/// One output row: the inputs that produced it, the computed values, a unit label
/// and the evaluation method.
#[derive(Debug, Clone, PartialEq)]
pub struct Record {
    pub command: &'static str,
    pub inputs: Vec<(&'static str, Value)>,
    pub values: Vec<(&'static str, Value)>,
    pub unit: String,
    pub method: String,
}

impl Record {
    pub fn new(command: &'static str, unit: impl Into<String>, method: impl Into<String>) -> Self {
        Record {
            command,
            inputs: Vec::new(),
            values: Vec::new(),
            unit: unit.into(),
            method: method.into(),
        }
    }

    pub fn input(mut self, key: &'static str, v: impl Into<Value>) -> Self {
        self.inputs.push((key, v.into()));
        self
    }

    pub fn value(mut self, key: &'static str, v: impl Into<Value>) -> Self {
        self.values.push((key, v.into()));
        self
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("schema_version".into(), SCHEMA_VERSION.into());
        m.insert("command".into(), self.command.into());
        let inputs: Map<String, Value> =
            self.inputs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
        m.insert("inputs".into(), Value::Object(inputs));
        for (k, v) in &self.values {
            m.insert(k.to_string(), v.clone());
        }
        m.insert("unit".into(), self.unit.clone().into());
        m.insert("method".into(), self.method.clone().into());
        Value::Object(m)
    }

    fn header(&self) -> Vec<&str> {
        let mut h: Vec<&str> = self.inputs.iter().map(|(k, _)| *k).collect();
        h.extend(self.values.iter().map(|(k, _)| *k));
        h.extend(["unit", "method"]);
        h
    }

    fn cells(&self) -> Vec<String> {
        let cell = |v: &Value| match v {
            Value::String(s) => s.clone(),
            Value::Null => String::new(),
            other => other.to_string(),
        };
        let mut c: Vec<String> = self.inputs.iter().map(|(_, v)| cell(v)).collect();
        c.extend(self.values.iter().map(|(_, v)| cell(v)));
        c.push(self.unit.clone());
        c.push(self.method.clone());
        c
    }
}

/// JSON value for a float; non-finite numbers become `null`.
pub fn num(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
}

/// Writes records as JSON lines, or as CSV with one header per change of columns.
pub fn emit<W: Write>(out: W, format: OutputFormat, records: &[Record]) -> Result<(), CliError> {
    match format {
        OutputFormat::Json => {
            let mut out = out;
            for r in records {
                serde_json::to_writer(&mut out, &r.to_json())?;
                out.write_all(b"\n")?;
            }
            out.flush()?;
        }
        OutputFormat::Csv => {
            let mut w = csv::WriterBuilder::new().flexible(true).from_writer(out);
            let mut last: Option<Vec<&str>> = None;
            for r in records {
                let h = r.header();
                if last.as_ref() != Some(&h) {
                    w.write_record(&h)?;
                    last = Some(h);
                }
                w.write_record(r.cells())?;
            }
            w.flush()?;
        }
    }
    Ok(())
}
