//! Run reports and their three renderings.
//!
//! A report is a JSON object with sorted keys. Floats are rounded to 10
//! significant digits before serialization, and magnitudes below
//! [`FLUSH_TO_ZERO`] are written as `0`, so identical runs produce
//! byte-identical output.

use std::io::Write;

use bellbox_core::{Event, EventProbabilities};
use clap::ValueEnum;
use serde_json::{Map, Value};

/// Round-off residue below this magnitude is reported as zero.
pub const FLUSH_TO_ZERO: f64 = 1e-15;

pub const SIGNIFICANT_DIGITS: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Table,
    Json,
    Csv,
}

/// Rounds to [`SIGNIFICANT_DIGITS`] and converts to a JSON number; non-finite
/// values become `null`.
pub fn num(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    if x.abs() < FLUSH_TO_ZERO {
        return Value::from(0.0);
    }
    let rounded: f64 = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x)
        .parse()
        .expect("formatted float parses");
    Value::from(rounded)
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Report {
    fields: Map<String, Value>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        let mut r = Report::default();
        r.set("command", command);
        r.set("version", env!("CARGO_PKG_VERSION"));
        r
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.fields.insert(key.to_string(), value.into());
        self
    }

    pub fn set_num(&mut self, key: &str, x: f64) -> &mut Self {
        self.set(key, num(x))
    }

    /// Adds `w_yy, w_yn, w_ny, w_nn` and `correlation`.
    pub fn set_probabilities(&mut self, p: &EventProbabilities) -> &mut Self {
        self.fields.extend(probability_fields(p));
        self.set_num("correlation", p.correlation())
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.fields.get(key)
    }

    pub fn to_value(&self) -> Value {
        Value::Object(self.fields.clone())
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.fields).expect("report serializes");
        s.push('\n');
        s
    }

    /// Leaf values keyed by dotted path, in key order.
    pub fn flatten(&self) -> Vec<(String, Value)> {
        let mut out = Vec::new();
        for (k, v) in &self.fields {
            flatten_into(k.clone(), v, &mut out);
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["key", "value"]).expect("in-memory write");
        for (k, v) in self.flatten() {
            w.write_record([k, scalar_text(&v)])
                .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
    }

    pub fn to_table(&self) -> String {
        let rows = self.flatten();
        let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        let mut out = String::new();
        for (k, v) in rows {
            out.push_str(&format!("{k:<width$}  {}\n", scalar_text(&v)));
        }
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Table => self.to_table(),
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
        }
    }

    pub fn write_to(&self, format: Format, mut out: impl Write) -> std::io::Result<()> {
        out.write_all(self.render(format).as_bytes())
    }
}

pub fn probability_fields(p: &EventProbabilities) -> Map<String, Value> {
    Event::ALL
        .iter()
        .map(|&e| (format!("w_{}", e.label()), num(p.get(e))))
        .collect()
}

/// Object keyed by event label (`yy`, `yn`, `ny`, `nn`).
pub fn per_event<T: Into<Value>>(values: [T; 4]) -> Value {
    let map: Map<String, Value> = Event::ALL
        .iter()
        .zip(values)
        .map(|(e, v)| (e.label().to_string(), v.into()))
        .collect();
    Value::Object(map)
}

fn flatten_into(prefix: String, v: &Value, out: &mut Vec<(String, Value)>) {
    match v {
        Value::Object(m) => {
            for (k, child) in m {
                flatten_into(format!("{prefix}.{k}"), child, out);
            }
        }
        Value::Array(items) => {
            for (i, child) in items.iter().enumerate() {
                flatten_into(format!("{prefix}.{i}"), child, out);
            }
        }
        leaf => out.push((prefix, leaf.clone())),
    }
}

/// Text form of a leaf: numbers exactly as in JSON, strings unquoted, `null`
/// as the empty string.
pub fn scalar_text(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
