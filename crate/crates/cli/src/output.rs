//! Rendering: a `#` header with the normalized config, then one CSV table or
//! one JSON document.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{Map, Value};

use crate::args::Format;
use crate::Failure;

/// Normalized configuration, in a fixed key order.
pub struct Config {
    pub command: &'static str,
    pub entries: Vec<(&'static str, String)>,
}

impl Config {
    pub fn new(command: &'static str) -> Self {
        Config { command, entries: Vec::new() }
    }

    pub fn set(mut self, key: &'static str, value: impl ToString) -> Self {
        self.entries.push((key, value.to_string()));
        self
    }

    fn header(&self) -> String {
        let mut s = format!("# multmono {}", self.command);
        for (k, v) in &self.entries {
            let _ = write!(s, " {k}={v}");
        }
        s.push('\n');
        s
    }

    fn json(&self) -> Value {
        let mut m = Map::new();
        m.insert("command".into(), Value::String(self.command.into()));
        for (k, v) in &self.entries {
            m.insert((*k).into(), Value::String(v.clone()));
        }
        Value::Object(m)
    }
}

pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Table { columns: columns.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

/// Shortest round-trip form; `inf`, `-inf` and `nan` spelled out.
pub fn num(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        format!("{x:?}")
    }
}

pub fn opt(x: Option<impl ToString>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

/// Either a table for CSV or a serializable report for JSON.
pub fn render(config: &Config, format: Format, csv: impl FnOnce() -> Table, json: impl Serialize) -> Result<String, Failure> {
    match format {
        Format::Csv => {
            let t = csv();
            let mut s = config.header();
            s.push_str(&t.columns.join(","));
            s.push('\n');
            for r in &t.rows {
                s.push_str(&r.join(","));
                s.push('\n');
            }
            Ok(s)
        }
        Format::Json => {
            let mut m = Map::new();
            m.insert("config".into(), config.json());
            m.insert("result".into(), serde_json::to_value(json).map_err(|e| Failure::Runtime(format!("io: {e}")))?);
            let mut s = serde_json::to_string_pretty(&Value::Object(m)).map_err(|e| Failure::Runtime(format!("io: {e}")))?;
            s.push('\n');
            Ok(s)
        }
    }
}

/// CSV from a writer callback, under the config header.
pub fn render_raw(config: &Config, body: &[u8]) -> String {
    let mut s = config.header();
    s.push_str(&String::from_utf8_lossy(body));
    s
}
