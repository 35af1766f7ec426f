//! Run results and their JSON and CSV encodings.

use clap::ValueEnum;
use free_meixner::Scalar;
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Named rows. The first table of an output is the plot-ready one.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub name: &'static str,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(name: &'static str, columns: &[&'static str]) -> Self {
        Self {
            name,
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        self.rows.push(row);
    }

    fn to_json(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|row| {
                    Value::Object(
                        self.columns
                            .iter()
                            .map(|c| c.to_string())
                            .zip(row.iter().cloned())
                            .collect(),
                    )
                })
                .collect(),
        )
    }
}

#[derive(Debug, Clone)]
pub struct Output {
    pub command: &'static str,
    pub params: Map<String, Value>,
    pub meta: Map<String, Value>,
    pub tables: Vec<Table>,
    pub identities: Vec<&'static str>,
}

impl Output {
    pub fn new(command: &'static str) -> Self {
        Self {
            command,
            params: Map::new(),
            meta: Map::new(),
            tables: Vec::new(),
            identities: Vec::new(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.params.insert(key.into(), value.into());
        self
    }

    pub fn meta(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.meta.insert(key.into(), value.into());
        self
    }

    pub fn to_json(&self) -> Value {
        let mut data = self.meta.clone();
        for t in &self.tables {
            data.insert(t.name.into(), t.to_json());
        }
        json!({
            "command": self.command,
            "params": self.params,
            "data": data,
            "provenance": { "identities": self.identities },
        })
    }

    /// Comment header, the first table as plain CSV, later tables as
    /// comment blocks so they never mix with the plotted rows.
    pub fn to_csv(&self) -> String {
        let mut out = format!("# command: {}\n", self.command);
        for (k, v) in &self.params {
            out.push_str(&format!("# param {k}: {}\n", cell(v)));
        }
        for (k, v) in &self.meta {
            out.push_str(&format!("# {k}: {}\n", cell(v)));
        }
        out.push_str(&format!("# identities: {}\n", self.identities.join("; ")));
        for t in self.tables.iter().skip(1) {
            out.push_str(&format!("# [{}] {}\n", t.name, t.columns.join(",")));
            for row in &t.rows {
                out.push_str(&format!("# {}\n", join_row(row)));
            }
        }
        if let Some(t) = self.tables.first() {
            out.push_str(&t.columns.join(","));
            out.push('\n');
            for row in &t.rows {
                out.push_str(&join_row(row));
                out.push('\n');
            }
        }
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                serde_json::to_string_pretty(&self.to_json()).expect("values are serializable")
                    + "\n"
            }
            Format::Csv => self.to_csv(),
        }
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        Value::Array(items) => items.iter().map(cell).collect::<Vec<_>>().join(" "),
        other => other.to_string(),
    }
}

fn join_row(row: &[Value]) -> String {
    row.iter().map(cell).collect::<Vec<_>>().join(",")
}

/// Exact scalars as `"p/q"` strings, floats as JSON numbers.
pub fn scalar<T: Scalar>(v: &T) -> Value {
    if T::EXACT {
        Value::String(v.to_string())
    } else {
        float(v.to_f64())
    }
}

pub fn float(v: f64) -> Value {
    // Avoid printing -0.
    let v = v + 0.0;
    serde_json::Number::from_f64(v).map_or_else(|| Value::String(v.to_string()), Value::Number)
}
