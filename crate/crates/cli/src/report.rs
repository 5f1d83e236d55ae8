use std::fmt::Write as _;

use serde_json::{Map, Value};

/// Process exit status; see the README for the contract.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok = 0,
    Refuted = 1,
    InputError = 2,
    Inconclusive = 3,
}

pub struct Report {
    pub command: String,
    pub fields: Map<String, Value>,
    /// Shown in the table only; kept out of JSON so reruns are byte-identical.
    pub timing_ms: Option<f64>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            fields: Map::new(),
            timing_ms: None,
        }
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.fields.insert(key.to_string(), value.into());
        self
    }

    pub fn set_ser<T: serde::Serialize>(&mut self, key: &str, value: &T) -> &mut Self {
        let v = serde_json::to_value(value).unwrap_or(Value::Null);
        self.fields.insert(key.to_string(), v);
        self
    }

    pub fn to_json(&self) -> String {
        let mut doc = Map::new();
        doc.insert("command".into(), Value::String(self.command.clone()));
        doc.extend(self.fields.clone());
        let mut s = serde_json::to_string_pretty(&Value::Object(doc)).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_table(&self) -> String {
        let mut rows = Vec::new();
        for (k, v) in &self.fields {
            flatten(k, v, &mut rows);
        }
        if let Some(ms) = self.timing_ms {
            rows.push(("wall_time_ms".into(), format!("{ms:.3}")));
        }
        let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.command);
        for (k, v) in rows {
            let _ = writeln!(out, "  {k:<width$}  {v}");
        }
        out
    }
}

fn flatten(prefix: &str, v: &Value, rows: &mut Vec<(String, String)>) {
    match v {
        Value::Object(map) if !map.is_empty() => {
            for (k, inner) in map {
                flatten(&format!("{prefix}.{k}"), inner, rows);
            }
        }
        Value::String(s) => rows.push((prefix.to_string(), s.clone())),
        Value::Null => rows.push((prefix.to_string(), "-".into())),
        other => rows.push((prefix.to_string(), other.to_string())),
    }
}
