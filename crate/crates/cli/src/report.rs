//! JSON and CSV emission.

use std::collections::BTreeSet;
use std::io::Write;
use std::path::PathBuf;

use clap::ValueEnum;
use serde_json::{json, Map, Value};

use qhyper::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

pub struct Output {
    format: Format,
    path: Option<PathBuf>,
}

pub fn error_value(err: &Error) -> Value {
    let mut m = Map::new();
    m.insert("kind".into(), json!(err.kind()));
    m.insert("message".into(), json!(err.to_string()));
    if let Error::Condition { name, .. } = err {
        m.insert("condition".into(), json!(name));
    }
    Value::Object(m)
}

pub fn error_record(err: &Error) -> Value {
    json!({ "error": error_value(err) })
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(cell).collect::<Vec<_>>().join(";"),
        Value::Object(_) => v.to_string(),
        other => other.to_string(),
    }
}

/// Flattens nested objects into `outer.inner` columns.
fn flatten(prefix: &str, v: &Value, out: &mut Map<String, Value>) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, x, out);
            }
        }
        other => {
            out.insert(prefix.to_string(), other.clone());
        }
    }
}

impl Output {
    pub fn new(format: Format, path: Option<PathBuf>) -> Self {
        Self { format, path }
    }

    fn render(&self, records: Vec<Value>, meta: Map<String, Value>) -> Result<Vec<u8>, String> {
        match self.format {
            Format::Json => {
                let doc = json!({ "records": records, "meta": meta });
                let mut s = serde_json::to_vec_pretty(&doc).map_err(|e| e.to_string())?;
                s.push(b'\n');
                Ok(s)
            }
            Format::Csv => {
                let rows: Vec<Map<String, Value>> = records
                    .iter()
                    .map(|r| {
                        let mut m = Map::new();
                        flatten("", r, &mut m);
                        m
                    })
                    .collect();
                let header: BTreeSet<&String> = rows.iter().flat_map(|r| r.keys()).collect();
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(header.iter().map(|s| s.as_str())).map_err(|e| e.to_string())?;
                for r in &rows {
                    w.write_record(header.iter().map(|k| r.get(*k).map(cell).unwrap_or_default()))
                        .map_err(|e| e.to_string())?;
                }
                w.into_inner().map_err(|e| e.to_string())
            }
        }
    }

    pub fn emit(&self, records: Vec<Value>, meta: Map<String, Value>) -> Result<(), String> {
        let bytes = self.render(records, meta)?;
        match &self.path {
            Some(p) => std::fs::write(p, bytes).map_err(|e| format!("cannot write {}: {e}", p.display())),
            None => std::io::stdout().write_all(&bytes).map_err(|e| e.to_string()),
        }
    }
}
