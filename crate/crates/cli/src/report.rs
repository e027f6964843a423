use std::io::Write;

use clap::ValueEnum;
use dressian::bounds::Comparison;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// A command result: the JSON document plus, for commands that compare
/// observations against bounds, the comparison rows.
pub struct Output {
    pub doc: Value,
    pub comparisons: Option<Vec<Comparison>>,
}

impl Output {
    pub fn doc(doc: Value) -> Self {
        Output { doc, comparisons: None }
    }

    pub fn render(&self, format: Format) -> anyhow::Result<Vec<u8>> {
        match format {
            Format::Json => {
                let mut out = serde_json::to_vec_pretty(&self.doc)?;
                out.push(b'\n');
                Ok(out)
            }
            Format::Text => Ok(text(&self.doc).into_bytes()),
            Format::Csv => csv_bytes(self),
        }
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn text(doc: &Value) -> String {
    match doc {
        Value::Object(map) => {
            let mut out = String::new();
            for (k, v) in map {
                match v {
                    Value::Array(items) if items.iter().all(|x| !x.is_object()) => {
                        let parts: Vec<String> = items.iter().map(scalar).collect();
                        out.push_str(&format!("{k}: {}\n", parts.join(" ")));
                    }
                    Value::Array(items) => {
                        out.push_str(&format!("{k}:\n"));
                        for item in items {
                            out.push_str(&format!("  {}\n", compact(item)));
                        }
                    }
                    Value::Object(_) => out.push_str(&format!("{k}: {}\n", compact(v))),
                    _ => out.push_str(&format!("{k}: {}\n", scalar(v))),
                }
            }
            out
        }
        other => format!("{}\n", scalar(other)),
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::Object(map) => map.iter().map(|(k, x)| format!("{k}={}", compact(x))).collect::<Vec<_>>().join(" "),
        Value::Array(items) => format!("[{}]", items.iter().map(compact).collect::<Vec<_>>().join(" ")),
        other => scalar(other),
    }
}

fn csv_bytes(out: &Output) -> anyhow::Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    match &out.comparisons {
        Some(rows) => {
            w.write_record(["quantity", "observed", "bound", "bound_source", "satisfied"])?;
            for c in rows {
                let satisfied = if c.observed.is_empty() { String::new() } else { c.satisfied.to_string() };
                w.write_record([&c.quantity, &c.observed, &c.bound, &c.bound_source, &satisfied])?;
            }
        }
        None => {
            w.write_record(["key", "value"])?;
            if let Value::Object(map) = &out.doc {
                for (k, v) in map {
                    let value = match v {
                        Value::Array(_) | Value::Object(_) => v.to_string(),
                        _ => scalar(v),
                    };
                    w.write_record([k.as_str(), value.as_str()])?;
                }
            }
        }
    }
    w.flush()?;
    w.into_inner().map_err(|e| anyhow::anyhow!("csv writer: {e}"))
}

pub fn emit(bytes: &[u8], path: Option<&std::path::Path>) -> std::io::Result<()> {
    match path {
        Some(p) => std::fs::write(p, bytes),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(bytes)?;
            stdout.flush()
        }
    }
}
