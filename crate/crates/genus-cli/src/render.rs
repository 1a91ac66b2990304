//! Output documents and their three renderings.
//!
//! Every command builds one Document; the format flag picks the
//! rendering. Exact data stays in rational strings in every format,
//! floating data is rendered in decimal only by the numeric commands.

use serde_json::Value;
use std::fs;
use std::io::Write;
use std::path::Path;
use std::process;

pub enum Document {
    /// A keyed record; arrays render as indexed rows in csv.
    Record(Value),
    /// A natural table with a metadata header for the json rendering.
    Table {
        meta: Value,
        columns: Vec<&'static str>,
        rows: Vec<Vec<String>>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn render_record_csv(map: &serde_json::Map<String, Value>, out: &mut String) {
    out.push_str("key,value\n");
    for (k, v) in map {
        match v {
            Value::Array(items) => {
                for (i, item) in items.iter().enumerate() {
                    out.push_str(&format!("{}[{}],{}\n", k, i, csv_field(&scalar_text(item))));
                }
            }
            other => out.push_str(&format!("{},{}\n", k, csv_field(&scalar_text(other)))),
        }
    }
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn render_record_text(map: &serde_json::Map<String, Value>, out: &mut String) {
    let width = map.keys().map(|k| k.len()).max().unwrap_or(0);
    for (k, v) in map {
        match v {
            Value::Array(items) => {
                out.push_str(&format!("{:width$}:\n", k, width = width));
                for item in items {
                    out.push_str(&format!("  {}\n", scalar_text(item)));
                }
            }
            other => {
                out.push_str(&format!(
                    "{:width$}: {}\n",
                    k,
                    scalar_text(other),
                    width = width
                ));
            }
        }
    }
}

impl Document {
    pub fn render(&self, format: Format) -> String {
        match (self, format) {
            (Document::Record(v), Format::Json) => {
                format!("{}\n", serde_json::to_string_pretty(v).expect("valid json"))
            }
            (Document::Record(v), Format::Csv) => {
                let mut out = String::new();
                if let Value::Object(map) = v {
                    render_record_csv(map, &mut out);
                }
                out
            }
            (Document::Record(v), Format::Text) => {
                let mut out = String::new();
                if let Value::Object(map) = v {
                    render_record_text(map, &mut out);
                }
                out
            }
            (Document::Table { meta, columns, rows }, Format::Json) => {
                let mut doc = meta.clone();
                if let Value::Object(map) = &mut doc {
                    map.insert(
                        "columns".into(),
                        Value::Array(columns.iter().map(|c| Value::String(c.to_string())).collect()),
                    );
                    map.insert(
                        "rows".into(),
                        Value::Array(
                            rows.iter()
                                .map(|r| {
                                    Value::Array(
                                        r.iter().map(|c| Value::String(c.clone())).collect(),
                                    )
                                })
                                .collect(),
                        ),
                    );
                }
                format!("{}\n", serde_json::to_string_pretty(&doc).expect("valid json"))
            }
            (Document::Table { columns, rows, .. }, Format::Csv) => {
                let mut out = String::new();
                out.push_str(&columns.join(","));
                out.push('\n');
                for row in rows {
                    let fields: Vec<String> = row.iter().map(|c| csv_field(c)).collect();
                    out.push_str(&fields.join(","));
                    out.push('\n');
                }
                out
            }
            (Document::Table { columns, rows, .. }, Format::Text) => {
                let mut widths: Vec<usize> = columns.iter().map(|c| c.len()).collect();
                for row in rows {
                    for (i, cell) in row.iter().enumerate() {
                        widths[i] = widths[i].max(cell.len());
                    }
                }
                let mut out = String::new();
                let header: Vec<String> = columns
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{:w$}", c, w = w))
                    .collect();
                out.push_str(header.join("  ").trim_end());
                out.push('\n');
                for row in rows {
                    let line: Vec<String> = row
                        .iter()
                        .zip(&widths)
                        .map(|(c, w)| format!("{:w$}", c, w = w))
                        .collect();
                    out.push_str(line.join("  ").trim_end());
                    out.push('\n');
                }
                out
            }
        }
    }
}

/// Write to stdout, or atomically to --out: the content lands in a
/// sibling temp file first and is renamed into place.
pub fn deliver(content: &str, out: Option<&Path>) -> std::io::Result<()> {
    match out {
        None => {
            print!("{}", content);
            std::io::stdout().flush()
        }
        Some(path) => {
            let tmp = path.with_file_name(format!(
                ".{}.tmp.{}",
                path.file_name()
                    .map(|n| n.to_string_lossy().into_owned())
                    .unwrap_or_else(|| "out".into()),
                process::id()
            ));
            fs::write(&tmp, content)?;
            fs::rename(&tmp, path)
        }
    }
}
