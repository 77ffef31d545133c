//! Tabular and JSON emission with a provenance header, plus file writing.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde_json::{json, Map, Value};

use crate::config::RunConfig;
use crate::error::{CliError, CliResult};

/// Header fields attached to every emitted document.
#[derive(Debug, Clone)]
pub struct Meta {
    fields: Vec<(String, Value)>,
}

impl Meta {
    pub fn new(command: &str, cfg: &RunConfig) -> Self {
        Meta {
            fields: vec![
                ("command".into(), json!(command)),
                ("config_hash".into(), json!(cfg.hash())),
                ("quad_tol".into(), json!(cfg.quad_tol)),
                ("root_tol".into(), json!(cfg.root_tol)),
                ("grid_n".into(), json!(cfg.grid_n)),
                ("L_trunc_factor".into(), json!(cfg.l_trunc_factor)),
            ],
        }
    }

    pub fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.fields.push((key.into(), value.into()));
        self
    }

    fn csv_lines(&self) -> String {
        self.fields
            .iter()
            .map(|(k, v)| format!("# {k}: {}\n", plain(v)))
            .collect()
    }

    fn json(&self) -> Value {
        Value::Object(self.fields.iter().cloned().collect::<Map<_, _>>())
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        // JSON has no NaN, so non-finite floats arrive here as null.
        Value::Null => "NaN".into(),
        other => other.to_string(),
    }
}

#[derive(Debug, Clone)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Table {
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self, meta: &Meta) -> String {
        let mut out = meta.csv_lines();
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(plain).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self, meta: &Meta) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                Value::Object(
                    self.columns
                        .iter()
                        .zip(r)
                        .map(|(c, v)| (c.to_string(), v.clone()))
                        .collect(),
                )
            })
            .collect();
        pretty(&json!({ "meta": meta.json(), "rows": rows }))
    }
}

/// A JSON document carrying `meta` next to `body`.
pub fn json_document(meta: &Meta, body: Value) -> String {
    pretty(&json!({ "meta": meta.json(), "data": body }))
}

/// A `field,value` CSV rendering of a flat JSON object.
pub fn record_csv(meta: &Meta, body: &Value) -> String {
    let mut t = Table::new(vec!["field", "value"]);
    if let Value::Object(map) = body {
        for (k, v) in map {
            t.push(vec![json!(k), v.clone()]);
        }
    }
    t.to_csv(meta)
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serialising a Value cannot fail");
    s.push('\n');
    s
}

/// Writes through a sibling temporary file and renames it into place, so
/// an interrupted run never leaves a truncated file behind.
pub fn write_file(dir: &Path, name: &str, contents: &str) -> CliResult<PathBuf> {
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let path = dir.join(name);
    let tmp = dir.join(format!(".{name}.partial"));
    let result = fs::File::create(&tmp)
        .and_then(|mut f| f.write_all(contents.as_bytes()).and_then(|_| f.sync_all()))
        .and_then(|_| fs::rename(&tmp, &path));
    if let Err(e) = result {
        let _ = fs::remove_file(&tmp);
        return Err(CliError::io(&path, e));
    }
    Ok(path)
}
