//! Output assembly: JSON records (schema-versioned) and CSV tables whose
//! numeric cells round-trip doubles exactly.

use std::fs;
use std::process::ExitCode;

use serde_json::Value;

use crate::config::{CliError, CliResult, OutputFormat, RunConfig};

pub const SCHEMA_VERSION: u32 = 1;

/// 17 significant digits; parses back to the identical double.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_f64).unwrap_or_default()
}

/// A rectangular table with a header row.
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self, command: &str) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = serde_json::Map::new();
                for (col, cell) in self.columns.iter().zip(row) {
                    obj.insert(col.clone(), Value::String(cell.clone()));
                }
                Value::Object(obj)
            })
            .collect();
        serde_json::json!({
            "schema_version": SCHEMA_VERSION,
            "command": command,
            "columns": self.columns,
            "rows": rows,
        })
    }
}

fn write_out(config: &RunConfig, text: &str) -> CliResult<()> {
    match &config.out {
        Some(path) => fs::write(path, text)
            .map_err(|e| CliError::usage(format!("cannot write '{path}': {e}"))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Emit a single JSON record (the natural shape for `solve`); CSV callers
/// get one flattened row.
pub fn emit_record(config: &RunConfig, record: Value) -> CliResult<ExitCode> {
    let format = config.format.unwrap_or(OutputFormat::Json);
    let text = match format {
        OutputFormat::Json => format!("{:#}\n", record),
        OutputFormat::Csv => {
            let flat = flatten(&record);
            let mut cols = Vec::new();
            let mut cells = Vec::new();
            for (k, v) in flat {
                cols.push(k);
                cells.push(v);
            }
            format!("{}\n{}\n", cols.join(","), cells.join(","))
        }
    };
    write_out(config, &text)?;
    Ok(ExitCode::SUCCESS)
}

/// Emit a table (the natural shape for `scan`); JSON callers get rows of
/// string cells under the shared schema.
pub fn emit_table(config: &RunConfig, command: &str, table: &Table) -> CliResult<ExitCode> {
    let format = config.format.unwrap_or(OutputFormat::Csv);
    let text = match format {
        OutputFormat::Csv => table.to_csv(),
        OutputFormat::Json => format!("{:#}\n", table.to_json(command)),
    };
    write_out(config, &text)?;
    Ok(ExitCode::SUCCESS)
}

pub fn emit_text(config: &RunConfig, text: &str) -> CliResult<()> {
    write_out(config, text)
}

fn flatten(value: &Value) -> Vec<(String, String)> {
    let mut out = Vec::new();
    fn walk(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
        match v {
            Value::Object(map) => {
                for (k, child) in map {
                    let key = if prefix.is_empty() {
                        k.clone()
                    } else {
                        format!("{prefix}.{k}")
                    };
                    walk(&key, child, out);
                }
            }
            Value::Number(n) => {
                let cell = if n.is_f64() {
                    fmt_f64(n.as_f64().unwrap())
                } else {
                    n.to_string()
                };
                out.push((prefix.to_string(), cell));
            }
            other => out.push((prefix.to_string(), other.to_string().trim_matches('"').to_string())),
        }
    }
    walk("", value, &mut out);
    out
}
