//! JSON and CSV emitters. Every output carries the crate version.

use std::io::Write;

use serde::Serialize;
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// `{"version", "command", "status", "result"}`.
pub fn envelope<T: Serialize>(command: &str, status: &str, result: &T) -> anyhow::Result<Value> {
    Ok(json!({
        "version": pustat::VERSION,
        "command": command,
        "status": status,
        "result": serde_json::to_value(result)?,
    }))
}

pub fn print_json(v: &Value) -> anyhow::Result<()> {
    let mut out = std::io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, v)?;
    writeln!(out)?;
    Ok(())
}

/// Writes a version comment line, a header and the rows.
pub fn write_csv<W: Write>(mut w: W, header: &[&str], rows: &[Vec<String>]) -> anyhow::Result<()> {
    writeln!(w, "# pustat {}", pustat::VERSION)?;
    let mut wr = csv::Writer::from_writer(w);
    wr.write_record(header)?;
    for r in rows {
        wr.write_record(r)?;
    }
    wr.flush()?;
    Ok(())
}

pub fn print_csv(header: &[&str], rows: &[Vec<String>]) -> anyhow::Result<()> {
    write_csv(std::io::stdout().lock(), header, rows)
}

/// Formats an optional number, empty when absent.
pub fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}
