//! Header block, number formatting and the CSV/JSON writers.

use crate::config::Format;
use crate::error::CliError;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

#[derive(Debug, Clone, Serialize)]
pub struct Header {
    pub tool: String,
    pub command: String,
    pub config_sha256: String,
    pub constants: &'static str,
    pub tol: Option<f64>,
    pub entropy_step: f64,
}

impl Header {
    /// `config` is the merged configuration; its JSON text is what gets hashed.
    pub fn new<C: Serialize>(command: &str, config: &C, tol: Option<f64>) -> Self {
        let text = serde_json::to_string(config).expect("config serialises");
        let digest = Sha256::digest(text.as_bytes());
        Header {
            tool: format!("lifshitz {}", env!("CARGO_PKG_VERSION")),
            command: command.to_string(),
            config_sha256: digest.iter().map(|b| format!("{b:02x}")).collect(),
            constants: lifshitz::constants::CONSTANTS_VERSION,
            tol,
            entropy_step: lifshitz::matsubara::ENTROPY_STEP,
        }
    }

    fn write_comment(&self, out: &mut dyn Write) -> io::Result<()> {
        writeln!(out, "# {} {}", self.tool, self.command)?;
        writeln!(out, "# config_sha256 {}", self.config_sha256)?;
        writeln!(out, "# constants {}", self.constants)?;
        if let Some(t) = self.tol {
            writeln!(out, "# tol {t:e}")?;
        }
        writeln!(out, "# entropy_step {:e}", self.entropy_step)
    }
}

/// Scientific notation, 17 significant digits; empty for a missing value.
pub fn sci(x: Option<f64>) -> String {
    match x {
        Some(v) => format!("{v:.16e}"),
        None => String::new(),
    }
}

/// A rectangular table: column names plus rows of optional numbers.
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Option<f64>>>,
}

fn sink(out: Option<&Path>) -> Result<Box<dyn Write>, CliError> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(|e| CliError::Config(format!("out: {}: {e}", p.display())))?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

pub fn emit_table(header: &Header, table: &Table, format: Format, out: Option<&Path>) -> Result<(), CliError> {
    let mut w = sink(out)?;
    match format {
        Format::Csv => {
            header.write_comment(&mut w)?;
            let mut csv = csv::Writer::from_writer(&mut w);
            csv.write_record(&table.columns).map_err(csv_err)?;
            for row in &table.rows {
                csv.write_record(row.iter().map(|v| sci(*v))).map_err(csv_err)?;
            }
            csv.flush()?;
        }
        Format::Json => {
            let rows: Vec<Value> = table
                .rows
                .iter()
                .map(|r| Value::Object(table.columns.iter().zip(r).map(|(c, v)| (c.to_string(), json!(v))).collect()))
                .collect();
            serde_json::to_writer_pretty(&mut w, &json!({ "header": header, "rows": rows })).map_err(json_err)?;
            writeln!(w)?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn emit_json(header: &Header, body: Value, out: Option<&Path>) -> Result<(), CliError> {
    let mut w = sink(out)?;
    let mut doc = json!({ "header": header });
    if let (Value::Object(d), Value::Object(b)) = (&mut doc, body) {
        d.extend(b);
    }
    serde_json::to_writer_pretty(&mut w, &doc).map_err(json_err)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

fn csv_err(e: csv::Error) -> CliError {
    CliError::Config(format!("csv output: {e}"))
}

fn json_err(e: serde_json::Error) -> CliError {
    CliError::Config(format!("json output: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits_round_trip() {
        let x = 0.1 + 0.2;
        let s = sci(Some(x));
        assert_eq!(s.parse::<f64>().unwrap(), x);
        assert_eq!(s.split('e').next().unwrap().replace(['.', '-'], "").len(), 17);
        assert_eq!(sci(None), "");
    }

    #[test]
    fn hash_tracks_config() {
        let a = Header::new("compute", &json!({"a": 1}), Some(1e-10));
        let b = Header::new("compute", &json!({"a": 2}), Some(1e-10));
        assert_ne!(a.config_sha256, b.config_sha256);
        assert_eq!(a.config_sha256.len(), 64);
    }
}
