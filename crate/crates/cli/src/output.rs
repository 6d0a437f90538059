//! Report envelope, JSON/CSV rendering and the run manifest.

use std::path::{Path, PathBuf};
use std::time::Duration;

use anyhow::{Context, Result};
use clap::ValueEnum;
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

/// Bumped whenever a report field changes meaning or disappears.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// What a command produced. `body` holds no timing so reruns are
/// byte-identical.
pub struct Report {
    pub command: &'static str,
    pub body: Value,
    pub table: Table,
    pub passed: bool,
}

#[derive(Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table { header: header.iter().map(|h| h.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }
}

impl Report {
    pub fn new(command: &'static str, body: impl Serialize, table: Table, passed: bool) -> Result<Self> {
        Ok(Report { command, body: serde_json::to_value(body)?, table, passed })
    }

    fn json(&self) -> Result<String> {
        let mut env = serde_json::Map::new();
        env.insert("schema_version".into(), SCHEMA_VERSION.into());
        env.insert("command".into(), self.command.into());
        env.insert("passed".into(), self.passed.into());
        env.insert("result".into(), self.body.clone());
        let mut s = serde_json::to_string_pretty(&Value::Object(env))?;
        s.push('\n');
        Ok(s)
    }

    fn csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.table.header)?;
        for r in &self.table.rows {
            w.write_record(r)?;
        }
        Ok(String::from_utf8(w.into_inner()?)?)
    }
}

#[derive(Serialize)]
struct Manifest<'a> {
    schema_version: u32,
    command: &'a str,
    parameters: &'a [String],
    determinism: &'static str,
    wall_time_ms: u128,
    report: String,
    sha256: String,
}

fn manifest_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".manifest.json");
    PathBuf::from(s)
}

pub fn emit(report: &Report, format: Format, out: Option<&Path>, argv: &[String], elapsed: Duration) -> Result<()> {
    let text = match format {
        Format::Json => report.json()?,
        Format::Csv => report.csv()?,
    };
    let Some(out) = out else {
        print!("{text}");
        return Ok(());
    };
    std::fs::write(out, &text).with_context(|| format!("writing {}", out.display()))?;
    let manifest = Manifest {
        schema_version: SCHEMA_VERSION,
        command: report.command,
        parameters: argv,
        determinism: "no randomness; identical inputs give a byte-identical report",
        wall_time_ms: elapsed.as_millis(),
        report: out.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default(),
        sha256: hex(&Sha256::digest(text.as_bytes())),
    };
    let path = manifest_path(out);
    let mut m = serde_json::to_string_pretty(&manifest)?;
    m.push('\n');
    std::fs::write(&path, m).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}
