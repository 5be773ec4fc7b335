//! Rendering of command results and the run manifest.

use std::fs::OpenOptions;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::args::Format;

pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

/// The result of one command: always a JSON document, and for tabular
/// commands also a CSV table.
pub struct Artifact {
    pub json: Value,
    pub table: Option<Table>,
}

impl Artifact {
    pub fn json<T: Serialize>(value: &T) -> Result<Self> {
        Ok(Artifact {
            json: serde_json::to_value(value)?,
            table: None,
        })
    }

    pub fn render(&self, format: Option<Format>) -> Result<Vec<u8>> {
        match (format, &self.table) {
            (Some(Format::Json), _) | (None, None) => {
                let mut out = serde_json::to_vec_pretty(&self.json)?;
                out.push(b'\n');
                Ok(out)
            }
            (Some(Format::Csv) | None, Some(table)) => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&table.header)?;
                for row in &table.rows {
                    w.write_record(row)?;
                }
                Ok(w.into_inner().context("flushing CSV")?)
            }
            (Some(Format::Csv), None) => {
                bail!(d4_core::Error::InvalidInput("this command emits JSON only".into()))
            }
        }
    }
}

/// Fails early when `path` cannot be written, leaving no file behind.
pub fn check_writable(path: &Path) -> Result<()> {
    if path.is_dir() {
        bail!(d4_core::Error::InvalidInput(format!("{} is a directory", path.display())));
    }
    let existed = path.exists();
    OpenOptions::new()
        .append(true)
        .create(true)
        .open(path)
        .map_err(|e| d4_core::Error::InvalidInput(format!("cannot write {}: {e}", path.display())))?;
    if !existed {
        std::fs::remove_file(path)?;
    }
    Ok(())
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn write_output(path: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, bytes).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(bytes)?;
            stdout.flush()?;
            Ok(())
        }
    }
}

pub fn default_manifest_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".manifest.json");
    PathBuf::from(s)
}

pub struct ManifestEntry {
    pub path: String,
    pub bytes: Vec<u8>,
}

#[allow(clippy::too_many_arguments)]
pub fn manifest(
    command: &str,
    args: &[String],
    threads: usize,
    seed: u64,
    elapsed_ms: u128,
    exit_status: u8,
    inputs: &[ManifestEntry],
    artifacts: &[ManifestEntry],
) -> Value {
    let describe = |e: &ManifestEntry| {
        json!({ "path": e.path, "bytes": e.bytes.len(), "sha256": sha256_hex(&e.bytes) })
    };
    json!({
        "schema": d4_core::lseries::SCHEMA,
        "tool": "d4",
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "args": args,
        "threads": threads,
        "seed": seed,
        "elapsed_ms": elapsed_ms,
        "exit_status": exit_status,
        "inputs": inputs.iter().map(describe).collect::<Vec<_>>(),
        "artifacts": artifacts.iter().map(describe).collect::<Vec<_>>(),
    })
}
