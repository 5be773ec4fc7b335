mod args;
mod commands;
mod config;
mod output;

use std::ffi::OsString;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Result};
use clap::Parser;
use d4_core::ErrorKind;

use args::{Cli, Command};
use output::ManifestEntry;

const EXIT_INTERNAL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_DOMAIN: u8 = 3;
const EXIT_RESOURCE: u8 = 4;

fn exit_status(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<d4_core::Error>().map(d4_core::Error::kind) {
        Some(ErrorKind::Usage) => EXIT_USAGE,
        Some(ErrorKind::Domain) => EXIT_DOMAIN,
        Some(ErrorKind::Resource) => EXIT_RESOURCE,
        Some(ErrorKind::Io) => EXIT_USAGE,
        Some(ErrorKind::Internal) | None => EXIT_INTERNAL,
    }
}

fn run(cli: Cli, args: Vec<String>) -> Result<u8> {
    let started = Instant::now();
    let common = &cli.common;
    if let Some(n) = common.threads {
        if n == 0 {
            bail!(d4_core::Error::InvalidInput("--threads must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    commands::validate_context(&cli.command)?;
    let manifest_path = common
        .manifest
        .clone()
        .or_else(|| common.out.as_deref().map(output::default_manifest_path));
    for p in common.out.iter().chain(manifest_path.iter()) {
        output::check_writable(p)?;
    }
    if common.out.is_some() && common.out == manifest_path {
        bail!(d4_core::Error::InvalidInput("--out and --manifest must differ".into()));
    }

    let mut inputs = Vec::new();
    if let Some(p) = &common.config {
        inputs.push(ManifestEntry { path: p.display().to_string(), bytes: std::fs::read(p)? });
    }
    if let Command::IngestCl { file, .. } = &cli.command {
        if let Ok(bytes) = std::fs::read(file) {
            inputs.push(ManifestEntry { path: file.display().to_string(), bytes });
        }
    }

    let outcome = commands::run(&cli.command, common.seed)?;
    let bytes = outcome.artifact.render(common.format)?;
    output::write_output(common.out.as_deref(), &bytes)?;

    if let Some(mp) = manifest_path {
        let artifact = ManifestEntry {
            path: common.out.as_ref().map_or_else(|| "-".into(), |p| p.display().to_string()),
            bytes,
        };
        let manifest = output::manifest(
            cli.command.name(),
            &args,
            rayon::current_num_threads(),
            common.seed,
            started.elapsed().as_millis(),
            outcome.status,
            &inputs,
            &[artifact],
        );
        let mut text = serde_json::to_vec_pretty(&manifest)?;
        text.push(b'\n');
        std::fs::write(&mp, text)?;
    }
    Ok(outcome.status)
}

fn main() -> ExitCode {
    let mut argv: Vec<OsString> = std::env::args_os().collect();
    if let Some(path) = config::config_path(&argv) {
        match config::merge(argv, &path) {
            Ok(merged) => argv = merged,
            Err(e) => {
                eprintln!("error: {e:#}");
                return ExitCode::from(EXIT_USAGE);
            }
        }
    }
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let args = argv.iter().skip(1).map(|s| s.to_string_lossy().into_owned()).collect();
    match run(cli, args) {
        Ok(status) => ExitCode::from(status),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_status(&e))
        }
    }
}
