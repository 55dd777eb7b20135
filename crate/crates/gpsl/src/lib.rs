//! File formats, parameter sweeps and the `gpsl` command-line tool on top of
//! `gpsl-core`.

pub mod cli;
pub mod commands;
pub mod config;
pub mod error;
pub mod grid;
pub mod io;
pub mod manifest;
pub mod profile_spec;

use std::path::Path;

use gpsl_core::regimes::PhysicalConstants;

use crate::cli::{Cli, Command};
use crate::config::{resolve_constants, ConstantsSnapshot};
use crate::error::{exit, CliError, Result};
use crate::io::Table;
use crate::manifest::{RunManifest, MANIFEST_FILE};

/// Everything a command produces, written to disk in one pass at the end.
#[derive(Debug, Default)]
pub struct Outputs {
    pub files: Vec<(String, Vec<u8>)>,
    pub seed: Option<u64>,
    /// False when a verified property failed.
    pub passed: bool,
    pub stdout: String,
}

impl Outputs {
    pub fn new() -> Self {
        Outputs {
            passed: true,
            ..Default::default()
        }
    }

    pub fn table(&mut self, t: &Table) {
        self.files.push((format!("{}.csv", t.name), t.to_csv()));
        self.files.push((format!("{}.json", t.name), t.to_json()));
    }

    pub fn file(&mut self, name: impl Into<String>, bytes: Vec<u8>) {
        self.files.push((name.into(), bytes));
    }
}

/// Runs `command` with constants `k` without touching the file system
/// (apart from reading declared inputs).
pub fn execute(command: &Command, k: &PhysicalConstants) -> Result<Outputs> {
    let mut out = Outputs::new();
    match command {
        Command::Functional(a) => commands::functional::run(a, &mut out)?,
        Command::Figures(a) => commands::figures::run(a, k, &mut out)?,
        Command::Verify(a) => commands::verify::run(a, &mut out)?,
        Command::Constants(a) => commands::constants::run(a, k, &mut out)?,
        Command::Replay(_) => return Err(CliError::Usage("a manifest cannot replay another replay".into())),
    }
    Ok(out)
}

fn write_all(dir: &Path, files: &[(String, Vec<u8>)]) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    for (name, bytes) in files {
        let p = dir.join(name);
        std::fs::write(&p, bytes).map_err(|e| CliError::io(&p, e))?;
    }
    Ok(())
}

/// Executes, writes outputs and manifest to `dir`, and returns the manifest.
pub fn execute_to_dir(command: &Command, k: &PhysicalConstants, dir: &Path) -> Result<(RunManifest, Outputs)> {
    k.validate()?;
    let out = execute(command, k)?;
    let manifest = RunManifest::new(command, ConstantsSnapshot::from(*k), out.seed, &out.files);
    write_all(dir, &out.files)?;
    write_all(dir, &[(MANIFEST_FILE.to_string(), manifest.to_bytes())])?;
    Ok((manifest, out))
}

/// Full command-line behaviour; returns the process exit code.
pub fn run(cli: &Cli) -> Result<u8> {
    let (manifest, out) = match &cli.command {
        Command::Replay(r) => {
            let recorded = RunManifest::read(&r.manifest)?;
            let k = PhysicalConstants::from(recorded.constants);
            let (m, out) = execute_to_dir(&recorded.parameters, &k, &cli.out)?;
            if m.output_digest != recorded.output_digest {
                return Err(CliError::Property(format!(
                    "replay of {} differs: {} vs recorded {}",
                    r.manifest.display(),
                    m.output_digest,
                    recorded.output_digest
                )));
            }
            println!("replay matches: {}", m.output_digest);
            (m, out)
        }
        command => {
            let k = resolve_constants(cli.config.as_deref())?;
            execute_to_dir(command, &k, &cli.out)?
        }
    };
    print!("{}", out.stdout);
    for o in &manifest.outputs {
        eprintln!("wrote {}", cli.out.join(&o.file).display());
    }
    if out.passed {
        Ok(exit::OK)
    } else {
        Ok(exit::PROPERTY)
    }
}
