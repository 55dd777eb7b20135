//! Run manifests: enough to reproduce a run and check its outputs.

use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::cli::Command;
use crate::config::ConstantsSnapshot;
use crate::error::{CliError, Result};

pub const MANIFEST_FILE: &str = "manifest.json";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputDigest {
    pub file: String,
    pub sha256: String,
}

/// Written next to every output set. No timestamps or absolute paths, so
/// identical runs give identical manifests.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub subcommand: String,
    pub parameters: Command,
    pub constants: ConstantsSnapshot,
    pub seed: Option<u64>,
    pub outputs: Vec<OutputDigest>,
    /// SHA-256 over the per-file digests in order.
    pub output_digest: String,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl RunManifest {
    pub fn new(command: &Command, constants: ConstantsSnapshot, seed: Option<u64>, files: &[(String, Vec<u8>)]) -> Self {
        let outputs: Vec<OutputDigest> = files
            .iter()
            .map(|(name, bytes)| OutputDigest {
                file: name.clone(),
                sha256: sha256_hex(bytes),
            })
            .collect();
        let mut all = Sha256::new();
        for o in &outputs {
            all.update(o.file.as_bytes());
            all.update(b"\0");
            all.update(o.sha256.as_bytes());
            all.update(b"\n");
        }
        RunManifest {
            tool: env!("CARGO_PKG_NAME").into(),
            version: env!("CARGO_PKG_VERSION").into(),
            subcommand: command.name().into(),
            parameters: command.clone(),
            constants,
            seed,
            outputs,
            output_digest: hex::encode(all.finalize()),
        }
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = serde_json::to_vec_pretty(self).expect("manifest serializes");
        out.push(b'\n');
        out
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("manifest {}: {e}", path.display())))
    }
}
