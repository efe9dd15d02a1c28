//! Run manifests written next to every output.
//!
//! Two runs whose manifests agree in everything but `timestamp` produce
//! byte-identical output files.

use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InputDigest {
    /// File path, or `fixture:<name>` for built-in matrices.
    pub name: String,
    pub sha256: String,
}

impl InputDigest {
    pub fn of_bytes(name: impl Into<String>, bytes: &[u8]) -> InputDigest {
        InputDigest {
            name: name.into(),
            sha256: hex::encode(Sha256::digest(bytes)),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    /// Arguments after the program name.
    pub command: Vec<String>,
    pub inputs: Vec<InputDigest>,
    pub seeds: Vec<u64>,
    pub tool_version: String,
    pub timestamp: String,
    /// Files written by the run, relative to the manifest.
    pub outputs: Vec<String>,
}

impl RunManifest {
    pub fn new(inputs: Vec<InputDigest>, seeds: Vec<u64>) -> RunManifest {
        RunManifest {
            command: std::env::args().skip(1).collect(),
            inputs,
            seeds,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
            outputs: Vec::new(),
        }
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let mut text = serde_json::to_string_pretty(self)?;
        text.push('\n');
        std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
    }
}
