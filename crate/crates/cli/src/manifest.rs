use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{Context, Result};
use serde::Serialize;
use sha2::{Digest, Sha256};

use hsreduce::engine::FORMAT_VERSION;

/// Describes one invocation. Identical inputs and flags give an identical
/// config hash; only `durationMs` varies between runs.
#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RunManifest {
    pub format_version: u32,
    pub command: String,
    pub inputs: Vec<PathBuf>,
    pub flags: serde_json::Value,
    pub version: String,
    pub config_hash: Option<String>,
    pub exit_code: u8,
    pub duration_ms: f64,
}

pub struct Recorder {
    started: Instant,
    pub command: String,
    pub inputs: Vec<PathBuf>,
    pub flags: serde_json::Value,
    pub config_hash: Option<String>,
}

/// Hex SHA-256 of the canonical config JSON.
pub fn config_hash(config_json: &str) -> String {
    hex::encode(Sha256::digest(config_json.as_bytes()))
}

impl Recorder {
    pub fn new(command: &str, inputs: Vec<PathBuf>, flags: impl Serialize) -> Recorder {
        Recorder {
            started: Instant::now(),
            command: command.to_string(),
            inputs,
            flags: serde_json::to_value(flags).unwrap_or(serde_json::Value::Null),
            config_hash: None,
        }
    }

    pub fn finish(self, exit_code: u8) -> RunManifest {
        RunManifest {
            format_version: FORMAT_VERSION,
            command: self.command,
            inputs: self.inputs,
            flags: self.flags,
            version: env!("CARGO_PKG_VERSION").to_string(),
            config_hash: self.config_hash,
            exit_code,
            duration_ms: self.started.elapsed().as_secs_f64() * 1e3,
        }
    }
}

impl RunManifest {
    /// Writes to `path`, or to stderr as a single line without one.
    pub fn emit(&self, path: Option<&Path>) -> Result<()> {
        match path {
            Some(p) => {
                let mut s = serde_json::to_string_pretty(self)?;
                s.push('\n');
                std::fs::write(p, s).with_context(|| format!("writing {}", p.display()))
            }
            None => {
                eprintln!("{}", serde_json::to_string(self)?);
                Ok(())
            }
        }
    }
}
