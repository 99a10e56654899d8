use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use qamplify_core::hybrid::{HybridModel, ModelFile};
use qamplify_core::pipeline::FeatureFrame;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{CliError, CliResult};

pub const SEED_ENV: &str = "QAMPLIFY_SEED";
pub const DEFAULT_SEED: u64 = 42;

/// Embedded in every JSON output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub tool_version: String,
    pub seed: u64,
    /// SHA-256 of each input file, keyed by its role.
    pub input_hashes: BTreeMap<String, String>,
}

impl Provenance {
    pub fn new(seed: u64, inputs: &[(&str, &[u8])]) -> Self {
        Self {
            tool_version: env!("CARGO_PKG_VERSION").to_owned(),
            seed,
            input_hashes: inputs
                .iter()
                .map(|(role, bytes)| ((*role).to_owned(), sha256(bytes)))
                .collect(),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct Document<T> {
    #[serde(flatten)]
    pub body: T,
    pub provenance: Option<Provenance>,
}

pub fn sha256(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// `--seed`, then `QAMPLIFY_SEED`, then the config file's seed, then 42.
pub fn resolve_seed(flag: Option<u64>, config: Option<u64>) -> CliResult<u64> {
    if let Some(s) = flag {
        return Ok(s);
    }
    if let Ok(raw) = std::env::var(SEED_ENV) {
        return raw
            .trim()
            .parse()
            .map_err(|_| CliError::usage(format!("{SEED_ENV}={raw:?} is not an unsigned integer")));
    }
    Ok(config.unwrap_or(DEFAULT_SEED))
}

pub fn read_bytes(path: &Path) -> CliResult<Vec<u8>> {
    fs::read(path).map_err(|e| CliError::io(path, e))
}

pub fn write(path: &Path, contents: &[u8]) -> CliResult<()> {
    fs::write(path, contents).map_err(|e| CliError::io(path, e))
}

pub fn parse_json<T: DeserializeOwned>(path: &Path, bytes: &[u8]) -> CliResult<T> {
    serde_json::from_slice(bytes).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> CliResult<()> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::numeric(format!("serialising {}: {e}", path.display())))?;
    text.push('\n');
    write(path, text.as_bytes())
}

pub fn read_frame(path: &Path, bytes: &[u8]) -> CliResult<FeatureFrame> {
    FeatureFrame::read_csv(bytes)
        .map_err(|e| CliError::from(e).context(path))
}

pub fn read_model(path: &Path, bytes: &[u8]) -> CliResult<HybridModel> {
    let doc: Document<ModelFile> = parse_json(path, bytes)?;
    Ok(HybridModel::from_file(doc.body)?)
}

