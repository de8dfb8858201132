//! The run manifest embedded verbatim in every emitted report: command,
//! resolved flags, master seed, tool version, and input-file digests.
//! Deliberately timestamp-free so reruns are byte-identical.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::Failure;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct RunManifest {
    pub command: String,
    pub version: String,
    pub master_seed: u64,
    pub flags: BTreeMap<String, String>,
    pub input_digests: BTreeMap<String, String>,
    pub model_pool: Vec<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub derived_seeds: Option<DerivedSeeds>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct DerivedSeeds {
    pub split_seed: u64,
    pub model_seeds: BTreeMap<String, u64>,
}

impl RunManifest {
    pub fn new(command: &str, master_seed: u64) -> RunManifest {
        RunManifest {
            command: command.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            master_seed,
            flags: BTreeMap::new(),
            input_digests: BTreeMap::new(),
            model_pool: Vec::new(),
            derived_seeds: None,
        }
    }

    pub fn flag(mut self, name: &str, value: impl ToString) -> RunManifest {
        self.flags.insert(name.to_string(), value.to_string());
        self
    }

    pub fn digest(mut self, role: &str, path: &Path) -> Result<RunManifest, Failure> {
        let bytes = fs::read(path).map_err(|e| {
            Failure::usage(format!("cannot read {}: {e}", path.display()))
        })?;
        let hex: String = Sha256::digest(&bytes)
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect();
        self.input_digests
            .insert(role.to_string(), format!("sha256:{hex}"));
        Ok(self)
    }

    pub fn pool(mut self, pool: &[synthbench::ModelSpec]) -> Result<RunManifest, Failure> {
        self.model_pool = pool
            .iter()
            .map(serde_json::to_value)
            .collect::<Result<_, _>>()
            .map_err(|e| Failure::internal(format!("cannot encode model pool: {e}")))?;
        Ok(self)
    }
}
