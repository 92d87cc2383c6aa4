use std::collections::BTreeMap;

use serde::Serialize;

use crate::context::sha256_hex;
use crate::Format;

/// Everything that determines a run's output. The timestamp is recorded only
/// when SOURCE_DATE_EPOCH is set, so that equal inputs give equal bytes.
#[derive(Clone, Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub config: Option<String>,
    pub table: Option<String>,
    pub grid: Option<String>,
    pub tolerances: BTreeMap<String, f64>,
    pub format: Format,
    pub timestamp: Option<String>,
    pub input_hashes: BTreeMap<String, String>,
    pub manifest_hash: String,
}

impl RunManifest {
    pub fn new(command: String, format: Format) -> Self {
        RunManifest {
            command,
            config: None,
            table: None,
            grid: None,
            tolerances: BTreeMap::new(),
            format,
            timestamp: std::env::var("SOURCE_DATE_EPOCH").ok(),
            input_hashes: BTreeMap::new(),
            manifest_hash: String::new(),
        }
    }

    /// Fills `manifest_hash` from every other field except the timestamp.
    pub fn seal(mut self) -> Self {
        let mut probe = self.clone();
        probe.timestamp = None;
        probe.manifest_hash.clear();
        let text = serde_json::to_string(&probe).unwrap_or_default();
        self.manifest_hash = sha256_hex(text.as_bytes());
        self
    }
}
