use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};
use superzeta_core::surface::{EnumerationLimits, GeodesicTable, SurfaceConfig};
use superzeta_core::Error;

use crate::GlobalOpts;

pub const CONFIG_ENV: &str = "SUPERZETA_CONFIG";
pub const THREADS_ENV: &str = "SUPERZETA_THREADS";
pub const DEFAULT_CONFIG_FILE: &str = "superzeta.json";
/// Cutoff of the table built in memory when no file is given.
pub const DEFAULT_MAX_NORM: f64 = 1e4;

#[derive(Debug)]
pub enum CliError {
    /// Bad flags or values; exit 2.
    Usage(String),
    /// Missing or unreadable inputs; exit 2.
    Setup(Error),
    /// The numerics refused the point; exit 3.
    Numeric(Error),
    /// A check suite failed; the report is already printed; exit 1.
    CheckFailed(usize),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        if e.is_numeric_domain() {
            CliError::Numeric(e)
        } else {
            CliError::Setup(e)
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::CheckFailed(_) => 1,
            CliError::Usage(_) | CliError::Setup(_) => 2,
            CliError::Numeric(_) => 3,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Setup(_) => "setup",
            CliError::Numeric(_) => "numeric-domain",
            CliError::CheckFailed(_) => "check-failed",
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Usage(m) => m.clone(),
            CliError::Setup(e) | CliError::Numeric(e) => e.to_string(),
            CliError::CheckFailed(n) => format!("{n} check(s) failed"),
        }
    }

    /// Structured error record on stdout, human line on stderr.
    pub fn report(&self) {
        let rec =
            serde_json::json!({ "error": { "kind": self.kind(), "message": self.message() } });
        println!("{rec}");
        eprintln!("superzeta: {}: {}", self.kind(), self.message());
    }
}

pub fn init_threads(flag: Option<usize>) -> Result<(), CliError> {
    let n = match flag {
        Some(n) => Some(n),
        None => match std::env::var(THREADS_ENV) {
            Ok(v) => Some(v.trim().parse::<usize>().map_err(|_| {
                CliError::Usage(format!("{THREADS_ENV}={v:?} is not a thread count"))
            })?),
            Err(_) => None,
        },
    };
    if let Some(n) = n {
        if n == 0 {
            return Err(CliError::Usage("thread count must be positive".into()));
        }
        // a second initialization in the same process is harmless
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    Ok(())
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// The configuration in use, where it came from, and a hash of its bytes.
pub struct LoadedConfig {
    pub config: SurfaceConfig,
    pub source: String,
    pub hash: String,
}

pub fn config_path(opts: &GlobalOpts) -> Option<PathBuf> {
    if let Some(p) = &opts.config {
        return Some(p.clone());
    }
    if let Ok(p) = std::env::var(CONFIG_ENV) {
        if !p.is_empty() {
            return Some(PathBuf::from(p));
        }
    }
    let local = Path::new(DEFAULT_CONFIG_FILE);
    local.exists().then(|| local.to_path_buf())
}

pub fn load_config(opts: &GlobalOpts) -> Result<LoadedConfig, CliError> {
    match config_path(opts) {
        Some(p) => {
            let bytes = std::fs::read(&p).map_err(|e| {
                CliError::Setup(Error::Io {
                    path: p.clone(),
                    message: e.to_string(),
                })
            })?;
            let text = String::from_utf8_lossy(&bytes);
            let config = SurfaceConfig::from_json(&text).map_err(CliError::Setup)?;
            Ok(LoadedConfig {
                config,
                source: p.display().to_string(),
                hash: sha256_hex(&bytes),
            })
        }
        None => {
            let config = SurfaceConfig::reference_gamma2();
            let hash = sha256_hex(config.to_json().as_bytes());
            Ok(LoadedConfig {
                config,
                source: "builtin:reference-gamma2".into(),
                hash,
            })
        }
    }
}

pub struct LoadedTable {
    pub table: GeodesicTable,
    pub source: String,
}

pub fn load_table(opts: &GlobalOpts) -> Result<LoadedTable, CliError> {
    match &opts.table {
        Some(p) => {
            let table = GeodesicTable::load(p, opts.max_norm).map_err(CliError::Setup)?;
            Ok(LoadedTable {
                table,
                source: p.display().to_string(),
            })
        }
        None => {
            let x = opts.max_norm.unwrap_or(DEFAULT_MAX_NORM);
            let table =
                GeodesicTable::build(x, &EnumerationLimits::default()).map_err(CliError::Setup)?;
            Ok(LoadedTable {
                table,
                source: format!("built:gamma2:{x}"),
            })
        }
    }
}

pub fn table_build(opts: &GlobalOpts, group: &str, max_nodes: u64) -> Result<(), CliError> {
    if group != "gamma2" {
        return Err(CliError::Usage(format!(
            "unsupported group {group:?}; only gamma2 is available"
        )));
    }
    let out = opts
        .out
        .as_ref()
        .ok_or_else(|| CliError::Usage("table build needs --out <path>".into()))?;
    let x = opts
        .max_norm
        .ok_or_else(|| CliError::Usage("table build needs --max-norm <X>".into()))?;
    if !(x.is_finite() && x > 1.0) {
        return Err(CliError::Usage(format!(
            "--max-norm must be a finite number above 1, got {x}"
        )));
    }
    let limits = EnumerationLimits { max_nodes };
    let table = GeodesicTable::build(x, &limits).map_err(CliError::Setup)?;
    table.save(out).map_err(CliError::Setup)?;
    let alpha = table
        .alpha()
        .map_or("none".to_string(), |a| format!("{a:.16e}"));
    println!(
        "{}",
        serde_json::json!({
            "table": out.display().to_string(),
            "group": group,
            "max_norm": x,
            "classes": table.class_count(),
            "distinct_norms": table.entries.len(),
            "alpha": alpha,
            "hash": table.content_hash(),
        })
    );
    Ok(())
}
