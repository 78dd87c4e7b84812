//! Settings from a TOML file, overridden by flags.

use std::path::{Path, PathBuf};

use fmes_core::word::count_words;
use serde::Deserialize;

use crate::CliError;

pub const CONFIG_ENV: &str = "FMES_CONFIG";

/// Keys of the config file; every key is optional.
#[derive(Clone, Debug, Default, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub max_weight: Option<u32>,
    pub q_order: Option<usize>,
    pub cache_dir: Option<PathBuf>,
    pub threads: Option<usize>,
    pub echelon_max_weight: Option<u32>,
    pub max_memory_mb: Option<u64>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<FileConfig, CliError> {
        let text =
            std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("config {}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| CliError::Usage(format!("config {}: {e}", path.display())))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Settings {
    /// Weight cutoff; unset, tables and suites use 6 and expressions 12.
    pub max_weight: Option<u32>,
    pub q_order: usize,
    pub cache_dir: Option<PathBuf>,
    /// Worker threads; 0 lets rayon decide.
    pub threads: usize,
    /// Largest weight for which an echelon basis may be built.
    pub echelon_max_weight: u32,
    /// Ceiling on the estimated memory of one echelon basis.
    pub max_memory_mb: u64,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            max_weight: None,
            q_order: 25,
            cache_dir: None,
            threads: 0,
            echelon_max_weight: 8,
            max_memory_mb: 1024,
        }
    }
}

impl Settings {
    /// File values over the defaults, then `flags` over both.
    pub fn resolve(file: FileConfig, flags: FileConfig) -> Settings {
        let d = Settings::default();
        Settings {
            max_weight: flags.max_weight.or(file.max_weight),
            q_order: flags.q_order.or(file.q_order).unwrap_or(d.q_order),
            cache_dir: flags.cache_dir.or(file.cache_dir),
            threads: flags.threads.or(file.threads).unwrap_or(d.threads),
            echelon_max_weight: flags.echelon_max_weight.or(file.echelon_max_weight).unwrap_or(d.echelon_max_weight),
            max_memory_mb: flags.max_memory_mb.or(file.max_memory_mb).unwrap_or(d.max_memory_mb),
        }
    }

    /// Refuses echelon work at `weight` above either ceiling.
    pub fn admit(&self, weight: u32) -> Result<(), CliError> {
        if weight > self.echelon_max_weight {
            return Err(CliError::Resource(format!(
                "weight {weight} exceeds echelon_max_weight {}",
                self.echelon_max_weight
            )));
        }
        let mb = estimate_mb(weight);
        if mb > self.max_memory_mb {
            return Err(CliError::Resource(format!(
                "weight {weight} needs an estimated {mb} MB, above max_memory_mb {}",
                self.max_memory_mb
            )));
        }
        Ok(())
    }
}

/// A dense bound for the echelon basis of one weight slice: n² entries of 32 bytes.
pub fn estimate_mb(weight: u32) -> u64 {
    let n = count_words(weight);
    n.saturating_mul(n).saturating_mul(32) / (1 << 20)
}
