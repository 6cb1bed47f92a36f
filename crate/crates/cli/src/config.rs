//! Optional defaults file: flat `key = value` pairs, overridden by flags.

use std::fs;
use std::path::Path;

use serde::Deserialize;

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub s: Option<String>,
    pub bound: Option<u32>,
    pub genus: Option<usize>,
    pub limit: Option<u64>,
    pub cap: Option<u64>,
    pub field: Option<String>,
    pub mode: Option<String>,
    pub checkpoint_interval: Option<u64>,
}

impl Config {
    pub fn load(path: &Path) -> Result<Self, String> {
        let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        toml::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
    }
}
