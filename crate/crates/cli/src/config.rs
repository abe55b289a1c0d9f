//! Flat `key = value` configuration files.
//!
//! Keys are the long flag names of the active command (without dashes in
//! front, e.g. `gamma`, `tau-m`, `dE`); values use the same unit-suffix
//! grammar as the flags. Explicit flags always win. Keys the active
//! command does not know are ignored, so one file can serve several
//! commands.

use std::collections::BTreeMap;
use std::path::Path;

use crate::AppError;

#[derive(Debug, Clone, Default)]
pub struct Config {
    entries: BTreeMap<String, String>,
}

impl Config {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn load(path: &Path) -> Result<Self, AppError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| AppError::Io(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text).map_err(|msg| {
            AppError::Usage(format!("config {}: {msg}", path.display()))
        })
    }

    pub fn parse(text: &str) -> Result<Self, String> {
        let mut entries = BTreeMap::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("line {}: expected 'key = value'", lineno + 1))?;
            let key = key.trim();
            let value = value.trim();
            if key.is_empty() {
                return Err(format!("line {}: empty key", lineno + 1));
            }
            entries.insert(key.to_string(), value.to_string());
        }
        Ok(Self { entries })
    }

    pub fn get(&self, key: &str) -> Option<String> {
        self.entries.get(key).cloned()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_flat_pairs_with_comments() {
        let cfg = Config::parse("# defaults\ngamma = 1.5\n\ntm = 2ps\n").unwrap();
        assert_eq!(cfg.get("gamma").as_deref(), Some("1.5"));
        assert_eq!(cfg.get("tm").as_deref(), Some("2ps"));
        assert_eq!(cfg.get("missing"), None);
    }

    #[test]
    fn rejects_malformed_lines() {
        assert!(Config::parse("gamma 1.5").is_err());
        assert!(Config::parse("= 3").is_err());
    }
}
