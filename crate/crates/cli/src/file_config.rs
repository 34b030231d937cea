//! Flat `key = value` configuration files mirroring the command-line flags.
//!
//! Each subcommand accepts `--config <path>` pointing at a text file with
//! one pair per line; keys are the long flag names without the leading
//! dashes and values use the same syntax as the flag arguments, commas
//! included. Blank lines and `#` comments are skipped. Flags given on the
//! command line always override file values.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use subfrac::InitialData;

/// Key-value pairs read from a `--config` file, validated against the set
/// of keys the subcommand understands.
#[derive(Debug)]
pub struct FileConfig {
    values: BTreeMap<String, String>,
}

impl FileConfig {
    /// A configuration with no entries; every lookup returns `None`.
    pub fn empty() -> Self {
        FileConfig {
            values: BTreeMap::new(),
        }
    }

    /// Reads and parses the file at `path`.
    pub fn load(path: &Path, allowed: &[&str]) -> Result<Self> {
        let text = fs::read_to_string(path)
            .with_context(|| format!("cannot read config file {}", path.display()))?;
        Self::parse(&text, allowed).with_context(|| format!("in config file {}", path.display()))
    }

    /// Parses configuration text, rejecting malformed lines, unknown keys,
    /// and duplicates.
    pub fn parse(text: &str, allowed: &[&str]) -> Result<Self> {
        let mut values = BTreeMap::new();
        for (index, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                bail!("line {}: expected 'key = value', got '{line}'", index + 1);
            };
            let key = key.trim();
            let value = value.trim();
            if !allowed.contains(&key) {
                bail!(
                    "line {}: unknown key '{key}' (expected one of: {})",
                    index + 1,
                    allowed.join(", ")
                );
            }
            if values.insert(key.to_string(), value.to_string()).is_some() {
                bail!("line {}: duplicate key '{key}'", index + 1);
            }
        }
        Ok(FileConfig { values })
    }

    fn raw(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    fn scalar<T>(&self, key: &str) -> Result<Option<T>>
    where
        T: FromStr,
        T::Err: Display,
    {
        self.raw(key)
            .map(|value| {
                value
                    .parse()
                    .map_err(|err| anyhow::anyhow!("config key '{key}': {err} (value '{value}')"))
            })
            .transpose()
    }

    fn list<T>(&self, key: &str) -> Result<Option<Vec<T>>>
    where
        T: FromStr,
        T::Err: Display,
    {
        self.raw(key)
            .map(|value| {
                value
                    .split(',')
                    .map(|item| {
                        item.trim().parse().map_err(|err| {
                            anyhow::anyhow!("config key '{key}': {err} (item '{}')", item.trim())
                        })
                    })
                    .collect()
            })
            .transpose()
    }

    /// A floating-point value, or `None` when the key is absent.
    pub fn f64(&self, key: &str) -> Result<Option<f64>> {
        self.scalar(key)
    }

    /// An unsigned integer value, or `None` when the key is absent.
    pub fn u64(&self, key: &str) -> Result<Option<u64>> {
        self.scalar(key)
    }

    /// A count value, or `None` when the key is absent.
    pub fn usize(&self, key: &str) -> Result<Option<usize>> {
        self.scalar(key)
    }

    /// A comma-separated list of floats, or `None` when the key is absent.
    pub fn f64_list(&self, key: &str) -> Result<Option<Vec<f64>>> {
        self.list(key)
    }

    /// A comma-separated list of counts, or `None` when the key is absent.
    pub fn usize_list(&self, key: &str) -> Result<Option<Vec<usize>>> {
        self.list(key)
    }

    /// A path value, or `None` when the key is absent.
    pub fn path(&self, key: &str) -> Option<PathBuf> {
        self.raw(key).map(PathBuf::from)
    }

    /// An initial-condition name (`zero` or `parabola`), or `None` when the
    /// key is absent.
    pub fn initial_data(&self, key: &str) -> Result<Option<InitialData>> {
        match self.raw(key) {
            None => Ok(None),
            Some("zero") => Ok(Some(InitialData::Zero)),
            Some("parabola") => Ok(Some(InitialData::Parabola)),
            Some(other) => bail!("config key '{key}': expected 'zero' or 'parabola', got '{other}'"),
        }
    }
}
