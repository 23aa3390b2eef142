//! `key = value` text files with `#` comments.

use std::collections::BTreeMap;
use std::path::Path;

use crate::error::{Error, Result};

#[derive(Clone, Debug, Default)]
pub struct KeyValues {
    pub entries: BTreeMap<String, String>,
    pub source: String,
}

impl KeyValues {
    pub fn parse(text: &str, source: &str) -> Result<KeyValues> {
        let mut entries = BTreeMap::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((k, v)) = line.split_once('=') else {
                return Err(Error::Config(format!("{}:{}: expected `key = value`", source, n + 1)));
            };
            let k = k.trim().to_string();
            if entries.insert(k.clone(), v.trim().to_string()).is_some() {
                return Err(Error::Config(format!("{}:{}: duplicate key `{}`", source, n + 1, k)));
            }
        }
        Ok(KeyValues { entries, source: source.to_string() })
    }

    pub fn load(path: &Path) -> Result<KeyValues> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("{}: {}", path.display(), e)))?;
        KeyValues::parse(&text, &path.display().to_string())
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(|s| s.as_str())
    }

    pub fn require(&self, key: &str) -> Result<&str> {
        self.get(key).ok_or_else(|| Error::Config(format!("{}: missing key `{}`", self.source, key)))
    }

    pub fn parse_value<T: std::str::FromStr>(&self, key: &str) -> Result<T> {
        let v = self.require(key)?;
        v.parse().map_err(|_| Error::Config(format!("{}: bad value `{}` for `{}`", self.source, v, key)))
    }

    /// Keys of the form `<prefix>.<suffix>`, returned as `(suffix, value)`.
    pub fn with_prefix<'a>(&'a self, prefix: &'a str) -> impl Iterator<Item = (&'a str, &'a str)> + 'a {
        self.entries.iter().filter_map(move |(k, v)| {
            k.strip_prefix(prefix).and_then(|r| r.strip_prefix('.')).map(|s| (s, v.as_str()))
        })
    }
}

pub fn parse_list<T: std::str::FromStr>(s: &str) -> Option<Vec<T>> {
    let s = s.trim().trim_start_matches('[').trim_end_matches(']');
    s.split(',').map(|t| t.trim().parse().ok()).collect()
}
