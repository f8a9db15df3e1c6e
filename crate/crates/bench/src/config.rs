//! Flat `key = value` configuration files.
//!
//! The first non-blank, non-comment line must be the schema tag
//! `ldml-config-v1`. Every other line is `key = value`; `#` starts a comment
//! and blank lines are ignored. Keys may appear once. Lists are
//! comma-separated; integer lists also accept inclusive ranges `a..=b` and
//! float lists accept `linspace:a:b:count`.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;
use std::str::FromStr;

use crate::error::{BenchError, Result};

pub const SCHEMA: &str = "ldml-config-v1";

#[derive(Debug, Clone, PartialEq)]
struct Entry {
    /// Source line, 0 for command-line overrides.
    line: usize,
    value: String,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct RawConfig {
    entries: BTreeMap<String, Entry>,
}

fn line_err(line: usize, msg: impl Into<String>) -> BenchError {
    if line == 0 {
        BenchError::Config(msg.into())
    } else {
        BenchError::ConfigLine { line, msg: msg.into() }
    }
}

impl RawConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = BTreeMap::new();
        let mut seen_schema = false;
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            if !seen_schema {
                if content != SCHEMA {
                    return Err(line_err(line, format!("expected schema line `{SCHEMA}`, found `{content}`")));
                }
                seen_schema = true;
                continue;
            }
            let (key, value) = content
                .split_once('=')
                .ok_or_else(|| line_err(line, format!("expected `key = value`, found `{content}`")))?;
            let key = key.trim();
            if key.is_empty() {
                return Err(line_err(line, "empty key"));
            }
            let entry = Entry {
                line,
                value: value.trim().to_string(),
            };
            if let Some(prev) = entries.insert(key.to_string(), entry) {
                return Err(line_err(line, format!("duplicate key `{key}` (first set on line {})", prev.line)));
            }
        }
        if !seen_schema {
            return Err(BenchError::Config(format!("missing schema line `{SCHEMA}`")));
        }
        Ok(Self { entries })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| BenchError::Config(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Overrides (or adds) one key, as from `--set key=value`.
    pub fn set(&mut self, key: &str, value: &str) {
        self.entries.insert(
            key.trim().to_string(),
            Entry {
                line: 0,
                value: value.trim().to_string(),
            },
        );
    }

    /// Parses `key=value` and applies it with [`RawConfig::set`].
    pub fn set_pair(&mut self, pair: &str) -> Result<()> {
        let (k, v) = pair
            .split_once('=')
            .ok_or_else(|| BenchError::Config(format!("override `{pair}` is not key=value")))?;
        self.set(k, v);
        Ok(())
    }

    pub fn contains(&self, key: &str) -> bool {
        self.entries.contains_key(key)
    }

    pub fn reader(&self) -> Reader<'_> {
        Reader {
            raw: self,
            used: BTreeSet::new(),
        }
    }
}

/// Typed access to a [`RawConfig`] that remembers which keys were read, so
/// unknown keys can be rejected.
pub struct Reader<'a> {
    raw: &'a RawConfig,
    used: BTreeSet<String>,
}

impl<'a> Reader<'a> {
    fn entry(&mut self, key: &str) -> Option<&'a Entry> {
        self.used.insert(key.to_string());
        self.raw.entries.get(key)
    }

    fn parsed<T: FromStr>(&mut self, key: &str) -> Result<Option<T>> {
        match self.entry(key) {
            None => Ok(None),
            Some(e) => e
                .value
                .parse()
                .map(Some)
                .map_err(|_| line_err(e.line, format!("`{key}`: cannot parse `{}`", e.value))),
        }
    }

    pub fn str_or(&mut self, key: &str, default: &str) -> String {
        self.entry(key).map_or_else(|| default.to_string(), |e| e.value.clone())
    }

    pub fn f64_or(&mut self, key: &str, default: f64) -> Result<f64> {
        Ok(self.parsed(key)?.unwrap_or(default))
    }

    pub fn usize_or(&mut self, key: &str, default: usize) -> Result<usize> {
        Ok(self.parsed(key)?.unwrap_or(default))
    }

    pub fn u64_or(&mut self, key: &str, default: u64) -> Result<u64> {
        Ok(self.parsed(key)?.unwrap_or(default))
    }

    pub fn bool_or(&mut self, key: &str, default: bool) -> Result<bool> {
        Ok(self.parsed(key)?.unwrap_or(default))
    }

    pub fn required<T: FromStr>(&mut self, key: &str) -> Result<T> {
        self.parsed(key)?
            .ok_or_else(|| BenchError::Config(format!("missing required key `{key}`")))
    }

    /// The raw comma-separated items of a list value (empty value: no items).
    pub fn items(&mut self, key: &str) -> Option<(usize, Vec<String>)> {
        self.entry(key).map(|e| {
            let items = e
                .value
                .split(',')
                .map(|s| s.trim().to_string())
                .filter(|s| !s.is_empty())
                .collect();
            (e.line, items)
        })
    }

    pub fn f64_list_or(&mut self, key: &str, default: &[f64]) -> Result<Vec<f64>> {
        let Some((line, items)) = self.items(key) else {
            return Ok(default.to_vec());
        };
        let mut out = Vec::new();
        for item in items {
            if let Some(spec) = item.strip_prefix("linspace:") {
                out.extend(linspace(spec).ok_or_else(|| line_err(line, format!("`{key}`: bad linspace `{item}`")))?);
            } else {
                out.push(
                    item.parse()
                        .map_err(|_| line_err(line, format!("`{key}`: cannot parse `{item}`")))?,
                );
            }
        }
        Ok(out)
    }

    pub fn usize_list_or(&mut self, key: &str, default: &[usize]) -> Result<Vec<usize>> {
        let Some((line, items)) = self.items(key) else {
            return Ok(default.to_vec());
        };
        let bad = |item: &str| line_err(line, format!("`{key}`: cannot parse `{item}`"));
        let mut out = Vec::new();
        for item in items {
            if let Some((a, b)) = item.split_once("..=") {
                let a: usize = a.trim().parse().map_err(|_| bad(&item))?;
                let b: usize = b.trim().parse().map_err(|_| bad(&item))?;
                if a > b {
                    return Err(bad(&item));
                }
                out.extend(a..=b);
            } else {
                out.push(item.parse().map_err(|_| bad(&item))?);
            }
        }
        Ok(out)
    }

    /// Marks every key under `prefix` as read without parsing it.
    pub fn skip_prefix(&mut self, prefix: &str) {
        let keys: Vec<String> = self.raw.entries.keys().filter(|k| k.starts_with(prefix)).cloned().collect();
        self.used.extend(keys);
    }

    /// Fails on any key that was never read.
    pub fn finish(self) -> Result<()> {
        for (key, e) in &self.raw.entries {
            if !self.used.contains(key) {
                return Err(line_err(e.line, format!("unknown key `{key}`")));
            }
        }
        Ok(())
    }
}

/// `a:b:count` evenly spaced values from `a` to `b` inclusive.
fn linspace(spec: &str) -> Option<Vec<f64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    let [a, b, count] = parts[..] else {
        return None;
    };
    let (a, b): (f64, f64) = (a.parse().ok()?, b.parse().ok()?);
    let count: usize = count.parse().ok()?;
    match count {
        0 => None,
        1 => Some(vec![a]),
        _ => Some((0..count).map(|i| a + (b - a) * i as f64 / (count - 1) as f64).collect()),
    }
}
