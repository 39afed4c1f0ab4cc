//! Flat `key = value` configuration with per-kind schemas.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{LabError, LabResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValueKind {
    Real,
    Int,
    Bool,
    Text,
    /// Comma-separated reals.
    RealList,
}

/// One allowed key with its default.
#[derive(Debug, Clone, Copy)]
pub struct KeySpec {
    pub key: &'static str,
    pub kind: ValueKind,
    pub default: &'static str,
}

pub const fn key(key: &'static str, kind: ValueKind, default: &'static str) -> KeySpec {
    KeySpec { key, kind, default }
}

/// Raw parsed file: keys in file order, duplicates rejected.
pub fn parse(text: &str) -> LabResult<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| LabError::Config(format!("line {}: expected `key = value`, got `{}`", no + 1, raw.trim())))?;
        let (k, v) = (k.trim(), v.trim());
        if k.is_empty() || !k.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '.') {
            return Err(LabError::Config(format!("line {}: invalid key `{k}`", no + 1)));
        }
        if out.insert(k.to_string(), v.to_string()).is_some() {
            return Err(LabError::Config(format!("line {}: duplicate key `{k}`", no + 1)));
        }
    }
    Ok(out)
}

fn check_value(spec: &KeySpec, v: &str) -> LabResult<()> {
    let bad = || LabError::Config(format!("key `{}`: cannot parse `{v}` as {:?}", spec.key, spec.kind));
    match spec.kind {
        ValueKind::Real => {
            v.parse::<f64>().ok().filter(|x| x.is_finite()).ok_or_else(bad)?;
        }
        ValueKind::Int => {
            v.parse::<u64>().map_err(|_| bad())?;
        }
        ValueKind::Bool => {
            v.parse::<bool>().map_err(|_| bad())?;
        }
        ValueKind::Text => {}
        ValueKind::RealList => {
            if !v.is_empty() {
                for part in v.split(',') {
                    part.trim().parse::<f64>().ok().filter(|x| x.is_finite()).ok_or_else(bad)?;
                }
            }
        }
    }
    Ok(())
}

/// Configuration validated against a schema, with defaults filled in.
#[derive(Debug, Clone, PartialEq)]
pub struct Resolved {
    values: BTreeMap<String, String>,
}

impl Resolved {
    pub fn new(schema: &[KeySpec], given: &BTreeMap<String, String>) -> LabResult<Self> {
        for k in given.keys() {
            if !schema.iter().any(|s| s.key == k) {
                return Err(LabError::Config(format!("unknown key `{k}`")));
            }
        }
        let mut values = BTreeMap::new();
        for spec in schema {
            let v = given.get(spec.key).map(String::as_str).unwrap_or(spec.default);
            check_value(spec, v)?;
            values.insert(spec.key.to_string(), v.to_string());
        }
        Ok(Self { values })
    }

    fn raw(&self, key: &str) -> &str {
        self.values
            .get(key)
            .unwrap_or_else(|| panic!("key `{key}` missing from schema"))
    }

    pub fn real(&self, key: &str) -> f64 {
        self.raw(key).parse().expect("validated")
    }

    pub fn int(&self, key: &str) -> u64 {
        self.raw(key).parse().expect("validated")
    }

    pub fn usize(&self, key: &str) -> usize {
        self.int(key) as usize
    }

    pub fn flag(&self, key: &str) -> bool {
        self.raw(key).parse().expect("validated")
    }

    pub fn text(&self, key: &str) -> &str {
        self.raw(key)
    }

    pub fn reals(&self, key: &str) -> Vec<f64> {
        let v = self.raw(key);
        if v.is_empty() {
            return Vec::new();
        }
        v.split(',').map(|p| p.trim().parse().expect("validated")).collect()
    }

    /// Sorted `key = value` lines of every resolved key.
    pub fn canonical(&self) -> String {
        let mut s = String::new();
        for (k, v) in &self.values {
            let _ = writeln!(s, "{k} = {v}");
        }
        s
    }
}
