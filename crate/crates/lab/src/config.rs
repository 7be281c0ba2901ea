//! Flat `key = value` experiment configs with a single `[kind]` section.
//!
//! ```text
//! # comments run to the end of the line
//! name = sp-default
//! [stationary-phase]
//! hbar = 2^-6, 2^-7, 2^-8
//! observable = cos(m=1, n=-1)
//! ```
//!
//! Keys may appear before or after the section header; the file is one
//! flat namespace. Every key is checked by the experiment that reads it
//! and unknown keys are rejected.

use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::error::{LabError, Result};
use crate::spec::{parse_number, CatalogSpec};

/// Largest config accepted.
pub const MAX_CONFIG_LEN: usize = 1 << 20;
/// Longest list value accepted.
pub const MAX_LIST_LEN: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    StationaryPhase,
    ReductionScan,
    IntegrableTorus,
    IntegrableTransversal,
    CatmapMixing,
    StableManifold,
}

impl Kind {
    pub const ALL: [Kind; 6] = [
        Kind::StationaryPhase,
        Kind::ReductionScan,
        Kind::IntegrableTorus,
        Kind::IntegrableTransversal,
        Kind::CatmapMixing,
        Kind::StableManifold,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Kind::StationaryPhase => "stationary-phase",
            Kind::ReductionScan => "reduction-scan",
            Kind::IntegrableTorus => "integrable-torus",
            Kind::IntegrableTransversal => "integrable-transversal",
            Kind::CatmapMixing => "catmap-mixing",
            Kind::StableManifold => "stable-manifold",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Kind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Kind::ALL.into_iter().find(|k| k.as_str() == s).ok_or_else(|| {
            let known: Vec<_> = Kind::ALL.iter().map(|k| k.as_str()).collect();
            format!("unknown experiment kind '{s}' (known: {})", known.join(", "))
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
struct Entry {
    value: String,
    line: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    kind: Kind,
    entries: BTreeMap<String, Entry>,
}

impl Config {
    pub fn parse(text: &str) -> Result<Self> {
        if text.len() > MAX_CONFIG_LEN {
            return Err(LabError::Parse {
                line: 0,
                message: format!("config larger than {MAX_CONFIG_LEN} bytes"),
            });
        }
        let mut kind = None;
        let mut entries = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let err = |message: String| LabError::Parse { line, message };
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            if let Some(rest) = content.strip_prefix('[') {
                let name = rest
                    .strip_suffix(']')
                    .ok_or_else(|| err(format!("section header '{content}' is missing ']'")))?
                    .trim();
                if kind.is_some() {
                    return Err(err(format!("second section '[{name}]': one experiment per file")));
                }
                kind = Some(name.parse::<Kind>().map_err(err)?);
                continue;
            }
            let (key, value) = content
                .split_once('=')
                .ok_or_else(|| err(format!("expected 'key = value', got '{content}'")))?;
            let key = key.trim();
            if key.is_empty() || !key.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(err(format!("invalid key '{key}'")));
            }
            let value = value.trim();
            if value.is_empty() {
                return Err(err(format!("key '{key}' has an empty value")));
            }
            if let Some(prev) = entries.insert(
                key.to_string(),
                Entry {
                    value: value.to_string(),
                    line,
                },
            ) {
                return Err(err(format!("duplicate key '{key}' (first set on line {})", prev.line)));
            }
        }
        let kind = kind.ok_or_else(|| LabError::Parse {
            line: 0,
            message: "missing experiment section, e.g. [stationary-phase]".into(),
        })?;
        Ok(Self { kind, entries })
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    /// Raw `(key, value)` pairs in key order, for report echo.
    pub fn echo(&self) -> BTreeMap<String, String> {
        self.entries.iter().map(|(k, e)| (k.clone(), e.value.clone())).collect()
    }

    /// Overrides or adds a key (tests and scripted scans).
    pub fn set(&mut self, key: &str, value: impl Into<String>) {
        self.entries.insert(
            key.to_string(),
            Entry {
                value: value.into(),
                line: 0,
            },
        );
    }

    /// Same format as the input, canonical order.
    pub fn render(&self) -> String {
        let mut out = format!("[{}]\n", self.kind);
        for (k, e) in &self.entries {
            out.push_str(&format!("{k} = {}\n", e.value));
        }
        out
    }

    pub(crate) fn fields(&self) -> Fields<'_> {
        Fields {
            config: self,
            used: RefCell::new(BTreeSet::new()),
        }
    }
}

/// Typed, tracked access to config values.
pub(crate) struct Fields<'a> {
    config: &'a Config,
    used: RefCell<BTreeSet<&'static str>>,
}

impl Fields<'_> {
    fn raw(&self, key: &'static str) -> Option<&str> {
        self.used.borrow_mut().insert(key);
        self.config.entries.get(key).map(|e| e.value.as_str())
    }

    pub fn string(&self, key: &'static str, default: &str) -> String {
        self.raw(key).unwrap_or(default).to_string()
    }

    pub fn f64(&self, key: &'static str, default: Option<f64>) -> Result<f64> {
        match self.raw(key) {
            Some(v) => parse_number(v).ok_or_else(|| LabError::field(key, format!("'{v}' is not a finite number"))),
            None => default.ok_or_else(|| LabError::field(key, "required but missing")),
        }
    }

    /// A float in `[lo, hi]`.
    pub fn f64_in(&self, key: &'static str, default: Option<f64>, lo: f64, hi: f64) -> Result<f64> {
        let v = self.f64(key, default)?;
        if !(lo..=hi).contains(&v) {
            return Err(LabError::field(key, format!("{v} is outside [{lo}, {hi}]")));
        }
        Ok(v)
    }

    pub fn positive(&self, key: &'static str, default: Option<f64>) -> Result<f64> {
        let v = self.f64(key, default)?;
        if v <= 0.0 {
            return Err(LabError::field(key, format!("must be positive, got {v}")));
        }
        Ok(v)
    }

    pub fn integer(&self, key: &'static str, default: Option<i64>, lo: i64, hi: i64) -> Result<i64> {
        let v = match self.raw(key) {
            Some(v) => v
                .parse::<i64>()
                .map_err(|_| LabError::field(key, format!("'{v}' is not an integer")))?,
            None => default.ok_or_else(|| LabError::field(key, "required but missing"))?,
        };
        if !(lo..=hi).contains(&v) {
            return Err(LabError::field(key, format!("{v} is outside [{lo}, {hi}]")));
        }
        Ok(v)
    }

    pub fn u64(&self, key: &'static str, default: u64) -> Result<u64> {
        match self.raw(key) {
            Some(v) => v
                .parse::<u64>()
                .map_err(|_| LabError::field(key, format!("'{v}' is not a nonnegative integer"))),
            None => Ok(default),
        }
    }

    fn list(&self, key: &'static str) -> Result<Option<Vec<&str>>> {
        let Some(v) = self.raw(key) else {
            return Ok(None);
        };
        let items: Vec<&str> = v.split(',').map(str::trim).collect();
        if items.len() > MAX_LIST_LEN {
            return Err(LabError::field(key, format!("more than {MAX_LIST_LEN} items")));
        }
        if items.iter().any(|s| s.is_empty()) {
            return Err(LabError::field(key, "empty list item"));
        }
        Ok(Some(items))
    }

    pub fn f64_list(&self, key: &'static str, default: Option<&[f64]>) -> Result<Vec<f64>> {
        match self.list(key)? {
            Some(items) => items
                .into_iter()
                .map(|s| parse_number(s).ok_or_else(|| LabError::field(key, format!("'{s}' is not a finite number"))))
                .collect(),
            None => default
                .map(<[f64]>::to_vec)
                .ok_or_else(|| LabError::field(key, "required but missing")),
        }
    }

    pub fn integer_list(&self, key: &'static str, default: Option<&[i64]>) -> Result<Vec<i64>> {
        match self.list(key)? {
            Some(items) => items
                .into_iter()
                .map(|s| {
                    s.parse::<i64>()
                        .map_err(|_| LabError::field(key, format!("'{s}' is not an integer")))
                })
                .collect(),
            None => default
                .map(<[i64]>::to_vec)
                .ok_or_else(|| LabError::field(key, "required but missing")),
        }
    }

    pub fn spec(&self, key: &'static str, default: Option<&str>) -> Result<CatalogSpec> {
        let text = match self.raw(key) {
            Some(v) => v,
            None => default.ok_or_else(|| LabError::field(key, "required but missing"))?,
        };
        CatalogSpec::parse(text).map_err(|e| relabel(key, e))
    }

    pub fn choice(&self, key: &'static str, default: &str, allowed: &[&str]) -> Result<String> {
        let v = self.raw(key).unwrap_or(default);
        if !allowed.contains(&v) {
            return Err(LabError::field(
                key,
                format!("'{v}' is not one of: {}", allowed.join(", ")),
            ));
        }
        Ok(v.to_string())
    }

    /// Errors on keys nobody read.
    pub fn finish(self) -> Result<()> {
        let used = self.used.into_inner();
        if let Some((k, e)) = self.config.entries.iter().find(|(k, _)| !used.contains(k.as_str())) {
            return Err(LabError::Field {
                key: k.clone(),
                message: format!("unknown key for [{}] (line {})", self.config.kind, e.line),
            });
        }
        Ok(())
    }
}

/// Puts a spec or core error under the field that produced it.
pub(crate) fn relabel(key: &str, e: LabError) -> LabError {
    match e {
        LabError::Field { message, .. } => LabError::field(key, message),
        LabError::Core(c) => LabError::field(key, c.to_string()),
        other => other,
    }
}
