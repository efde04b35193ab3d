//! On-disk store of derived zeta data, a JSON array of entries. Writes go
//! to a temporary file in the same directory and are renamed into place.

use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::{GlzetaError, GroupKey, Provenance, Q0};
use crate::polyq::{DegreeMultiset, ZetaSum};

/// Environment variable naming the default cache file.
pub const CACHE_ENV: &str = "GLO2_CACHE";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CachedZeta {
    Symbolic(ZetaSum),
    Evaluated(DegreeMultiset),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZetaCacheEntry {
    pub key: GroupKey,
    pub q0: Q0,
    pub zeta: CachedZeta,
    pub provenance: Provenance,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub support: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree_bound: Option<u32>,
}

#[derive(Clone, Debug, Default)]
pub struct ZetaCache {
    path: Option<PathBuf>,
    entries: Vec<ZetaCacheEntry>,
}

impl ZetaCache {
    /// A cache that is never written.
    pub fn in_memory() -> Self {
        ZetaCache::default()
    }

    /// Loads `path`, or starts empty if it does not exist.
    pub fn open(path: impl Into<PathBuf>) -> Result<Self, GlzetaError> {
        let path = path.into();
        let entries = match std::fs::read_to_string(&path) {
            Ok(text) if text.trim().is_empty() => Vec::new(),
            Ok(text) => serde_json::from_str(&text)
                .map_err(|e| GlzetaError::Cache(format!("{}: {e}", path.display())))?,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Vec::new(),
            Err(e) => return Err(GlzetaError::Cache(format!("{}: {e}", path.display()))),
        };
        Ok(ZetaCache {
            path: Some(path),
            entries,
        })
    }

    pub fn path(&self) -> Option<&Path> {
        self.path.as_deref()
    }

    pub fn entries(&self) -> &[ZetaCacheEntry] {
        &self.entries
    }

    pub fn get(&self, key: &GroupKey, q0: Q0) -> Option<&ZetaCacheEntry> {
        self.entries.iter().find(|e| &e.key == key && e.q0 == q0)
    }

    /// Inserts or replaces the entry for `(key, q0)` and saves.
    pub fn put(&mut self, entry: ZetaCacheEntry) -> Result<(), GlzetaError> {
        self.entries
            .retain(|e| !(e.key == entry.key && e.q0 == entry.q0));
        self.entries.push(entry);
        self.entries.sort_by(|a, b| (&a.key, a.q0).cmp(&(&b.key, b.q0)));
        self.save()
    }

    /// Removes entries for `key` (every `q0` when `q0` is `None`).
    pub fn evict(&mut self, key: &GroupKey, q0: Option<Q0>) -> Result<usize, GlzetaError> {
        let before = self.entries.len();
        self.entries
            .retain(|e| !(&e.key == key && q0.is_none_or(|q| q == e.q0)));
        let removed = before - self.entries.len();
        self.save()?;
        Ok(removed)
    }

    pub fn clear(&mut self) -> Result<(), GlzetaError> {
        self.entries.clear();
        self.save()
    }

    fn save(&self) -> Result<(), GlzetaError> {
        let Some(path) = &self.path else {
            return Ok(());
        };
        let io = |e: std::io::Error| GlzetaError::Cache(format!("{}: {e}", path.display()));
        let dir = match path.parent() {
            Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
            _ => PathBuf::from("."),
        };
        std::fs::create_dir_all(&dir).map_err(io)?;
        let mut tmp = tempfile::NamedTempFile::new_in(&dir).map_err(io)?;
        let text = serde_json::to_string_pretty(&self.entries)
            .map_err(|e| GlzetaError::Cache(e.to_string()))?;
        tmp.write_all(text.as_bytes()).map_err(io)?;
        tmp.write_all(b"\n").map_err(io)?;
        tmp.persist(path).map_err(|e| io(e.error))?;
        Ok(())
    }
}
