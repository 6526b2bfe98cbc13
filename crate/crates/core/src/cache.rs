//! On-disk relation cache and tau memo persistence.
//!
//! Each relation lives in its own JSON document, keyed by genus, block
//! sizes and Chern degree, and is never rewritten once created. Documents
//! from a different engine version are ignored.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::kappa::KappaPoly;
use crate::relations::{DiagonalPlan, RelationRecord};
use crate::tau::TauTable;
use crate::ENGINE_VERSION;

/// Environment variable naming the cache root.
pub const CACHE_ENV: &str = "TAUTRING_CACHE_DIR";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Complete,
    Incomplete,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheDoc {
    pub engine_version: String,
    pub g: u32,
    pub plan: DiagonalPlan,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub relation: Option<KappaPoly>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
    pub created_unix: u64,
}

#[derive(Clone, Debug)]
pub struct RelationCache {
    root: PathBuf,
}

impl RelationCache {
    pub fn new(root: impl Into<PathBuf>) -> Self {
        RelationCache { root: root.into() }
    }

    /// The cache named by [`CACHE_ENV`], if set.
    pub fn from_env() -> Option<Self> {
        std::env::var_os(CACHE_ENV).map(Self::new)
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    fn file_name(plan: &DiagonalPlan, status: Status) -> String {
        let mut name = format!("alpha-{}", plan.alpha.parts().iter().map(u32::to_string).collect::<Vec<_>>().join("-"));
        if plan.k_powers.iter().any(|&k| k > 0) {
            name.push_str(&format!("-k-{}", plan.k_powers.iter().map(u32::to_string).collect::<Vec<_>>().join("-")));
        }
        name.push_str(&format!("-j{}", plan.j));
        match status {
            Status::Complete => name + ".json",
            Status::Incomplete => name + ".incomplete.json",
        }
    }

    fn path(&self, g: u32, plan: &DiagonalPlan, status: Status) -> PathBuf {
        self.root
            .join(ENGINE_VERSION)
            .join(format!("g{g}"))
            .join(Self::file_name(plan, status))
    }

    /// A complete relation for this plan, if cached by this engine version.
    pub fn load(&self, g: u32, plan: &DiagonalPlan) -> Result<Option<RelationRecord>> {
        let path = self.path(g, plan, Status::Complete);
        if !path.exists() {
            return Ok(None);
        }
        let doc: CacheDoc = serde_json::from_str(&fs::read_to_string(&path)?)?;
        if doc.engine_version != ENGINE_VERSION || doc.status != Status::Complete || doc.plan != *plan {
            return Ok(None);
        }
        Ok(doc.relation.map(|relation| RelationRecord {
            g,
            plan: plan.clone(),
            relation,
        }))
    }

    fn write_new(&self, path: &Path, doc: &CacheDoc) -> Result<()> {
        if let Some(dir) = path.parent() {
            fs::create_dir_all(dir)?;
        }
        let body = serde_json::to_string_pretty(doc)?;
        match fs::OpenOptions::new().write(true).create_new(true).open(path) {
            Ok(mut f) => {
                f.write_all(body.as_bytes())?;
                Ok(())
            }
            // documents are immutable: an existing one wins
            Err(e) if e.kind() == std::io::ErrorKind::AlreadyExists => Ok(()),
            Err(e) => Err(e.into()),
        }
    }

    pub fn store(&self, record: &RelationRecord) -> Result<()> {
        let doc = CacheDoc {
            engine_version: ENGINE_VERSION.to_string(),
            g: record.g,
            plan: record.plan.clone(),
            status: Status::Complete,
            relation: Some(record.relation.clone()),
            note: None,
            created_unix: now(),
        };
        self.write_new(&self.path(record.g, &record.plan, Status::Complete), &doc)
    }

    /// Records that a plan could not be finished within its resource caps.
    pub fn store_incomplete(&self, g: u32, plan: &DiagonalPlan, note: &str) -> Result<()> {
        let doc = CacheDoc {
            engine_version: ENGINE_VERSION.to_string(),
            g,
            plan: plan.clone(),
            status: Status::Incomplete,
            relation: None,
            note: Some(note.to_string()),
            created_unix: now(),
        };
        self.write_new(&self.path(g, plan, Status::Incomplete), &doc)
    }

    /// All documents under the root, sorted by path.
    pub fn list(&self) -> Result<Vec<(PathBuf, CacheDoc)>> {
        let mut out = Vec::new();
        let mut stack = vec![self.root.clone()];
        while let Some(dir) = stack.pop() {
            let Ok(entries) = fs::read_dir(&dir) else { continue };
            for entry in entries {
                let path = entry?.path();
                if path.is_dir() {
                    stack.push(path);
                } else if path.extension().is_some_and(|e| e == "json") && path.file_name() != Some(TAU_FILE.as_ref()) {
                    if let Ok(doc) = serde_json::from_str::<CacheDoc>(&fs::read_to_string(&path)?) {
                        out.push((path, doc));
                    }
                }
            }
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(out)
    }

    /// Removes the whole cache tree.
    pub fn clear(&self) -> Result<()> {
        if self.root.exists() {
            fs::remove_dir_all(&self.root)?;
        }
        Ok(())
    }

    fn tau_path(&self) -> PathBuf {
        self.root.join(TAU_FILE)
    }

    /// The persisted tau memo, or an empty table.
    pub fn load_tau(&self) -> Result<TauTable> {
        let path = self.tau_path();
        if !path.exists() {
            return Ok(TauTable::new());
        }
        let value: serde_json::Value = serde_json::from_str(&fs::read_to_string(path)?)?;
        TauTable::from_json(&value)
    }

    /// Writes the tau memo atomically (write then rename).
    pub fn save_tau(&self, table: &TauTable) -> Result<()> {
        fs::create_dir_all(&self.root)?;
        let tmp = self.root.join(format!(".{TAU_FILE}.{}", std::process::id()));
        fs::write(&tmp, serde_json::to_string(&table.to_json())?)?;
        fs::rename(tmp, self.tau_path())?;
        Ok(())
    }
}

const TAU_FILE: &str = "tau.json";

fn now() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::Partition;

    #[test]
    fn store_load_immutable() {
        let dir = tempfile::tempdir().unwrap();
        let cache = RelationCache::new(dir.path());
        let plan = DiagonalPlan::new(3, Partition::new(vec![5]), 3).unwrap();
        assert!(cache.load(3, &plan).unwrap().is_none());
        let rec = RelationRecord {
            g: 3,
            plan: plan.clone(),
            relation: KappaPoly::kappa(2),
        };
        cache.store(&rec).unwrap();
        let other = RelationRecord {
            relation: KappaPoly::kappa(1),
            ..rec.clone()
        };
        cache.store(&other).unwrap();
        assert_eq!(cache.load(3, &plan).unwrap(), Some(rec));
        cache.store_incomplete(3, &plan, "cap").unwrap();
        assert_eq!(cache.list().unwrap().len(), 2);
        cache.clear().unwrap();
        assert!(cache.list().unwrap().is_empty());
    }
}
