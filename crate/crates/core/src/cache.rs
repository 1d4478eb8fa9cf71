//! Content-addressed disk cache for structure constants.
//!
//! Layout: `<root>/<first two hex digits>/<sha256>.json`, one file per
//! `(n, u, v)`. Writes go to a temporary file in the same shard and are
//! renamed into place, so readers never see a partial file.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::ortho::{structure_constants, StructureConstants, StructureJson};
use crate::weyl::SignedPermutation;

/// Environment variable that overrides the cache directory.
pub const CACHE_ENV: &str = "ORTHOSCHUBERT_CACHE_DIR";

/// Bumped whenever the cached payload would change.
const FORMAT_VERSION: &str = "structure-v1";

#[derive(Clone, Debug)]
pub struct StructureCache {
    root: PathBuf,
}

fn cache_err(path: &Path, e: impl std::fmt::Display) -> Error {
    Error::Cache(format!("{}: {e}", path.display()))
}

impl StructureCache {
    pub fn new(root: impl Into<PathBuf>) -> Self {
        StructureCache { root: root.into() }
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn key(u: &SignedPermutation, v: &SignedPermutation) -> String {
        let mut h = Sha256::new();
        h.update(format!("{FORMAT_VERSION}|{}|{u}|{v}", u.n()).as_bytes());
        hex::encode(h.finalize())
    }

    pub fn path_for(&self, u: &SignedPermutation, v: &SignedPermutation) -> PathBuf {
        let key = Self::key(u, v);
        self.root.join(&key[..2]).join(format!("{key}.json"))
    }

    pub fn load(&self, u: &SignedPermutation, v: &SignedPermutation) -> Result<Option<StructureConstants>> {
        let path = self.path_for(u, v);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(cache_err(&path, e)),
        };
        let j: StructureJson = serde_json::from_str(&text).map_err(|e| cache_err(&path, e))?;
        let sc = StructureConstants::from_json(&j).map_err(|e| cache_err(&path, e))?;
        if sc.u != *u || sc.v != *v {
            return Err(cache_err(&path, "entry does not match its key"));
        }
        Ok(Some(sc))
    }

    pub fn store(&self, sc: &StructureConstants) -> Result<PathBuf> {
        static COUNTER: AtomicU64 = AtomicU64::new(0);
        let path = self.path_for(&sc.u, &sc.v);
        let dir = path.parent().expect("sharded path has a parent");
        fs::create_dir_all(dir).map_err(|e| cache_err(dir, e))?;
        let tmp = dir.join(format!(
            ".tmp-{}-{}",
            std::process::id(),
            COUNTER.fetch_add(1, Ordering::Relaxed)
        ));
        let body = serde_json::to_string_pretty(&sc.to_json()).map_err(|e| cache_err(&path, e))?;
        let mut f = fs::File::create(&tmp).map_err(|e| cache_err(&tmp, e))?;
        f.write_all(body.as_bytes()).map_err(|e| cache_err(&tmp, e))?;
        f.sync_all().map_err(|e| cache_err(&tmp, e))?;
        fs::rename(&tmp, &path).map_err(|e| cache_err(&path, e))?;
        Ok(path)
    }

    /// Returns the constants and whether they came from disk.
    pub fn get_or_compute(&self, u: &SignedPermutation, v: &SignedPermutation) -> Result<(StructureConstants, bool)> {
        if let Some(sc) = self.load(u, v)? {
            return Ok((sc, true));
        }
        let sc = structure_constants(u, v)?;
        self.store(&sc)?;
        Ok((sc, false))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(v: &[i32]) -> SignedPermutation {
        SignedPermutation::new(v.to_vec()).unwrap()
    }

    #[test]
    fn roundtrip_and_hit() {
        let dir = tempfile::tempdir().unwrap();
        let cache = StructureCache::new(dir.path());
        let u = sp(&[-2, -1, 3]);
        let (a, hit) = cache.get_or_compute(&u, &u).unwrap();
        assert!(!hit);
        let (b, hit) = cache.get_or_compute(&u, &u).unwrap();
        assert!(hit);
        assert_eq!(a, b);
        let path = cache.path_for(&u, &u);
        assert!(path.exists());
        let shard = path.parent().unwrap().file_name().unwrap().to_str().unwrap().to_string();
        assert_eq!(shard.len(), 2);
        let leftovers = fs::read_dir(path.parent().unwrap())
            .unwrap()
            .filter(|e| e.as_ref().unwrap().file_name().to_string_lossy().starts_with(".tmp"))
            .count();
        assert_eq!(leftovers, 0);
    }

    #[test]
    fn keys_are_distinct_and_stable() {
        let u = sp(&[2, 1, 3]);
        let v = sp(&[1, 3, 2]);
        assert_ne!(StructureCache::key(&u, &v), StructureCache::key(&v, &u));
        assert_eq!(StructureCache::key(&u, &v), StructureCache::key(&u, &v));
    }

    #[test]
    fn corrupt_entry_is_reported() {
        let dir = tempfile::tempdir().unwrap();
        let cache = StructureCache::new(dir.path());
        let u = sp(&[2, 1, 3]);
        let path = cache.path_for(&u, &u);
        fs::create_dir_all(path.parent().unwrap()).unwrap();
        fs::write(&path, "{not json").unwrap();
        assert!(matches!(cache.load(&u, &u), Err(Error::Cache(_))));
    }
}
