use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::complex::HomologyEntry;
use crate::web::BracketCache;
use crate::{LaurentPoly, Result};

pub const CACHE_ENV: &str = "SL3_CACHE_DIR";

/// On-disk cache: web brackets keyed by canonical component code, and
/// homology tables keyed by a hash of the diagram.
#[derive(Clone, Debug)]
pub struct DiskCache {
    root: PathBuf,
}

#[derive(Serialize, Deserialize)]
struct BracketEntry {
    code: Vec<u32>,
    value: LaurentPoly,
}

pub fn default_dir() -> PathBuf {
    if let Some(dir) = std::env::var_os(CACHE_ENV) {
        return PathBuf::from(dir);
    }
    if let Some(dir) = std::env::var_os("XDG_CACHE_HOME") {
        return PathBuf::from(dir).join("sl3");
    }
    if let Some(home) = std::env::var_os("HOME") {
        return PathBuf::from(home).join(".cache").join("sl3");
    }
    PathBuf::from(".sl3-cache")
}

pub fn content_hash(text: &str) -> String {
    Sha256::digest(text.as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

impl DiskCache {
    pub fn open(root: &Path) -> Result<Self> {
        fs::create_dir_all(root.join("homology"))?;
        Ok(Self {
            root: root.to_path_buf(),
        })
    }

    fn brackets_path(&self) -> PathBuf {
        self.root.join("brackets.json")
    }

    /// Seed the in-memory bracket memo. A corrupt file is ignored.
    pub fn load_brackets(&self, into: &BracketCache) {
        let Ok(text) = fs::read_to_string(self.brackets_path()) else {
            return;
        };
        if let Ok(entries) = serde_json::from_str::<Vec<BracketEntry>>(&text) {
            for e in entries {
                into.insert(e.code, e.value);
            }
        }
    }

    pub fn save_brackets(&self, from: &BracketCache) -> Result<()> {
        let mut entries: Vec<BracketEntry> = from
            .entries()
            .into_iter()
            .map(|(code, value)| BracketEntry { code, value })
            .collect();
        entries.sort_by(|a, b| a.code.cmp(&b.code));
        let tmp = self.root.join("brackets.json.tmp");
        fs::write(&tmp, serde_json::to_string(&entries)?)?;
        fs::rename(tmp, self.brackets_path())?;
        Ok(())
    }

    fn homology_path(&self, key: &str) -> PathBuf {
        self.root
            .join("homology")
            .join(format!("{}.json", content_hash(key)))
    }

    pub fn get_homology(&self, key: &str) -> Option<Vec<HomologyEntry>> {
        let text = fs::read_to_string(self.homology_path(key)).ok()?;
        serde_json::from_str(&text).ok()
    }

    pub fn put_homology(&self, key: &str, h: &[HomologyEntry]) -> Result<()> {
        fs::write(self.homology_path(key), serde_json::to_string(h)?)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let cache = DiskCache::open(dir.path()).unwrap();
        let mem = BracketCache::new();
        mem.insert(vec![1, 2, 3], LaurentPoly::quantum_int(2));
        cache.save_brackets(&mem).unwrap();
        let back = BracketCache::new();
        cache.load_brackets(&back);
        assert_eq!(back.get(&[1, 2, 3]), Some(LaurentPoly::quantum_int(2)));
        assert!(cache.get_homology("x").is_none());
        let h = vec![HomologyEntry {
            i: 0,
            j: 2,
            rank: 1,
            torsion: vec![],
        }];
        cache.put_homology("x", &h).unwrap();
        assert_eq!(cache.get_homology("x"), Some(h));
    }
}
