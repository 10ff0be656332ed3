//! Content-addressed record cache: one JSON file per (canonical word,
//! config fingerprint, code version).

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::report::ClassificationRecord;

/// Bump when a change alters what the searches report.
pub const CODE_VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "+search-2");

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn open(dir: &Path) -> io::Result<Cache> {
        fs::create_dir_all(dir)?;
        Ok(Cache { dir: dir.to_path_buf() })
    }

    pub fn key(word: &str, fingerprint: &str) -> String {
        let mut h = Sha256::new();
        for part in [CODE_VERSION, fingerprint, word] {
            h.update((part.len() as u64).to_le_bytes());
            h.update(part.as_bytes());
        }
        hex::encode(h.finalize())
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// A stored record, or `None` on a miss. Unreadable or foreign entries
    /// count as misses.
    pub fn get(&self, key: &str, word: &str) -> Option<ClassificationRecord> {
        let text = fs::read_to_string(self.path(key)).ok()?;
        let record: ClassificationRecord = serde_json::from_str(&text).ok()?;
        (record.canonical_word == word).then_some(record)
    }

    /// Writes through a temporary file so readers never see partial entries.
    pub fn put(&self, key: &str, record: &ClassificationRecord) -> io::Result<()> {
        let tmp = self.dir.join(format!(".{key}.{}.tmp", std::process::id()));
        fs::write(&tmp, serde_json::to_string(record)?)?;
        fs::rename(&tmp, self.path(key))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::{PathConditionReport, SCHEMA_VERSION};

    #[test]
    fn keys_separate_inputs() {
        let a = Cache::key("***+", "cfg");
        assert_eq!(a.len(), 64);
        assert_eq!(a, Cache::key("***+", "cfg"));
        assert_ne!(a, Cache::key("***-", "cfg"));
        assert_ne!(a, Cache::key("***+", "cfg2"));
        assert_ne!(Cache::key("ab", "c"), Cache::key("a", "bc"));
    }

    #[test]
    fn put_then_get() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::open(dir.path()).unwrap();
        let r = ClassificationRecord {
            schema_version: SCHEMA_VERSION,
            canonical_word: "****".into(),
            girth: 4,
            automorphism_count: 8,
            path_condition: PathConditionReport::default(),
            slupecki: vec![],
            mismatch: false,
            errors: vec![],
        };
        let key = Cache::key("****", "x");
        assert_eq!(cache.get(&key, "****"), None);
        cache.put(&key, &r).unwrap();
        assert_eq!(cache.get(&key, "****"), Some(r));
        assert_eq!(cache.get(&key, "***+"), None);
    }
}
