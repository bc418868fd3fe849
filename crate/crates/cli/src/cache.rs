//! On-disk result cache: one JSON file per key, written atomically.
//!
//! The cache is a convenience layer only. Every command must produce the
//! same bytes with the cache disabled, so entries are never trusted blindly:
//! a file that fails to parse, or whose embedded key disagrees with the
//! requested one, is evicted and recomputed.

use serde::{Deserialize, Serialize};
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};
use std::time::{SystemTime, UNIX_EPOCH};

/// Identifies one cached result. `n` is the variable count for polynomial
/// results and the partition size for whole tables; `partition` is the
/// canonical comma-separated form and stays empty for table entries.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct CacheKey {
    pub kind: String,
    pub partition: String,
    pub n: u64,
    pub version: String,
}

impl CacheKey {
    pub fn new(kind: &str, partition: &str, n: u64) -> Self {
        CacheKey {
            kind: kind.to_string(),
            partition: partition.to_string(),
            n,
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    /// Readable file name, e.g. `J_3-1_n4_v0.1.0.json` for a polynomial or
    /// `K_n3_v0.1.0.json` for a table.
    pub fn file_name(&self) -> String {
        if self.partition.is_empty() {
            format!("{}_n{}_v{}.json", self.kind, self.n, self.version)
        } else {
            let part = self.partition.replace(',', "-");
            format!("{}_{}_n{}_v{}.json", self.kind, part, self.n, self.version)
        }
    }

    fn path_in(&self, dir: &Path) -> PathBuf {
        dir.join(self.file_name())
    }
}

#[derive(Serialize, Deserialize)]
struct CacheEntry {
    key: CacheKey,
    created_at: u64,
    payload: serde_json::Value,
}

/// Look a key up. Unreadable files are a miss; files that parse but carry a
/// different key, or do not parse at all, are corrupted and get evicted.
pub fn get(dir: &Path, key: &CacheKey) -> Option<serde_json::Value> {
    let path = key.path_in(dir);
    let text = fs::read_to_string(&path).ok()?;
    match serde_json::from_str::<CacheEntry>(&text) {
        Ok(entry) if entry.key == *key => Some(entry.payload),
        _ => {
            let _ = fs::remove_file(&path);
            None
        }
    }
}

/// Drop an entry whose payload turned out to be unusable downstream.
pub fn evict(dir: &Path, key: &CacheKey) {
    let _ = fs::remove_file(key.path_in(dir));
}

static TMP_SEQ: AtomicU64 = AtomicU64::new(0);

/// Store a payload atomically: write a private temporary, then rename onto
/// the final name, so readers only ever observe complete files and a
/// concurrent double-put leaves one intact winner.
pub fn put(dir: &Path, key: &CacheKey, payload: serde_json::Value) -> Result<(), String> {
    fs::create_dir_all(dir).map_err(|e| format!("{}: {e}", dir.display()))?;
    let created_at = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    let entry = CacheEntry { key: key.clone(), created_at, payload };
    let body = serde_json::to_vec_pretty(&entry).map_err(|e| e.to_string())?;
    let final_path = key.path_in(dir);
    let tmp = dir.join(format!(
        ".{}.tmp-{}-{}",
        key.file_name(),
        std::process::id(),
        TMP_SEQ.fetch_add(1, Ordering::Relaxed)
    ));
    fs::write(&tmp, body).map_err(|e| format!("{}: {e}", tmp.display()))?;
    fs::rename(&tmp, &final_path).map_err(|e| format!("{}: {e}", final_path.display()))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scratch(tag: &str) -> PathBuf {
        let dir = std::env::temp_dir()
            .join(format!("macqt-cache-test-{}-{tag}", std::process::id()));
        let _ = fs::remove_dir_all(&dir);
        dir
    }

    #[test]
    fn put_then_get_round_trips() {
        let dir = scratch("roundtrip");
        let key = CacheKey::new("J", "3,1", 4);
        assert_eq!(key.file_name(), format!("J_3-1_n4_v{}.json", env!("CARGO_PKG_VERSION")));
        assert!(get(&dir, &key).is_none(), "miss before put");
        let payload = serde_json::json!({"coefficients": [["3,1", {"num": [], "den": []}]]});
        put(&dir, &key, payload.clone()).unwrap();
        assert_eq!(get(&dir, &key), Some(payload));
        let _ = fs::remove_dir_all(&dir);
    }

    #[test]
    fn corrupted_entries_are_evicted() {
        let dir = scratch("evict");
        let key = CacheKey::new("K", "", 3);
        put(&dir, &key, serde_json::json!({"partitions": []})).unwrap();
        let path = dir.join(key.file_name());
        fs::write(&path, b"{ not json").unwrap();
        assert!(get(&dir, &key).is_none());
        assert!(!path.exists(), "corrupted file should be removed");
        let _ = fs::remove_dir_all(&dir);
    }

    #[test]
    fn key_mismatch_is_treated_as_corruption() {
        let dir = scratch("mismatch");
        let stored = CacheKey::new("B", "", 2);
        put(&dir, &stored, serde_json::json!(1)).unwrap();
        // plant the stored entry under a foreign key's file name, as a stale
        // or hand-edited cache might
        let asked = CacheKey::new("K", "", 2);
        fs::copy(dir.join(stored.file_name()), dir.join(asked.file_name())).unwrap();
        assert!(get(&dir, &asked).is_none(), "embedded key disagrees");
        assert!(!dir.join(asked.file_name()).exists(), "planted file evicted");
        assert!(get(&dir, &stored).is_some(), "genuine entry untouched");
        let _ = fs::remove_dir_all(&dir);
    }
}
