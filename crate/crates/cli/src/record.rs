//! Result records and the on-disk cache.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub schema_version: u32,
    pub kind: String,
    pub params: Map<String, Value>,
    pub values: Vec<String>,
    pub method: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<u64>,
}

impl ResultRecord {
    pub fn new(kind: &str, params: Map<String, Value>, values: Vec<String>, method: &str) -> Self {
        ResultRecord {
            schema_version: SCHEMA_VERSION,
            kind: kind.to_string(),
            params,
            values,
            method: method.to_string(),
            runtime_ms: None,
        }
    }

    fn same_key(&self, other: &ResultRecord) -> bool {
        self.schema_version == other.schema_version
            && self.kind == other.kind
            && self.params == other.params
            && self.method == other.method
    }
}

/// Build a params object from `(name, integer)` pairs.
pub fn params<const N: usize>(pairs: [(&str, u64); N]) -> Map<String, Value> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), Value::from(v))).collect()
}

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn open(dir: &Path) -> std::io::Result<Self> {
        fs::create_dir_all(dir)?;
        Ok(Cache { dir: dir.to_path_buf() })
    }

    fn path(&self, probe: &ResultRecord) -> PathBuf {
        let key = serde_json::json!([probe.schema_version, probe.kind, probe.params, probe.method]);
        let digest = Sha256::digest(key.to_string().as_bytes());
        self.dir.join(format!("{}.json", hex::encode(digest)))
    }

    /// Look up the entry for `probe`'s key. Unreadable, corrupted or
    /// mismatched entries are reported on stderr and treated as misses.
    pub fn get(&self, probe: &ResultRecord) -> Option<ResultRecord> {
        let path = self.path(probe);
        let text = fs::read_to_string(&path).ok()?;
        match serde_json::from_str::<ResultRecord>(&text) {
            Ok(rec) if rec.same_key(probe) => Some(rec),
            Ok(_) => {
                eprintln!("warning: ignoring cache entry {} (key or schema mismatch)", path.display());
                None
            }
            Err(e) => {
                eprintln!("warning: ignoring corrupted cache entry {}: {e}", path.display());
                None
            }
        }
    }

    pub fn put(&self, rec: &ResultRecord) -> std::io::Result<()> {
        let path = self.path(rec);
        let tmp = path.with_extension("tmp");
        let mut stored = rec.clone();
        stored.runtime_ms = None;
        fs::write(&tmp, serde_json::to_string(&stored).expect("record serializes"))?;
        fs::rename(tmp, path)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(v: &str) -> ResultRecord {
        ResultRecord::new("whitney", params([("q", 2), ("n", 3), ("d", 2)]), vec![v.into()], "exact")
    }

    #[test]
    fn round_trip_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::open(dir.path()).unwrap();
        assert!(cache.get(&rec("1")).is_none());
        cache.put(&rec("1")).unwrap();
        assert_eq!(cache.get(&rec("0")).unwrap().values, vec!["1"]);

        let path = cache.path(&rec("1"));
        fs::write(&path, "{ not json").unwrap();
        assert!(cache.get(&rec("1")).is_none());

        let mut old = rec("1");
        old.schema_version = 0;
        fs::write(&path, serde_json::to_string(&old).unwrap()).unwrap();
        assert!(cache.get(&rec("1")).is_none());
    }
}
