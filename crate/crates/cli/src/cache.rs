//! Content-addressed result cache. Entries are plain JSON keyed by
//! (module, operation, canonical parameters) and written by atomic rename.

use std::fs;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use liftcong::{Error, Result};

pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    pub fn new(dir: Option<PathBuf>) -> Self {
        Cache { dir }
    }

    fn path(&self, module: &str, op: &str, params: &Value) -> Option<PathBuf> {
        // serde_json maps are ordered, so this text is canonical.
        let material = format!("{module}\n{op}\n{params}");
        let digest = Sha256::digest(material.as_bytes());
        let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
        self.dir.as_ref().map(|d| d.join(module).join(format!("{op}-{}.json", &hex[..32])))
    }

    /// Returns the cached value, or computes, stores and returns it.
    pub fn get_or_compute(&self, module: &str, op: &str, params: Value, compute: impl FnOnce() -> Result<Value>) -> Result<Value> {
        let Some(path) = self.path(module, op, &params) else {
            return compute();
        };
        if let Some(v) = read_entry(&path, module, op, &params) {
            return Ok(v);
        }
        let value = compute()?;
        let entry = json!({"module": module, "operation": op, "params": params, "value": value});
        write_atomic(&path, &serde_json::to_string_pretty(&entry).expect("serializable"))?;
        Ok(value)
    }
}

/// A readable entry whose recorded key matches; anything else is a miss.
fn read_entry(path: &Path, module: &str, op: &str, params: &Value) -> Option<Value> {
    let text = fs::read_to_string(path).ok()?;
    let mut entry: Value = serde_json::from_str(&text).ok()?;
    let same = entry["module"] == module && entry["operation"] == op && &entry["params"] == params;
    same.then(|| entry["value"].take())
}

fn write_atomic(path: &Path, text: &str) -> Result<()> {
    let io = |e: std::io::Error| Error::Io(format!("{}: {e}", path.display()));
    let dir = path.parent().expect("cache paths have a parent");
    fs::create_dir_all(dir).map_err(io)?;
    let tmp = dir.join(format!(".{}.{}.tmp", path.file_name().unwrap().to_string_lossy(), std::process::id()));
    fs::write(&tmp, text).map_err(io)?;
    fs::rename(&tmp, path).map_err(io)
}
