use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::Failure;

/// Side record of a run. Everything volatile (clock readings) lives here so
/// the artifacts themselves stay byte-reproducible.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub version: String,
    pub parameters: BTreeMap<String, Value>,
    pub grid_size: Option<usize>,
    pub tolerances: BTreeMap<String, f64>,
    pub seed: Option<u64>,
    pub started_unix_s: u64,
    pub wall_time_s: f64,
    /// Artifact path to sha256 hex digest.
    pub artifacts: BTreeMap<String, String>,
    /// Emitted field or column to "computed" / "paper-transcribed".
    pub provenance: BTreeMap<String, String>,
}

pub struct Recorder {
    pub manifest: RunManifest,
    start: Instant,
    target: Option<PathBuf>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    format!("{:x}", Sha256::digest(bytes))
}

impl Recorder {
    pub fn new(command: &str, manifest_path: Option<PathBuf>, out: Option<&Path>) -> Self {
        let target = manifest_path.or_else(|| out.map(|p| sidecar(p)));
        let started = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
        Recorder {
            manifest: RunManifest {
                command: command.to_string(),
                version: env!("CARGO_PKG_VERSION").to_string(),
                parameters: BTreeMap::new(),
                grid_size: None,
                tolerances: BTreeMap::new(),
                seed: None,
                started_unix_s: started,
                wall_time_s: 0.0,
                artifacts: BTreeMap::new(),
                provenance: BTreeMap::new(),
            },
            start: Instant::now(),
            target,
        }
    }

    pub fn param(&mut self, key: &str, v: impl Serialize) {
        let v = serde_json::to_value(v).unwrap_or(Value::Null);
        self.manifest.parameters.insert(key.to_string(), v);
    }

    pub fn tol(&mut self, key: &str, v: f64) {
        self.manifest.tolerances.insert(key.to_string(), v);
    }

    pub fn tag(&mut self, keys: &[&str], tag: &str) {
        for k in keys {
            self.manifest.provenance.insert(k.to_string(), tag.to_string());
        }
    }

    /// Write an artifact to `out`, or to stdout when `out` is None.
    pub fn emit(&mut self, out: Option<&Path>, bytes: &[u8]) -> Result<(), Failure> {
        match out {
            Some(p) => {
                std::fs::write(p, bytes).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", p.display())))?;
                self.manifest.artifacts.insert(p.display().to_string(), sha256_hex(bytes));
            }
            None => {
                use std::io::Write;
                std::io::stdout().write_all(bytes).map_err(|e| Failure::Usage(format!("stdout: {e}")))?;
                self.manifest.artifacts.insert("-".into(), sha256_hex(bytes));
            }
        }
        Ok(())
    }

    pub fn finish(mut self) -> Result<(), Failure> {
        self.manifest.wall_time_s = self.start.elapsed().as_secs_f64();
        if let Some(p) = &self.target {
            let mut s = serde_json::to_string_pretty(&self.manifest).expect("manifest serializes");
            s.push('\n');
            std::fs::write(p, s).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", p.display())))?;
        }
        Ok(())
    }
}

fn sidecar(out: &Path) -> PathBuf {
    let mut name = out.file_name().map(|s| s.to_os_string()).unwrap_or_default();
    name.push(".manifest.json");
    out.with_file_name(name)
}
