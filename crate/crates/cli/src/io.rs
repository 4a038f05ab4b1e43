//! JSON input/output, input hashing and run manifests.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context, Result};
use serde::de::DeserializeOwned;
use serde::Serialize;
use sha2::{Digest, Sha256};

use wiretap_nc::{CosetCode, FMatrix};

/// Pretty JSON with a trailing newline; the only format results are written in.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

/// Everything a run reads and reports, written next to its output.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: Vec<String>,
    pub inputs: BTreeMap<String, String>,
    pub seed: u64,
    pub version: String,
    pub timings_ms: BTreeMap<String, f64>,
    pub summary: serde_json::Value,
}

pub struct Run {
    manifest: RunManifest,
    started: Instant,
}

impl Run {
    pub fn new(seed: u64) -> Run {
        Run {
            manifest: RunManifest {
                command: std::env::args().skip(1).collect(),
                inputs: BTreeMap::new(),
                seed,
                version: wiretap_nc::VERSION.to_string(),
                timings_ms: BTreeMap::new(),
                summary: serde_json::Value::Null,
            },
            started: Instant::now(),
        }
    }

    pub fn seed(&self) -> u64 {
        self.manifest.seed
    }

    /// Reads a file and records its SHA-256.
    pub fn read(&mut self, path: &Path) -> Result<String> {
        let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
        self.manifest.inputs.insert(
            path.display().to_string(),
            hex::encode(Sha256::digest(&bytes)),
        );
        String::from_utf8(bytes).with_context(|| format!("{} is not UTF-8", path.display()))
    }

    pub fn read_json<T: DeserializeOwned>(&mut self, path: &Path) -> Result<T> {
        let text = self.read(path)?;
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    }

    /// A parity-check matrix given either as a matrix literal or as `{"H": literal}`.
    pub fn read_parity_check(&mut self, path: &Path) -> Result<FMatrix> {
        let text = self.read(path)?;
        if let Ok(code) = serde_json::from_str::<CosetCode>(&text) {
            return Ok(code.parity_check().clone());
        }
        serde_json::from_str(&text).with_context(|| format!("parsing matrix {}", path.display()))
    }

    pub fn time<T>(&mut self, label: &str, f: impl FnOnce() -> T) -> T {
        let t = Instant::now();
        let out = f();
        self.manifest
            .timings_ms
            .insert(label.to_string(), t.elapsed().as_secs_f64() * 1e3);
        out
    }

    pub fn summarize(&mut self, summary: serde_json::Value) {
        self.manifest.summary = summary;
    }

    /// Writes the manifest to `path`, stamping the total wall time.
    pub fn finish(mut self, path: &Path) -> Result<()> {
        self.manifest
            .timings_ms
            .insert("total".into(), self.started.elapsed().as_secs_f64() * 1e3);
        write(path, &to_json(&self.manifest)?)
    }
}

pub fn write(path: &Path, contents: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

pub fn manifest_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".manifest.json");
    PathBuf::from(name)
}

/// A vector given inline as a JSON array or as the path of a file holding one.
pub fn read_vector(run: &mut Run, arg: &str) -> Result<Vec<u32>> {
    let text = if arg.trim_start().starts_with('[') {
        arg.to_string()
    } else {
        run.read(Path::new(arg))?
    };
    let v: Vec<u64> = serde_json::from_str(&text).context("expected a JSON array of integers")?;
    v.into_iter()
        .map(|x| match u32::try_from(x) {
            Ok(x) => Ok(x),
            Err(_) => bail!("symbol {x} is out of range"),
        })
        .collect()
}
