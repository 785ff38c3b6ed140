//! One JSON file per `n`, `hn_<n>.json`, carrying a sha256 digest of its
//! payload. Writes go through a temporary file and an atomic rename.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::genfun::{hstar, GenFunReport};
use crate::reconstruct::{reconstruct, verify_with_cap, HnResult, VerifyReport};
use crate::recursion::{hn_recursion, Recursion};
use crate::Result;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CachePayload {
    pub n: u32,
    pub tool_version: String,
    /// Absent for `n = 2`, which needs no recursion.
    pub recursion: Option<Recursion>,
    pub hn: HnResult,
    pub genfun: GenFunReport,
    pub report: VerifyReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub payload: CachePayload,
    pub digest: String,
}

impl CacheEntry {
    pub fn new(payload: CachePayload) -> Self {
        let digest = digest(&payload);
        CacheEntry { payload, digest }
    }

    pub fn is_valid(&self) -> bool {
        self.digest == digest(&self.payload)
    }
}

fn digest(p: &CachePayload) -> String {
    let bytes = serde_json::to_vec(p).expect("payload serializes");
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

pub fn compute(n: u32, max_nodes: u64) -> Result<CachePayload> {
    let recursion = if n >= 3 { Some(hn_recursion(n)?) } else { None };
    let hn = reconstruct(n)?;
    let report = verify_with_cap(&hn, max_nodes)?;
    let genfun = hstar(&hn)?;
    Ok(CachePayload {
        n,
        tool_version: TOOL_VERSION.to_string(),
        recursion,
        hn,
        genfun,
        report,
    })
}

pub fn path_for(dir: &Path, n: u32) -> PathBuf {
    dir.join(format!("hn_{n}.json"))
}

/// A cached payload for `n`, if present, intact, and from this version.
pub fn load(dir: &Path, n: u32) -> Option<CachePayload> {
    let text = fs::read_to_string(path_for(dir, n)).ok()?;
    let entry: CacheEntry = serde_json::from_str(&text).ok()?;
    let ok = entry.is_valid() && entry.payload.n == n && entry.payload.tool_version == TOOL_VERSION;
    ok.then_some(entry.payload)
}

pub fn store(dir: &Path, payload: &CachePayload) -> std::io::Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let path = path_for(dir, payload.n);
    let entry = CacheEntry::new(payload.clone());
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    serde_json::to_writer_pretty(&mut tmp, &entry)?;
    tmp.write_all(b"\n")?;
    tmp.as_file().sync_all()?;
    tmp.persist(&path).map_err(|e| e.error)?;
    Ok(path)
}

/// Loads from `dir` when possible, otherwise computes and stores.
pub fn get_or_compute(dir: Option<&Path>, n: u32, max_nodes: u64) -> Result<CachePayload> {
    if let Some(p) = dir.and_then(|d| load(d, n)) {
        return Ok(p);
    }
    let payload = compute(n, max_nodes)?;
    if let Some(d) = dir {
        // a cache that cannot be written is not fatal
        let _ = store(d, &payload);
    }
    Ok(payload)
}
