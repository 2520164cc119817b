//! On-disk cache for symbolic transition-matrix blocks.
//!
//! One JSON document per (kind, rank, degree), written atomically
//! (temp-then-rename). Each document carries a version number and a hash of
//! the labeling/ordering conventions; a mismatch on either causes a silent
//! recompute.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use gjack_core::envelope::{transition, Kind, Mode, TransitionMatrix};
use gjack_core::partition::MultiPartition;
use gjack_core::ring::parse_elem;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

const CACHE_VERSION: u32 = 1;

/// The conventions a cached block depends on. Bumping any of these (or the
/// monomial / diagram orders they describe) invalidates old files.
fn convention_hash(kind: Kind, rank: usize, n: u32, labels: &[MultiPartition]) -> String {
    let mut h = Sha256::new();
    h.update(b"gjack|graded-lex t1<t2<u1<...|boxes: component asc, content desc, row asc|");
    h.update(kind.as_str().as_bytes());
    h.update(format!("|r={rank}|n={n}|").as_bytes());
    for l in labels {
        h.update(l.to_string().as_bytes());
        h.update(b";");
    }
    format!("{:x}", h.finalize())
}

#[derive(Debug, Serialize, Deserialize)]
struct CacheDoc {
    version: u32,
    kind: String,
    rank: usize,
    n: u32,
    mode: String,
    convention_hash: String,
    labels: Vec<String>,
    entries: Vec<Vec<String>>,
}

fn cache_path(dir: &Path, kind: Kind, rank: usize, n: u32) -> PathBuf {
    dir.join(format!("{}_r{rank}_n{n}_symbolic.json", kind.as_str()))
}

fn to_doc(m: &TransitionMatrix) -> CacheDoc {
    CacheDoc {
        version: CACHE_VERSION,
        kind: m.kind.as_str().to_string(),
        rank: m.rank,
        n: m.n,
        mode: "symbolic".to_string(),
        convention_hash: convention_hash(m.kind, m.rank, m.n, &m.labels),
        labels: m.labels.iter().map(|l| l.to_string()).collect(),
        entries: m
            .entries
            .iter()
            .map(|row| row.iter().map(|e| e.to_string()).collect())
            .collect(),
    }
}

fn from_doc(doc: &CacheDoc, kind: Kind) -> Result<TransitionMatrix> {
    let labels: Vec<MultiPartition> = doc
        .labels
        .iter()
        .map(|s| s.parse().map_err(anyhow::Error::msg))
        .collect::<Result<_>>()?;
    let entries = doc
        .entries
        .iter()
        .map(|row| {
            row.iter()
                .map(|s| parse_elem(s, doc.rank).map_err(anyhow::Error::msg))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TransitionMatrix {
        kind,
        rank: doc.rank,
        n: doc.n,
        labels,
        entries,
    })
}

/// Writes `doc` to `path` atomically.
fn write_atomic(path: &Path, doc: &CacheDoc) -> Result<()> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)?;
    }
    let tmp = path.with_extension("json.tmp");
    fs::write(&tmp, serde_json::to_vec_pretty(doc)?)
        .with_context(|| format!("writing {}", tmp.display()))?;
    fs::rename(&tmp, path).with_context(|| format!("renaming into {}", path.display()))?;
    Ok(())
}

/// Loads a symbolic block from the cache if present and current, otherwise
/// computes it (and stores it when a cache directory is configured).
/// Specialized blocks are never cached: they depend on the assignment.
pub fn load_or_compute(
    kind: Kind,
    rank: usize,
    n: u32,
    mode: &Mode,
    cache_dir: Option<&Path>,
) -> Result<TransitionMatrix> {
    let cacheable = matches!(mode, Mode::Symbolic);
    if cacheable {
        if let Some(dir) = cache_dir {
            let path = cache_path(dir, kind, rank, n);
            if let Ok(bytes) = fs::read(&path) {
                if let Ok(doc) = serde_json::from_slice::<CacheDoc>(&bytes) {
                    let expect = convention_hash(
                        kind,
                        rank,
                        n,
                        &MultiPartition::all_of(rank, n),
                    );
                    if doc.version == CACHE_VERSION && doc.convention_hash == expect {
                        if let Ok(m) = from_doc(&doc, kind) {
                            return Ok(m);
                        }
                    }
                }
            }
        }
    }
    let m = transition(kind, rank, n, mode)?;
    if cacheable {
        if let Some(dir) = cache_dir {
            write_atomic(&cache_path(dir, kind, rank, n), &to_doc(&m))?;
        }
    }
    Ok(m)
}

/// The cache file a symbolic block lives in (for reporting to the user).
pub fn block_path(dir: &Path, kind: Kind, rank: usize, n: u32) -> PathBuf {
    cache_path(dir, kind, rank, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_through_disk() {
        let dir = tempfile::tempdir().unwrap();
        let fresh = load_or_compute(Kind::T, 1, 2, &Mode::Symbolic, Some(dir.path())).unwrap();
        let cached = load_or_compute(Kind::T, 1, 2, &Mode::Symbolic, Some(dir.path())).unwrap();
        assert_eq!(fresh.labels, cached.labels);
        assert_eq!(fresh.entries, cached.entries);
        assert!(block_path(dir.path(), Kind::T, 1, 2).exists());
    }

    #[test]
    fn stale_version_recomputes() {
        let dir = tempfile::tempdir().unwrap();
        let path = block_path(dir.path(), Kind::T, 1, 1);
        load_or_compute(Kind::T, 1, 1, &Mode::Symbolic, Some(dir.path())).unwrap();
        let mut doc: CacheDoc =
            serde_json::from_slice(&fs::read(&path).unwrap()).unwrap();
        doc.version = 0;
        doc.entries[0][0] = "t1^9".to_string();
        fs::write(&path, serde_json::to_vec(&doc).unwrap()).unwrap();
        let m = load_or_compute(Kind::T, 1, 1, &Mode::Symbolic, Some(dir.path())).unwrap();
        assert_eq!(m.entries[0][0], parse_elem("t2", 1).unwrap());
    }
}
