//! Batch tokenization over directories of meshes: token-length filtering
//! against a context window and aggregate statistics.
//!
//! One corrupt file never aborts a batch; it becomes a record with a
//! `reject_reason`. Meshes are processed in parallel but records are always
//! emitted in path order, so manifests are reproducible byte for byte.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::block::BptConfig;
use crate::error::{Error, Result};
use crate::metrics::{avd_report, compression_ratio, vertex_emission_stream, AvdReport};
use crate::obj::load_obj_file;
use crate::tokenizer::{encode, SequenceKind};
use crate::{normalize, quantize};

/// AVD windows reported by corpus statistics.
pub const AVD_WINDOWS: [u32; 3] = [8, 32, 128];

/// Per-mesh manifest entry.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeshRecord {
    pub path: String,
    pub vertices: usize,
    pub faces: usize,
    /// Token count (specials included) per tokenizer kind.
    #[serde(skip_serializing_if = "BTreeMap::is_empty", default)]
    pub token_len: BTreeMap<String, usize>,
    /// Compression ratio per tokenizer kind.
    #[serde(skip_serializing_if = "BTreeMap::is_empty", default)]
    pub ratio: BTreeMap<String, f64>,
    /// AVD at the standard windows per tokenizer kind.
    #[serde(skip_serializing_if = "BTreeMap::is_empty", default)]
    pub avd: BTreeMap<String, AvdReport>,
    pub kept: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reject_reason: Option<String>,
}

/// Ratio distribution digest.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Percentiles {
    pub p10: f64,
    pub p50: f64,
    pub p90: f64,
}

/// One bucket of the face-count histogram.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HistogramBucket {
    pub label: String,
    pub count: usize,
}

/// Aggregate section of a manifest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusSummary {
    pub total: usize,
    pub kept: usize,
    pub kept_fraction: f64,
    pub face_histogram: Vec<HistogramBucket>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty", default)]
    pub ratio_mean: BTreeMap<String, f64>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty", default)]
    pub ratio_percentiles: BTreeMap<String, Percentiles>,
}

/// Everything a batch run produced: per-mesh records plus the summary.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusManifest {
    pub records: Vec<MeshRecord>,
    pub summary: CorpusSummary,
}

/// Recursively collects `*.obj` files under `dir`, sorted by path.
pub fn discover_objs(dir: &Path) -> Result<Vec<PathBuf>> {
    fn walk(dir: &Path, out: &mut Vec<PathBuf>) -> std::io::Result<()> {
        for entry in std::fs::read_dir(dir)? {
            let path = entry?.path();
            if path.is_dir() {
                walk(&path, out)?;
            } else if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("obj")) {
                out.push(path);
            }
        }
        Ok(())
    }
    let mut paths = Vec::new();
    walk(dir, &mut paths)?;
    paths.sort();
    Ok(paths)
}

/// Tokenizes every mesh and keeps those whose BPT sequence length
/// (BOS/EOS included) is at most `max_len`. A sequence exactly filling the
/// window is still trainable, so the bound is inclusive.
pub fn filter_by_length(
    paths: &[PathBuf],
    cfg: &BptConfig,
    max_len: usize,
) -> Result<CorpusManifest> {
    if max_len == 0 {
        return Err(Error::Config("max_len must be >= 1".into()));
    }
    process(paths, cfg, &SequenceKind::ALL, Some(max_len), false)
}

/// Full per-mesh and aggregate statistics: token lengths, ratios and AVD at
/// the standard windows for each requested tokenizer kind.
pub fn corpus_stats(
    paths: &[PathBuf],
    cfg: &BptConfig,
    kinds: &[SequenceKind],
) -> Result<CorpusManifest> {
    process(paths, cfg, kinds, None, true)
}

fn process(
    paths: &[PathBuf],
    cfg: &BptConfig,
    kinds: &[SequenceKind],
    max_len: Option<usize>,
    with_avd: bool,
) -> Result<CorpusManifest> {
    if paths.is_empty() {
        return Err(Error::Config("no input meshes given".into()));
    }
    let mut sorted: Vec<PathBuf> = paths.to_vec();
    sorted.sort();

    let records: Vec<MeshRecord> = sorted
        .par_iter()
        .map(|path| process_one(path, cfg, kinds, max_len, with_avd))
        .collect();

    let summary = summarize(&records);
    Ok(CorpusManifest { records, summary })
}

fn process_one(
    path: &Path,
    cfg: &BptConfig,
    kinds: &[SequenceKind],
    max_len: Option<usize>,
    with_avd: bool,
) -> MeshRecord {
    let display = path.display().to_string();
    let reject = |reason: String| MeshRecord {
        path: display.clone(),
        vertices: 0,
        faces: 0,
        token_len: BTreeMap::new(),
        ratio: BTreeMap::new(),
        avd: BTreeMap::new(),
        kept: false,
        reject_reason: Some(reason),
    };

    let mesh = match load_obj_file(path)
        .and_then(|raw| normalize(&raw))
        .and_then(|n| quantize(&n, cfg.bits()))
    {
        Ok(mesh) => mesh,
        Err(e) => return reject(e.to_string()),
    };

    let mut token_len = BTreeMap::new();
    let mut ratio = BTreeMap::new();
    let mut avd = BTreeMap::new();
    for &kind in kinds {
        let seq = match encode(&mesh, cfg, kind) {
            Ok(seq) => seq,
            Err(e) => return reject(e.to_string()),
        };
        token_len.insert(kind.as_str().to_string(), seq.tokens.len());
        match compression_ratio(&seq, &mesh) {
            Ok(report) => ratio.insert(kind.as_str().to_string(), report.ratio),
            Err(e) => return reject(e.to_string()),
        };
        if with_avd {
            let stream = vertex_emission_stream(&mesh, kind);
            match avd_report(&stream, &AVD_WINDOWS) {
                Ok(report) => avd.insert(kind.as_str().to_string(), report),
                Err(e) => return reject(e.to_string()),
            };
        }
    }

    let kept = match max_len {
        Some(limit) => token_len
            .get(SequenceKind::Bpt.as_str())
            .is_some_and(|&len| len <= limit),
        None => true,
    };
    MeshRecord {
        path: display,
        vertices: mesh.vertices.len(),
        faces: mesh.faces.len(),
        token_len,
        ratio,
        avd,
        kept,
        reject_reason: None,
    }
}

const FACE_BUCKETS: [(usize, usize, &str); 6] = [
    (0, 100, "1-99"),
    (100, 500, "100-499"),
    (500, 1000, "500-999"),
    (1000, 5000, "1000-4999"),
    (5000, 8000, "5000-7999"),
    (8000, usize::MAX, "8000+"),
];

fn summarize(records: &[MeshRecord]) -> CorpusSummary {
    let total = records.len();
    let kept = records.iter().filter(|r| r.kept).count();

    let mut face_histogram: Vec<HistogramBucket> = FACE_BUCKETS
        .iter()
        .map(|&(_, _, label)| HistogramBucket {
            label: label.to_string(),
            count: 0,
        })
        .collect();
    for r in records.iter().filter(|r| r.reject_reason.is_none()) {
        let slot = FACE_BUCKETS
            .iter()
            .position(|&(lo, hi, _)| r.faces >= lo && r.faces < hi)
            .expect("buckets cover all counts");
        face_histogram[slot].count += 1;
    }

    let mut ratio_mean = BTreeMap::new();
    let mut ratio_percentiles = BTreeMap::new();
    let mut by_kind: BTreeMap<&str, Vec<f64>> = BTreeMap::new();
    for r in records {
        for (kind, &ratio) in &r.ratio {
            by_kind.entry(kind).or_default().push(ratio);
        }
    }
    for (kind, mut ratios) in by_kind {
        ratios.sort_by(|a, b| a.total_cmp(b));
        let mean = ratios.iter().sum::<f64>() / ratios.len() as f64;
        ratio_mean.insert(kind.to_string(), mean);
        ratio_percentiles.insert(
            kind.to_string(),
            Percentiles {
                p10: percentile(&ratios, 0.10),
                p50: percentile(&ratios, 0.50),
                p90: percentile(&ratios, 0.90),
            },
        );
    }

    CorpusSummary {
        total,
        kept,
        kept_fraction: if total == 0 {
            0.0
        } else {
            kept as f64 / total as f64
        },
        face_histogram,
        ratio_mean,
        ratio_percentiles,
    }
}

/// Nearest-rank percentile on a sorted slice.
fn percentile(sorted: &[f64], q: f64) -> f64 {
    let rank = ((sorted.len() as f64 * q).ceil() as usize).clamp(1, sorted.len());
    sorted[rank - 1]
}

/// Writes the manifest as JSON lines: one record per line, then a final
/// `{"summary": ...}` object.
pub fn write_manifest_jsonl(manifest: &CorpusManifest, out: &mut dyn Write) -> Result<()> {
    for record in &manifest.records {
        serde_json::to_writer(&mut *out, record).map_err(io_err)?;
        out.write_all(b"\n")?;
    }
    out.write_all(b"{\"summary\":")?;
    serde_json::to_writer(&mut *out, &manifest.summary).map_err(io_err)?;
    out.write_all(b"}\n")?;
    Ok(())
}

fn io_err(e: serde_json::Error) -> Error {
    Error::Io(std::io::Error::other(e))
}
