//! Compression, sequence-locality and geometric-fidelity metrics.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mesh::{QuantizedMesh, QuantizedVertex, RawMesh};
use crate::patch::aggregate_patches;
use crate::tokenizer::{SequenceKind, TokenSequence};

/// Content tokens per face relative to the 9-token vanilla baseline.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CompressionReport {
    /// Content tokens, specials excluded.
    pub tokens: usize,
    pub faces: usize,
    /// `tokens / (9 * faces)`; exactly 1.0 for the vanilla tokenizer.
    pub ratio: f64,
}

/// Ratio of content tokens to `9 * faces`.
pub fn compression_ratio(seq: &TokenSequence, mesh: &QuantizedMesh) -> Result<CompressionReport> {
    let faces = mesh.faces.len();
    if faces == 0 {
        return Err(Error::EmptyMesh);
    }
    let tokens = seq.content_len();
    Ok(CompressionReport {
        tokens,
        faces,
        ratio: tokens as f64 / (9.0 * faces as f64),
    })
}

/// The vertices of a mesh in the order the chosen tokenizer emits them,
/// repeats included. This is the substrate the AVD locality metric runs on.
///
/// Vanilla and blocked streams are the flattened face triples; the bpt
/// stream is center-then-ring per patch (with the closing repeat on closed
/// fans).
pub fn vertex_emission_stream(mesh: &QuantizedMesh, kind: SequenceKind) -> Vec<QuantizedVertex> {
    match kind {
        SequenceKind::Vanilla | SequenceKind::Blocked => mesh
            .faces
            .iter()
            .flat_map(|f| f.vertices())
            .map(|i| mesh.vertices[i])
            .collect(),
        SequenceKind::Bpt => {
            let patches = aggregate_patches(mesh);
            let mut stream = Vec::with_capacity(patches.iter().map(|p| 1 + p.ring.len()).sum());
            for p in &patches {
                stream.push(mesh.vertices[p.center]);
                stream.extend(p.ring.iter().map(|&i| mesh.vertices[i]));
            }
            stream
        }
    }
}

/// Average vertex distance at window `t`: the mean over stream positions
/// `i >= 1` of the mean Euclidean distance (grid units) from vertex `i` to
/// its previous `min(t, i)` vertices.
pub fn avd(stream: &[QuantizedVertex], t: usize) -> Result<f64> {
    if t == 0 {
        return Err(Error::Config("AVD window t must be >= 1".into()));
    }
    if stream.len() < 2 {
        return Err(Error::StreamTooShort);
    }
    let mut total = 0.0;
    for i in 1..stream.len() {
        let window = t.min(i);
        let mut sum = 0.0;
        for j in (i - window)..i {
            sum += stream[i].distance(&stream[j]);
        }
        total += sum / window as f64;
    }
    Ok(total / (stream.len() - 1) as f64)
}

/// AVD at several windows, keyed by `t`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AvdReport(pub BTreeMap<u32, f64>);

pub fn avd_report(stream: &[QuantizedVertex], windows: &[u32]) -> Result<AvdReport> {
    let mut map = BTreeMap::new();
    for &t in windows {
        map.insert(t, avd(stream, t as usize)?);
    }
    Ok(AvdReport(map))
}

/// Points sampled from a mesh surface, tagged with the seed that made them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointCloud {
    pub points: Vec<[f64; 3]>,
    pub seed: u64,
}

/// Draws `n` points area-proportionally across triangles, uniformly inside
/// each via the reflected-barycentric trick. Deterministic per seed.
pub fn sample_surface(mesh: &RawMesh, n: usize, seed: u64) -> Result<PointCloud> {
    if n == 0 {
        return Err(Error::Config("sample count must be >= 1".into()));
    }
    let mut cumulative = Vec::with_capacity(mesh.faces.len());
    let mut total = 0.0f64;
    for f in &mesh.faces {
        total += triangle_area(mesh, f);
        cumulative.push(total);
    }
    if total <= 0.0 || !total.is_finite() {
        return Err(Error::ZeroArea);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points = Vec::with_capacity(n);
    for _ in 0..n {
        let pick = rng.gen::<f64>() * total;
        let idx = cumulative.partition_point(|&acc| acc <= pick);
        let idx = idx.min(mesh.faces.len() - 1);
        let [ia, ib, ic] = mesh.faces[idx];
        let (a, b, c) = (mesh.positions[ia], mesh.positions[ib], mesh.positions[ic]);
        let mut r1 = rng.gen::<f64>();
        let mut r2 = rng.gen::<f64>();
        if r1 + r2 > 1.0 {
            r1 = 1.0 - r1;
            r2 = 1.0 - r2;
        }
        points.push([
            a[0] + r1 * (b[0] - a[0]) + r2 * (c[0] - a[0]),
            a[1] + r1 * (b[1] - a[1]) + r2 * (c[1] - a[1]),
            a[2] + r1 * (b[2] - a[2]) + r2 * (c[2] - a[2]),
        ]);
    }
    Ok(PointCloud { points, seed })
}

fn triangle_area(mesh: &RawMesh, f: &[usize; 3]) -> f64 {
    let a = mesh.positions[f[0]];
    let b = mesh.positions[f[1]];
    let c = mesh.positions[f[2]];
    let u = [b[0] - a[0], b[1] - a[1], b[2] - a[2]];
    let v = [c[0] - a[0], c[1] - a[1], c[2] - a[2]];
    let cross = [
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    ];
    0.5 * (cross[0] * cross[0] + cross[1] * cross[1] + cross[2] * cross[2]).sqrt()
}

/// How the two directed Chamfer sums are combined.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChamferNorm {
    /// Mean over each cloud, so values are comparable across cloud sizes.
    Mean,
    /// Raw sums of nearest-neighbor distances.
    Sum,
}

/// Symmetric mean-normalized Chamfer distance:
/// `(1/|P|) sum_p min_q ||p-q|| + (1/|Q|) sum_q min_p ||q-p||`.
pub fn chamfer(p: &PointCloud, q: &PointCloud) -> Result<f64> {
    chamfer_with(p, q, ChamferNorm::Mean)
}

pub fn chamfer_with(p: &PointCloud, q: &PointCloud, norm: ChamferNorm) -> Result<f64> {
    let forward = nearest_distances(&p.points, &q.points)?;
    let backward = nearest_distances(&q.points, &p.points)?;
    let fsum: f64 = forward.iter().sum();
    let bsum: f64 = backward.iter().sum();
    Ok(match norm {
        ChamferNorm::Mean => fsum / forward.len() as f64 + bsum / backward.len() as f64,
        ChamferNorm::Sum => fsum + bsum,
    })
}

/// Hausdorff distance: the larger of the two directed farthest
/// nearest-neighbor distances.
pub fn hausdorff(p: &PointCloud, q: &PointCloud) -> Result<f64> {
    let forward = nearest_distances(&p.points, &q.points)?;
    let backward = nearest_distances(&q.points, &p.points)?;
    let h1 = forward.iter().cloned().fold(0.0f64, f64::max);
    let h2 = backward.iter().cloned().fold(0.0f64, f64::max);
    Ok(h1.max(h2))
}

/// Exact nearest-neighbor distance from each point of `from` into `to`.
/// Brute force on purpose: metric tests must be deterministic, so no
/// approximate index is ever used. The scan parallelizes over `from` while
/// the per-point reduction stays sequential, making results independent of
/// thread count.
fn nearest_distances(from: &[[f64; 3]], to: &[[f64; 3]]) -> Result<Vec<f64>> {
    if from.is_empty() || to.is_empty() {
        return Err(Error::EmptyCloud);
    }
    Ok(from
        .par_iter()
        .map(|p| {
            to.iter()
                .map(|q| {
                    let dx = p[0] - q[0];
                    let dy = p[1] - q[1];
                    let dz = p[2] - q[2];
                    dx * dx + dy * dy + dz * dz
                })
                .fold(f64::INFINITY, f64::min)
                .sqrt()
        })
        .collect())
}
