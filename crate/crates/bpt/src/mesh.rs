//! Mesh ingestion, normalization, quantization and canonical ordering.
//!
//! Every tokenizer in this crate consumes a [`QuantizedMesh`]: integer
//! coordinates on a `2^bits` grid, vertices sorted by (z, y, x), faces
//! rotated so their lowest vertex comes first and sorted by their vertex
//! ranks. Canonicalization makes that form unique, so two meshes are "the
//! same" exactly when their canonical forms compare equal.

use std::collections::HashMap;

use crate::error::{Error, Result};

/// Shrink factor applied by [`normalize`] so the longest bounding-box side
/// maps to `1 - NORMALIZE_EPS` and floor quantization never reaches the open
/// upper bound of `[0, 1)`.
pub const NORMALIZE_EPS: f64 = 1.0 / (1u64 << 20) as f64;

/// A real-valued triangle mesh in model units.
#[derive(Debug, Clone, PartialEq)]
pub struct RawMesh {
    pub positions: Vec<[f64; 3]>,
    pub faces: Vec<[usize; 3]>,
}

impl RawMesh {
    pub fn new(positions: Vec<[f64; 3]>, faces: Vec<[usize; 3]>) -> Self {
        RawMesh { positions, faces }
    }

    /// Axis-aligned bounding box as `(min, max)`, if the mesh has vertices.
    pub fn bounding_box(&self) -> Option<([f64; 3], [f64; 3])> {
        let mut iter = self.positions.iter();
        let first = *iter.next()?;
        let mut min = first;
        let mut max = first;
        for p in iter {
            for axis in 0..3 {
                min[axis] = min[axis].min(p[axis]);
                max[axis] = max[axis].max(p[axis]);
            }
        }
        Some((min, max))
    }
}

/// A vertex on the integer quantization grid, each coordinate in
/// `[0, 2^bits - 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuantizedVertex {
    pub x: u32,
    pub y: u32,
    pub z: u32,
}

impl QuantizedVertex {
    pub fn new(x: u32, y: u32, z: u32) -> Self {
        QuantizedVertex { x, y, z }
    }

    /// Sort key: z first, then y, then x.
    pub fn zyx_key(&self) -> (u32, u32, u32) {
        (self.z, self.y, self.x)
    }

    /// Euclidean distance to another grid vertex, in grid units.
    pub fn distance(&self, other: &QuantizedVertex) -> f64 {
        let dx = self.x as f64 - other.x as f64;
        let dy = self.y as f64 - other.y as f64;
        let dz = self.z as f64 - other.z as f64;
        (dx * dx + dy * dy + dz * dz).sqrt()
    }
}

impl PartialOrd for QuantizedVertex {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuantizedVertex {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.zyx_key().cmp(&other.zyx_key())
    }
}

/// An oriented triangle referencing vertices by index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Face {
    pub a: usize,
    pub b: usize,
    pub c: usize,
}

impl Face {
    pub fn new(a: usize, b: usize, c: usize) -> Self {
        Face { a, b, c }
    }

    pub fn vertices(&self) -> [usize; 3] {
        [self.a, self.b, self.c]
    }

    pub fn contains(&self, v: usize) -> bool {
        self.a == v || self.b == v || self.c == v
    }

    /// Cyclic rotation putting the smallest index first; winding unchanged.
    pub fn rotated_min_first(&self) -> Face {
        let Face { a, b, c } = *self;
        if a <= b && a <= c {
            Face::new(a, b, c)
        } else if b <= a && b <= c {
            Face::new(b, c, a)
        } else {
            Face::new(c, a, b)
        }
    }

    /// The two non-center vertices in winding order after `center`, or
    /// `None` if `center` is not part of this face.
    pub fn wings(&self, center: usize) -> Option<(usize, usize)> {
        if self.a == center {
            Some((self.b, self.c))
        } else if self.b == center {
            Some((self.c, self.a))
        } else if self.c == center {
            Some((self.a, self.b))
        } else {
            None
        }
    }

    fn sort_key(&self) -> (usize, usize, usize, usize, usize) {
        let lo = self.b.min(self.c);
        let hi = self.b.max(self.c);
        (self.a, lo, hi, self.b, self.c)
    }
}

/// Canonical integer-coordinate triangle mesh; the ground truth every codec
/// round-trips against.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuantizedMesh {
    pub vertices: Vec<QuantizedVertex>,
    pub faces: Vec<Face>,
    pub bits: u8,
}

impl QuantizedMesh {
    pub fn resolution(&self) -> u32 {
        1u32 << self.bits
    }
}

/// What canonicalization removed or merged.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CanonicalizationReport {
    pub merged_vertices: usize,
    pub dropped_degenerate_faces: usize,
    pub dropped_duplicate_faces: usize,
}

/// Translates the bounding box center to (0.5, 0.5, 0.5) and uniformly
/// scales the mesh so its longest side equals `1 - NORMALIZE_EPS`. Aspect
/// ratio is preserved and every coordinate lands in `[0, 1)`.
pub fn normalize(mesh: &RawMesh) -> Result<RawMesh> {
    if mesh.positions.is_empty() {
        return Err(Error::NoVertices);
    }
    if mesh
        .positions
        .iter()
        .any(|p| p.iter().any(|c| !c.is_finite()))
    {
        return Err(Error::NonFinite);
    }
    let (min, max) = mesh.bounding_box().expect("non-empty positions");
    let extent = [max[0] - min[0], max[1] - min[1], max[2] - min[2]];
    let longest = extent[0].max(extent[1]).max(extent[2]);
    if longest <= 0.0 {
        return Err(Error::ZeroExtent);
    }
    let scale = (1.0 - NORMALIZE_EPS) / longest;
    let center = [
        0.5 * (min[0] + max[0]),
        0.5 * (min[1] + max[1]),
        0.5 * (min[2] + max[2]),
    ];
    let positions = mesh
        .positions
        .iter()
        .map(|p| {
            [
                (p[0] - center[0]) * scale + 0.5,
                (p[1] - center[1]) * scale + 0.5,
                (p[2] - center[2]) * scale + 0.5,
            ]
        })
        .collect();
    Ok(RawMesh::new(positions, mesh.faces.clone()))
}

/// Maps each coordinate `p` in `[0, 1)` to `clamp(floor(p * 2^bits), 0,
/// 2^bits - 1)` and canonicalizes the result.
pub fn quantize(mesh: &RawMesh, bits: u8) -> Result<QuantizedMesh> {
    if !(1..=10).contains(&bits) {
        return Err(Error::Config(format!(
            "quantization bits must be in 1..=10, got {bits}"
        )));
    }
    let r = (1u32 << bits) as f64;
    let max_q = (1u32 << bits) - 1;
    let mut vertices = Vec::with_capacity(mesh.positions.len());
    for p in &mesh.positions {
        let mut q = [0u32; 3];
        for axis in 0..3 {
            let c = p[axis];
            if !c.is_finite() || !(0.0..1.0).contains(&c) {
                return Err(Error::NotNormalized { value: c });
            }
            q[axis] = ((c * r).floor() as i64).clamp(0, max_q as i64) as u32;
        }
        vertices.push(QuantizedVertex::new(q[0], q[1], q[2]));
    }
    let faces: Vec<Face> = mesh.faces.iter().map(|f| Face::new(f[0], f[1], f[2])).collect();
    canonicalize(&vertices, &faces, bits).map(|(m, _)| m)
}

/// Cell-center reconstruction: grid coordinate `q` maps to
/// `(q + 0.5) / 2^bits`. Connectivity is unchanged.
pub fn dequantize(mesh: &QuantizedMesh) -> RawMesh {
    let r = mesh.resolution() as f64;
    let positions = mesh
        .vertices
        .iter()
        .map(|v| {
            [
                (v.x as f64 + 0.5) / r,
                (v.y as f64 + 0.5) / r,
                (v.z as f64 + 0.5) / r,
            ]
        })
        .collect();
    let faces = mesh.faces.iter().map(|f| [f.a, f.b, f.c]).collect();
    RawMesh::new(positions, faces)
}

/// Produces the unique canonical form of a quantized vertex/face soup:
///
/// * duplicate grid vertices are merged and faces re-indexed,
/// * faces with fewer than 3 distinct vertices are dropped,
/// * exact duplicate oriented faces (same cyclic vertex sequence) are
///   dropped; opposite-winding twins are kept,
/// * vertices not referenced by any surviving face are dropped,
/// * vertices are sorted ascending by (z, y, x),
/// * each face is rotated so its lowest vertex comes first, and faces are
///   sorted by (first rank, then the sorted ranks of the other two).
pub fn canonicalize(
    vertices: &[QuantizedVertex],
    faces: &[Face],
    bits: u8,
) -> Result<(QuantizedMesh, CanonicalizationReport)> {
    if !(1..=10).contains(&bits) {
        return Err(Error::Config(format!(
            "quantization bits must be in 1..=10, got {bits}"
        )));
    }
    let max_q = (1u32 << bits) - 1;
    for v in vertices {
        for c in [v.x, v.y, v.z] {
            if c > max_q {
                return Err(Error::GridOutOfRange { value: c, bits });
            }
        }
    }

    let mut report = CanonicalizationReport::default();

    // Merge duplicate grid vertices into a z-y-x sorted unique list.
    let mut unique: Vec<QuantizedVertex> = vertices.to_vec();
    unique.sort_unstable();
    unique.dedup();
    report.merged_vertices = vertices.len() - unique.len();
    let rank: HashMap<QuantizedVertex, usize> = unique
        .iter()
        .enumerate()
        .map(|(i, v)| (*v, i))
        .collect();

    // Re-index faces, dropping degenerates and duplicate cyclic sequences.
    let mut seen = std::collections::HashSet::new();
    let mut remapped: Vec<Face> = Vec::with_capacity(faces.len());
    for (fi, f) in faces.iter().enumerate() {
        for idx in f.vertices() {
            if idx >= vertices.len() {
                return Err(Error::FaceIndexOutOfRange {
                    face: fi,
                    index: idx,
                    len: vertices.len(),
                });
            }
        }
        let mapped = Face::new(
            rank[&vertices[f.a]],
            rank[&vertices[f.b]],
            rank[&vertices[f.c]],
        );
        let [a, b, c] = mapped.vertices();
        if a == b || b == c || a == c {
            report.dropped_degenerate_faces += 1;
            continue;
        }
        let rotated = mapped.rotated_min_first();
        if !seen.insert((rotated.a, rotated.b, rotated.c)) {
            report.dropped_duplicate_faces += 1;
            continue;
        }
        remapped.push(rotated);
    }
    if remapped.is_empty() {
        return Err(Error::AllFacesDropped);
    }

    // Drop vertices no surviving face references, preserving sort order.
    let mut used = vec![false; unique.len()];
    for f in &remapped {
        for idx in f.vertices() {
            used[idx] = true;
        }
    }
    let mut new_ids = vec![usize::MAX; unique.len()];
    let mut kept = Vec::with_capacity(unique.len());
    for (old, v) in unique.into_iter().enumerate() {
        if used[old] {
            new_ids[old] = kept.len();
            kept.push(v);
        }
    }
    for f in &mut remapped {
        *f = Face::new(new_ids[f.a], new_ids[f.b], new_ids[f.c]);
    }

    remapped.sort_unstable_by_key(|f| f.sort_key());

    Ok((
        QuantizedMesh {
            vertices: kept,
            faces: remapped,
            bits,
        },
        report,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn v(x: u32, y: u32, z: u32) -> QuantizedVertex {
        QuantizedVertex::new(x, y, z)
    }

    #[test]
    fn normalize_unit_cube_is_fixed_point_up_to_shrink() {
        let mesh = crate::shapes::cube();
        let n = normalize(&mesh).unwrap();
        let (min, max) = n.bounding_box().unwrap();
        for axis in 0..3 {
            let extent = max[axis] - min[axis];
            assert!((extent - (1.0 - NORMALIZE_EPS)).abs() < 1e-12);
            let center = 0.5 * (min[axis] + max[axis]);
            assert!((center - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn normalize_anisotropic_box_preserves_aspect() {
        // Box [0,2]x[0,1]x[0,1]: longest side 2 maps to 1-eps, others to
        // (1-eps)/2, all centered at 0.5.
        let positions = vec![
            [0.0, 0.0, 0.0],
            [2.0, 0.0, 0.0],
            [0.0, 1.0, 0.0],
            [0.0, 0.0, 1.0],
        ];
        let mesh = RawMesh::new(positions, vec![[0, 1, 2], [0, 2, 3]]);
        let n = normalize(&mesh).unwrap();
        let (min, max) = n.bounding_box().unwrap();
        let long = 1.0 - NORMALIZE_EPS;
        assert!((max[0] - min[0] - long).abs() < 1e-12);
        assert!((max[1] - min[1] - long / 2.0).abs() < 1e-12);
        assert!((max[2] - min[2] - long / 2.0).abs() < 1e-12);
        for axis in 0..3 {
            assert!((0.5 * (min[axis] + max[axis]) - 0.5).abs() < 1e-12);
        }
        for p in &n.positions {
            assert!(p.iter().all(|c| (0.0..1.0).contains(c)));
        }
    }

    #[test]
    fn normalize_point_mesh_errors() {
        let mesh = RawMesh::new(vec![[3.0, 4.0, 5.0]], vec![]);
        assert!(matches!(normalize(&mesh), Err(Error::ZeroExtent)));
    }

    #[test]
    fn normalize_rejects_non_finite() {
        let mesh = RawMesh::new(vec![[f64::NAN, 0.0, 0.0], [1.0, 1.0, 1.0]], vec![]);
        assert!(matches!(normalize(&mesh), Err(Error::NonFinite)));
    }

    #[test]
    fn quantize_known_values() {
        let mesh = RawMesh::new(
            vec![[0.0, 0.0, 0.0], [0.5, 0.5, 0.5], [0.999999, 0.0, 0.0]],
            vec![[0, 1, 2]],
        );
        let q = quantize(&mesh, 7).unwrap();
        let coords: Vec<_> = q.vertices.iter().map(|v| (v.x, v.y, v.z)).collect();
        assert!(coords.contains(&(0, 0, 0)));
        assert!(coords.contains(&(64, 64, 64)));
        assert!(coords.contains(&(127, 0, 0)));
    }

    #[test]
    fn quantize_rejects_out_of_range() {
        let mesh = RawMesh::new(vec![[1.0, 0.0, 0.0], [0.1, 0.1, 0.1], [0.2, 0.0, 0.3]], vec![[0, 1, 2]]);
        assert!(matches!(quantize(&mesh, 7), Err(Error::NotNormalized { .. })));
        let mesh = RawMesh::new(vec![[-0.1, 0.0, 0.0], [0.1, 0.1, 0.1], [0.2, 0.0, 0.3]], vec![[0, 1, 2]]);
        assert!(matches!(quantize(&mesh, 7), Err(Error::NotNormalized { .. })));
    }

    #[test]
    fn quantize_collapses_coincident_vertices() {
        // Two positions land in the same cell, so the only face degenerates
        // and nothing survives.
        let mesh = RawMesh::new(
            vec![[0.1, 0.1, 0.1], [0.1009, 0.1, 0.1], [0.5, 0.5, 0.5]],
            vec![[0, 1, 2]],
        );
        assert!(matches!(quantize(&mesh, 7), Err(Error::AllFacesDropped)));
        // At a finer grid the cells separate and the face survives.
        let fine = quantize(&mesh, 10).unwrap();
        assert_eq!(fine.faces.len(), 1);
    }

    #[test]
    fn quantize_rejects_bad_bits() {
        let mesh = RawMesh::new(vec![[0.1; 3], [0.2; 3], [0.3; 3]], vec![[0, 1, 2]]);
        assert!(quantize(&mesh, 0).is_err());
        assert!(quantize(&mesh, 11).is_err());
    }

    #[test]
    fn dequantize_cell_centers() {
        let (mesh, _) = canonicalize(
            &[v(0, 0, 0), v(127, 127, 127), v(64, 0, 0)],
            &[Face::new(0, 2, 1)],
            7,
        )
        .unwrap();
        let raw = dequantize(&mesh);
        let lo = 0.5 / 128.0;
        let hi = 127.5 / 128.0;
        assert!(raw.positions.iter().any(|p| (p[0] - lo).abs() < 1e-15
            && (p[1] - lo).abs() < 1e-15
            && (p[2] - lo).abs() < 1e-15));
        assert!(raw.positions.iter().any(|p| (p[0] - hi).abs() < 1e-15));
        assert_eq!(raw.positions.len(), 3);
        assert_eq!(raw.faces.len(), 1);
    }

    #[test]
    fn dequantize_then_quantize_is_identity() {
        let (mesh, _) = canonicalize(
            &[v(3, 5, 9), v(50, 40, 30), v(100, 90, 80), v(10, 120, 65)],
            &[Face::new(0, 1, 2), Face::new(0, 2, 3)],
            7,
        )
        .unwrap();
        // Cell centers lie strictly inside their own cells, so re-quantizing
        // without renormalization reproduces the mesh.
        let raw = dequantize(&mesh);
        let again = quantize(&raw, 7).unwrap();
        assert_eq!(again, mesh);
    }

    #[test]
    fn canonicalize_is_idempotent_on_canonical_input() {
        let (mesh, report) = canonicalize(
            &[v(1, 2, 3), v(4, 5, 6), v(7, 8, 9)],
            &[Face::new(0, 1, 2)],
            7,
        )
        .unwrap();
        assert_eq!(report, CanonicalizationReport::default());
        let (again, report2) = canonicalize(&mesh.vertices, &mesh.faces, 7).unwrap();
        assert_eq!(mesh, again);
        assert_eq!(report2, CanonicalizationReport::default());
    }

    #[test]
    fn canonicalize_merges_duplicates_and_drops_degenerates() {
        // v0 and v1 quantize to the same cell, so the face collapses.
        let verts = [v(5, 5, 5), v(5, 5, 5), v(9, 9, 9), v(1, 1, 1), v(2, 2, 2)];
        let faces = [Face::new(0, 1, 2), Face::new(2, 3, 4)];
        let (mesh, report) = canonicalize(&verts, &faces, 7).unwrap();
        assert_eq!(report.merged_vertices, 1);
        assert_eq!(report.dropped_degenerate_faces, 1);
        assert_eq!(mesh.faces.len(), 1);
        // The degenerate face's vertices are gone entirely.
        assert_eq!(mesh.vertices.len(), 3);
    }

    #[test]
    fn canonicalize_drops_exact_duplicates_keeps_opposite_winding() {
        let verts = [v(0, 0, 0), v(10, 0, 0), v(0, 10, 0)];
        let faces = [
            Face::new(0, 1, 2),
            Face::new(1, 2, 0), // same cyclic sequence
            Face::new(0, 2, 1), // opposite winding: a distinct surface
        ];
        let (mesh, report) = canonicalize(&verts, &faces, 7).unwrap();
        assert_eq!(report.dropped_duplicate_faces, 1);
        assert_eq!(mesh.faces.len(), 2);
    }

    #[test]
    fn canonicalize_errors_when_everything_drops() {
        let verts = [v(5, 5, 5), v(5, 5, 5), v(5, 5, 5)];
        let faces = [Face::new(0, 1, 2)];
        assert!(matches!(
            canonicalize(&verts, &faces, 7),
            Err(Error::AllFacesDropped)
        ));
        assert!(matches!(
            canonicalize(&[v(0, 0, 0)], &[], 7),
            Err(Error::AllFacesDropped)
        ));
    }

    #[test]
    fn canonicalize_rejects_out_of_grid() {
        let verts = [v(300, 0, 0), v(1, 1, 1), v(2, 2, 2)];
        assert!(matches!(
            canonicalize(&verts, &[Face::new(0, 1, 2)], 7),
            Err(Error::GridOutOfRange { .. })
        ));
    }

    #[test]
    fn canonicalize_rejects_face_index_out_of_range() {
        let verts = [v(0, 0, 0), v(1, 1, 1)];
        assert!(matches!(
            canonicalize(&verts, &[Face::new(0, 1, 7)], 7),
            Err(Error::FaceIndexOutOfRange { .. })
        ));
    }

    #[test]
    fn canonical_form_is_permutation_invariant() {
        // Quantized cube: 8 vertices, 12 triangles, shuffled 10+ ways.
        let cube = quantize(&normalize(&crate::shapes::cube()).unwrap(), 7).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0xC0FFEE);
        for _ in 0..12 {
            let mut order: Vec<usize> = (0..cube.vertices.len()).collect();
            order.shuffle(&mut rng);
            let mut inverse = vec![0usize; order.len()];
            for (new_pos, &old) in order.iter().enumerate() {
                inverse[old] = new_pos;
            }
            let shuffled_verts: Vec<_> = order.iter().map(|&i| cube.vertices[i]).collect();
            let mut shuffled_faces: Vec<Face> = cube
                .faces
                .iter()
                .map(|f| {
                    let f = Face::new(inverse[f.a], inverse[f.b], inverse[f.c]);
                    // random cyclic rotation, winding preserved
                    match rng.gen_range(0..3) {
                        0 => f,
                        1 => Face::new(f.b, f.c, f.a),
                        _ => Face::new(f.c, f.a, f.b),
                    }
                })
                .collect();
            shuffled_faces.shuffle(&mut rng);
            let (again, report) = canonicalize(&shuffled_verts, &shuffled_faces, 7).unwrap();
            assert_eq!(again, cube);
            assert_eq!(report, CanonicalizationReport::default());
        }
    }

    #[test]
    fn canonicalize_preserves_winding() {
        let verts = [v(9, 9, 9), v(0, 0, 0), v(5, 0, 0)];
        // Input cyclic order (v0 -> v1 -> v2); lowest vertex is index 1.
        let (mesh, _) = canonicalize(&verts, &[Face::new(0, 1, 2)], 7).unwrap();
        let f = mesh.faces[0];
        // Sorted vertices: (0,0,0)=0, (5,0,0)=1, (9,9,9)=2. The cyclic
        // sequence 2 -> 0 -> 1 must survive as (0, 1, 2).
        assert_eq!((f.a, f.b, f.c), (0, 1, 2));
        // Reversed input winding gives the opposite rotation.
        let (mesh2, _) = canonicalize(&verts, &[Face::new(2, 1, 0)], 7).unwrap();
        let g = mesh2.faces[0];
        assert_eq!((g.a, g.b, g.c), (0, 2, 1));
    }

    #[test]
    fn grid_closure_after_canonicalization() {
        let mesh = quantize(&normalize(&crate::shapes::icosphere(1)).unwrap(), 7).unwrap();
        for v in &mesh.vertices {
            assert!(v.x < 128 && v.y < 128 && v.z < 128);
        }
    }
}
