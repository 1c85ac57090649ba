//! Procedural fixture meshes: enough variety to exercise every codec path
//! without shipping binary assets. All shapes are real-valued `RawMesh`es;
//! run them through [`crate::normalize`] and [`crate::quantize`] first.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::mesh::RawMesh;

/// One triangle in the z=0 plane.
pub fn triangle() -> RawMesh {
    RawMesh::new(
        vec![[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]],
        vec![[0, 1, 2]],
    )
}

/// A unit quad split into two triangles sharing the diagonal.
pub fn quad() -> RawMesh {
    RawMesh::new(
        vec![
            [0.0, 0.0, 0.0],
            [1.0, 0.0, 0.0],
            [1.0, 1.0, 0.0],
            [0.0, 1.0, 0.0],
        ],
        vec![[0, 1, 2], [0, 2, 3]],
    )
}

/// Axis-aligned unit cube, 8 vertices and 12 outward-facing triangles.
pub fn cube() -> RawMesh {
    let positions = vec![
        [0.0, 0.0, 0.0], // 0
        [1.0, 0.0, 0.0], // 1
        [1.0, 1.0, 0.0], // 2
        [0.0, 1.0, 0.0], // 3
        [0.0, 0.0, 1.0], // 4
        [1.0, 0.0, 1.0], // 5
        [1.0, 1.0, 1.0], // 6
        [0.0, 1.0, 1.0], // 7
    ];
    let faces = vec![
        [0, 2, 1],
        [0, 3, 2], // bottom (z=0, normal -z)
        [4, 5, 6],
        [4, 6, 7], // top
        [0, 1, 5],
        [0, 5, 4], // front (y=0)
        [2, 3, 7],
        [2, 7, 6], // back
        [1, 2, 6],
        [1, 6, 5], // right (x=1)
        [3, 0, 4],
        [3, 4, 7], // left
    ];
    RawMesh::new(positions, faces)
}

/// A fan of `sectors` triangles around a hub. Closed fans wrap all the way
/// around; open fans leave one sector empty and use `sectors + 1` rim
/// vertices. The hub is lifted off the rim plane to make the shape 3D.
pub fn fan(sectors: usize, closed: bool) -> RawMesh {
    assert!(sectors >= 1, "a fan needs at least one sector");
    let rim_count = if closed { sectors } else { sectors + 1 };
    let full = std::f64::consts::TAU;
    let sweep = if closed {
        full
    } else {
        // Leave a gap so the first and last rim vertices stay distinct.
        full * sectors as f64 / (sectors + 1) as f64
    };
    let mut positions = vec![[0.0, 0.0, 0.35]];
    for i in 0..rim_count {
        let theta = sweep * i as f64 / sectors as f64;
        positions.push([theta.cos(), theta.sin(), 0.0]);
    }
    let mut faces = Vec::with_capacity(sectors);
    for i in 0..sectors {
        let a = 1 + i;
        let b = 1 + (i + 1) % rim_count;
        faces.push([0, a, b]);
    }
    RawMesh::new(positions, faces)
}

/// Two triangles sharing exactly one vertex: the classic non-manifold
/// pinch point.
pub fn bowtie() -> RawMesh {
    RawMesh::new(
        vec![
            [0.0, 0.0, 0.0],
            [1.0, 0.0, 0.0],
            [0.5, 0.5, 0.1],
            [0.0, 1.0, 0.0],
            [1.0, 1.0, 0.0],
        ],
        vec![[0, 1, 2], [2, 4, 3]],
    )
}

/// Icosphere with `20 * 4^subdivisions` faces on the unit sphere.
pub fn icosphere(subdivisions: u32) -> RawMesh {
    let phi = (1.0 + 5.0_f64.sqrt()) / 2.0;
    let mut positions: Vec<[f64; 3]> = vec![
        [-1.0, phi, 0.0],
        [1.0, phi, 0.0],
        [-1.0, -phi, 0.0],
        [1.0, -phi, 0.0],
        [0.0, -1.0, phi],
        [0.0, 1.0, phi],
        [0.0, -1.0, -phi],
        [0.0, 1.0, -phi],
        [phi, 0.0, -1.0],
        [phi, 0.0, 1.0],
        [-phi, 0.0, -1.0],
        [-phi, 0.0, 1.0],
    ]
    .into_iter()
    .map(project_to_unit)
    .collect();
    let mut faces: Vec<[usize; 3]> = vec![
        [0, 11, 5],
        [0, 5, 1],
        [0, 1, 7],
        [0, 7, 10],
        [0, 10, 11],
        [1, 5, 9],
        [5, 11, 4],
        [11, 10, 2],
        [10, 7, 6],
        [7, 1, 8],
        [3, 9, 4],
        [3, 4, 2],
        [3, 2, 6],
        [3, 6, 8],
        [3, 8, 9],
        [4, 9, 5],
        [2, 4, 11],
        [6, 2, 10],
        [8, 6, 7],
        [9, 8, 1],
    ];

    for _ in 0..subdivisions {
        let mut midpoints: std::collections::HashMap<(usize, usize), usize> =
            std::collections::HashMap::new();
        let mut next_faces = Vec::with_capacity(faces.len() * 4);
        for f in &faces {
            let mut mid = [0usize; 3];
            for k in 0..3 {
                let a = f[k];
                let b = f[(k + 1) % 3];
                let key = (a.min(b), a.max(b));
                mid[k] = *midpoints.entry(key).or_insert_with(|| {
                    let pa = positions[a];
                    let pb = positions[b];
                    positions.push(project_to_unit([
                        (pa[0] + pb[0]) / 2.0,
                        (pa[1] + pb[1]) / 2.0,
                        (pa[2] + pb[2]) / 2.0,
                    ]));
                    positions.len() - 1
                });
            }
            next_faces.push([f[0], mid[0], mid[2]]);
            next_faces.push([f[1], mid[1], mid[0]]);
            next_faces.push([f[2], mid[2], mid[1]]);
            next_faces.push([mid[0], mid[1], mid[2]]);
        }
        faces = next_faces;
    }
    RawMesh::new(positions, faces)
}

fn project_to_unit(p: [f64; 3]) -> [f64; 3] {
    let len = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt();
    [p[0] / len, p[1] / len, p[2] / len]
}

/// Random height-field terrain on an `nx` x `ny` vertex grid, then rotated
/// and anisotropically scaled. Manifold with boundary by construction and
/// fully determined by the seed.
pub fn noisy_grid(nx: usize, ny: usize, seed: u64) -> RawMesh {
    assert!(nx >= 2 && ny >= 2, "grid needs at least 2x2 vertices");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut positions = Vec::with_capacity(nx * ny);
    for j in 0..ny {
        for i in 0..nx {
            positions.push([
                i as f64 / (nx - 1) as f64,
                j as f64 / (ny - 1) as f64,
                rng.gen_range(0.0..0.5),
            ]);
        }
    }
    // Random rigid rotation plus per-axis stretch for coordinate variety.
    let yaw: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    let pitch: f64 = rng.gen_range(-1.0..1.0);
    let stretch = [
        rng.gen_range(0.5..2.0),
        rng.gen_range(0.5..2.0),
        rng.gen_range(0.5..2.0),
    ];
    let (sy, cy) = yaw.sin_cos();
    let (sp, cp) = pitch.sin_cos();
    for p in &mut positions {
        let [x, y, z] = *p;
        let (x, y) = (x * cy - y * sy, x * sy + y * cy);
        let (y, z) = (y * cp - z * sp, y * sp + z * cp);
        *p = [x * stretch[0], y * stretch[1], z * stretch[2]];
    }
    let mut faces = Vec::with_capacity(2 * (nx - 1) * (ny - 1));
    let at = |i: usize, j: usize| j * nx + i;
    for j in 0..ny - 1 {
        for i in 0..nx - 1 {
            faces.push([at(i, j), at(i + 1, j), at(i + 1, j + 1)]);
            faces.push([at(i, j), at(i + 1, j + 1), at(i, j + 1)]);
        }
    }
    RawMesh::new(positions, faces)
}
